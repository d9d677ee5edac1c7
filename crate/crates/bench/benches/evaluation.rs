use std::hint::black_box;

use booltqft::cobordism::shapes;
use booltqft::sample::{letters, random_closed_foam, random_nfa_exact, random_tautomaton, random_word};
use booltqft::{eval_nfa, eval_tautomaton, minimal_spaces, Regex, TAutomaton, Word};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word_matrices(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ab = letters(&["a", "b"]);
    let mut group = c.benchmark_group("word_matrix");
    for n in [4, 16, 64] {
        let a = random_nfa_exact(&mut rng, n, &ab, 0.2);
        let w = random_word(&mut rng, &ab, 32);
        group.bench_with_input(BenchmarkId::new("trace", n), &(a, w), |b, (a, w)| {
            b.iter(|| black_box(a.trace_eval(black_box(w)).unwrap()))
        });
    }
    group.finish();
}

fn circle_diagram(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ab = letters(&["a", "b"]);
    let a = random_nfa_exact(&mut rng, 16, &ab, 0.2);
    let d = shapes::circle(&Word::parse("abbabaab"));
    c.bench_function("circle_diagram_16_states", |b| {
        b.iter(|| black_box(eval_nfa::<bool>(&a, black_box(&d)).unwrap()))
    });
    c.bench_function("circle_diagram_16_states_nat", |b| {
        b.iter(|| black_box(eval_nfa::<u64>(&a, black_box(&d)).unwrap()))
    });
}

fn tautomaton_foam(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = minimal_spaces(4).pop().expect("four-point spaces exist");
    let t = TAutomaton::new(x.clone(), vec![], x.empty_set(), x.empty_set(), vec![]).unwrap();
    let foam = random_closed_foam(&mut rng, 4, 8);
    c.bench_function("closed_foam_4_points", |b| {
        b.iter(|| black_box(eval_tautomaton(&t, black_box(&foam)).unwrap()))
    });
    let ab = letters(&["a", "b"]);
    let t = random_tautomaton(&mut rng, 4, &ab);
    let d = shapes::circle(&Word::parse("abab"));
    c.bench_function("tautomaton_circle", |b| {
        b.iter(|| black_box(eval_tautomaton(&t, black_box(&d)).unwrap()))
    });
}

fn regex(c: &mut Criterion) {
    let re = Regex::parse("(ba*b)* + (a*+bb)*bb(a*+bb)*").unwrap();
    let w = Word::parse("abbaabbbab");
    c.bench_function("regex_circular", |b| b.iter(|| black_box(re.is_match_circular(black_box(&w)))));
}

criterion_group!(benches, word_matrices, circle_diagram, tautomaton_foam, regex);
criterion_main!(benches);
