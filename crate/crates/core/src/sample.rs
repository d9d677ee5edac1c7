//! Random automata, spaces, T-automata and diagrams for property sweeps.

use std::collections::BTreeMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::automaton::{Nfa, NfaSpec, TransitionSpec};
use crate::cobordism::{Diagram, Gen, Sign, SignSeq, Slice};
use crate::covers::{voltage_cover, weak_cover, Cover, Permutation};
use crate::error::Result;
use crate::topology::{Endo, FinTop, PointSet, TAutomaton};
use crate::word::Word;

pub fn letters(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Automaton with `1..=max_states` states named `s0, s1, …`; each possible
/// transition is present with probability `density`.
pub fn random_nfa<R: Rng + ?Sized>(rng: &mut R, max_states: usize, alphabet: &[String], density: f64) -> Nfa {
    let n = rng.random_range(1..=max_states.max(1));
    random_nfa_exact(rng, n, alphabet, density)
}

pub fn random_nfa_exact<R: Rng + ?Sized>(rng: &mut R, n: usize, alphabet: &[String], density: f64) -> Nfa {
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut spec = NfaSpec {
        states: states.clone(),
        alphabet: alphabet.to_vec(),
        ..NfaSpec::default()
    };
    for q in &states {
        for a in alphabet {
            for r in &states {
                if rng.random_bool(density) {
                    spec.transitions.push(TransitionSpec::new(q, a, r));
                }
            }
        }
        if rng.random_bool(0.4) {
            spec.initial.push(q.clone());
        }
        if rng.random_bool(0.4) {
            spec.accepting.push(q.clone());
        }
    }
    Nfa::from_spec(spec).expect("generated automaton is well formed")
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &[String], max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    Word::new((0..len).map(|_| alphabet.choose(rng).expect("non-empty alphabet").clone()))
}

/// Random partial order on `n` points `p0, p1, …`: random edges along a
/// shuffled linear order, transitively closed.
pub fn random_space<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FinTop {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let density = rng.random_range(0.1..0.7);
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[order[i]][order[i]] = true;
        for j in i + 1..n {
            if rng.random_bool(density) {
                leq[order[i]][order[j]] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    FinTop::from_order((0..n).map(|i| format!("p{i}")).collect(), |y, x| leq[y][x])
        .expect("partial orders give minimal spaces")
}

fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> PointSet {
    let mut s = PointSet::with_capacity(n);
    s.extend((0..n).filter(|_| rng.random_bool(p)));
    s
}

pub fn random_open<R: Rng + ?Sized>(rng: &mut R, x: &FinTop, p: f64) -> PointSet {
    x.open_hull(&random_subset(rng, x.len(), p))
}

pub fn random_closed<R: Rng + ?Sized>(rng: &mut R, x: &FinTop, p: f64) -> PointSet {
    x.dual().open_hull(&random_subset(rng, x.len(), p))
}

/// Monotone endomorphism `T(U_x) = ⋃_{y ∈ U_x} R_y` for random opens `R_y`.
pub fn random_endo<R: Rng + ?Sized>(rng: &mut R, x: &FinTop) -> Endo {
    let p = rng.random_range(0.1..0.6);
    let seeds: Vec<PointSet> = (0..x.len()).map(|_| random_open(rng, x, p)).collect();
    Endo::new(
        (0..x.len())
            .map(|p| {
                let mut s = x.empty_set();
                for y in x.min_open(p).ones() {
                    s.union_with(&seeds[y]);
                }
                s
            })
            .collect(),
    )
}

pub fn random_tautomaton<R: Rng + ?Sized>(rng: &mut R, max_points: usize, alphabet: &[String]) -> TAutomaton {
    let n = rng.random_range(1..=max_points.max(1));
    let x = random_space(rng, n);
    let initial = random_open(rng, &x, 0.4);
    let accepting = random_closed(rng, &x, 0.4);
    let letters = alphabet.iter().map(|_| random_endo(rng, &x)).collect();
    TAutomaton::new(x, alphabet.to_vec(), initial, accepting, letters).expect("generated T-automaton is valid")
}

/// A degree-`n` cover of `base` with uniformly random voltages.
pub fn random_voltage_cover<R: Rng + ?Sized>(rng: &mut R, base: &Nfa, n: usize) -> Result<Cover> {
    let volts: BTreeMap<_, _> = base
        .transitions()
        .map(|e| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            (e, Permutation::new(p).expect("shuffle is a permutation"))
        })
        .collect();
    voltage_cover(base, n, &volts)
}

/// A weak cover with fibers of size `1..=max_fiber` and random non-empty
/// lift sets.
pub fn random_weak_cover<R: Rng + ?Sized>(rng: &mut R, base: &Nfa, max_fiber: usize) -> Result<Cover> {
    let fibers: Vec<usize> = (0..base.num_states()).map(|_| rng.random_range(1..=max_fiber)).collect();
    let mut table = BTreeMap::new();
    for e in base.transitions() {
        for k in 0..fibers[e.0] {
            let size = fibers[e.2];
            let mut t: Vec<usize> = (0..size).filter(|_| rng.random_bool(0.4)).collect();
            if t.is_empty() {
                t.push(rng.random_range(0..size));
            }
            table.insert((e, k), t);
        }
    }
    weak_cover(base, &fibers, |e, k| table[&(e, k)].clone())
}

/// Which generators [`random_diagram`] may use.
#[derive(Clone, Debug)]
pub struct DiagramOptions {
    pub letters: Vec<String>,
    /// Labels for labelled endpoints; empty disables them.
    pub labels: Vec<String>,
    pub endpoints: bool,
    pub foam: bool,
    pub max_width: usize,
    pub max_slices: usize,
}

impl DiagramOptions {
    pub fn defects(letters: Vec<String>, max_width: usize, max_slices: usize) -> Self {
        DiagramOptions {
            letters,
            labels: Vec::new(),
            endpoints: true,
            foam: false,
            max_width,
            max_slices,
        }
    }
}

fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn random_birth<R: Rng + ?Sized>(rng: &mut R, opts: &DiagramOptions, width: usize) -> Option<Gen> {
    let room = opts.max_width.saturating_sub(width);
    let mut choices: Vec<Gen> = Vec::new();
    if room >= 2 {
        choices.push(Gen::cup(random_sign(rng)));
    }
    if room >= 1 {
        if opts.endpoints {
            let s = random_sign(rng);
            choices.push(match opts.labels.choose(rng) {
                Some(l) if rng.random_bool(0.5) => Gen::birth_at(s, l.clone()),
                _ => Gen::birth(s),
            });
        }
        if opts.foam {
            choices.push(Gen::Unit);
        }
    }
    choices.choose(rng).cloned()
}

/// One generator consuming wires starting at `signs[0]`.
fn random_consumer<R: Rng + ?Sized>(rng: &mut R, opts: &DiagramOptions, signs: &[Sign], room: usize) -> Gen {
    let s = signs[0];
    let next = signs.get(1).copied();
    let mut choices: Vec<Gen> = vec![Gen::id(s), Gen::id(s)];
    if let Some(l) = opts.letters.choose(rng) {
        choices.push(Gen::dot(l.clone(), s));
        choices.push(Gen::dot(l.clone(), s));
    }
    if opts.endpoints {
        choices.push(match opts.labels.choose(rng) {
            Some(l) if rng.random_bool(0.5) => Gen::death_at(s, l.clone()),
            _ => Gen::death(s),
        });
    }
    if let Some(t) = next {
        choices.push(Gen::swap(s, t));
        if t == s.flip() {
            choices.push(Gen::cap(s));
        }
        if opts.foam && s == Sign::Plus && t == Sign::Plus {
            choices.push(Gen::Merge);
        }
    }
    if opts.foam && s == Sign::Plus {
        choices.push(Gen::Counit);
        if room >= 1 {
            choices.push(Gen::Split);
        }
    }
    choices.choose(rng).cloned().expect("non-empty choices")
}

/// Random well-typed diagram with a random domain of width `≤ max_width`.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, opts: &DiagramOptions) -> Diagram {
    let dom_width = rng.random_range(0..=opts.max_width.min(3));
    let domain = SignSeq((0..dom_width).map(|_| random_sign(rng)).collect());
    random_diagram_from(rng, opts, domain)
}

pub fn random_diagram_from<R: Rng + ?Sized>(rng: &mut R, opts: &DiagramOptions, domain: SignSeq) -> Diagram {
    let height = rng.random_range(1..=opts.max_slices.max(1));
    let mut boundary = domain.0.clone();
    let mut slices: Vec<Slice> = Vec::new();
    for _ in 0..height {
        let mut slice = Vec::new();
        let mut out_width = 0;
        let mut i = 0;
        loop {
            let width_now = out_width + (boundary.len() - i);
            if rng.random_bool(0.2) {
                if let Some(g) = random_birth(rng, opts, width_now) {
                    out_width += g.outputs().len();
                    slice.push(g);
                    continue;
                }
            }
            if i >= boundary.len() {
                break;
            }
            let room = opts.max_width.saturating_sub(width_now);
            let g = random_consumer(rng, opts, &boundary[i..], room);
            i += g.inputs().len();
            out_width += g.outputs().len();
            slice.push(g);
        }
        boundary = slice.iter().flat_map(Gen::outputs).collect();
        slices.push(slice);
    }
    Diagram::new(domain, slices).expect("generated diagram typechecks")
}

/// Random closed diagram built only from cups, caps, swaps and foam
/// vertices on `+` wires.
pub fn random_closed_foam<R: Rng + ?Sized>(rng: &mut R, max_width: usize, max_ops: usize) -> Diagram {
    let max_width = max_width.max(2);
    let mut slices: Vec<Slice> = Vec::new();
    let ids = |b: &[Sign]| -> Vec<Gen> { b.iter().map(|&s| Gen::id(s)).collect() };
    let mut boundary: Vec<Sign> = Vec::new();
    let cups = rng.random_range(1..=max_width / 2);
    for _ in 0..cups {
        let g = Gen::cup(random_sign(rng));
        let mut s = ids(&boundary);
        boundary.extend(g.outputs());
        s.push(g);
        slices.push(s);
    }
    // random operations on + wires
    for _ in 0..rng.random_range(0..=max_ops) {
        let i = rng.random_range(0..=boundary.len());
        let plus_here = boundary.get(i) == Some(&Sign::Plus);
        let plus_pair = plus_here && boundary.get(i + 1) == Some(&Sign::Plus);
        let mut options: Vec<Gen> = Vec::new();
        if boundary.len() < max_width {
            options.push(Gen::Unit);
            if plus_here {
                options.push(Gen::Split);
            }
        }
        if plus_pair {
            options.push(Gen::Merge);
        }
        if plus_here && boundary.len() > 1 {
            options.push(Gen::Counit);
        }
        if i + 1 < boundary.len() {
            options.push(Gen::swap(boundary[i], boundary[i + 1]));
        }
        let Some(g) = options.choose(rng).cloned() else {
            continue;
        };
        let k = g.inputs().len();
        let mut s = ids(&boundary[..i]);
        s.push(g.clone());
        s.extend(ids(&boundary[i + k..]));
        let mut next = boundary[..i].to_vec();
        next.extend(g.outputs());
        next.extend_from_slice(&boundary[i + k..]);
        boundary = next;
        slices.push(s);
    }
    close_foam(&mut slices, boundary);
    Diagram::new(SignSeq::empty(), slices).expect("closed foam typechecks")
}

/// Append slices that cap off `boundary` using foam vertices on `+` wires.
fn close_foam(slices: &mut Vec<Slice>, mut boundary: Vec<Sign>) {
    let ids = |b: &[Sign]| -> Vec<Gen> { b.iter().map(|&s| Gen::id(s)).collect() };
    let count = |b: &[Sign], s: Sign| b.iter().filter(|&&x| x == s).count();
    let mut apply = |boundary: &mut Vec<Sign>, i: usize, g: Gen| {
        let k = g.inputs().len();
        let mut s = ids(&boundary[..i]);
        s.push(g.clone());
        s.extend(ids(&boundary[i + k..]));
        let mut next = boundary[..i].to_vec();
        next.extend(g.outputs());
        next.extend_from_slice(&boundary[i + k..]);
        *boundary = next;
        slices.push(s);
    };
    while count(&boundary, Sign::Plus) > count(&boundary, Sign::Minus) {
        let i = boundary.iter().position(|&s| s == Sign::Plus).expect("has a + wire");
        apply(&mut boundary, i, Gen::Counit);
    }
    while count(&boundary, Sign::Plus) < count(&boundary, Sign::Minus) {
        apply(&mut boundary, 0, Gen::Unit);
    }
    while !boundary.is_empty() {
        let i = (0..boundary.len() - 1)
            .find(|&i| boundary[i] != boundary[i + 1])
            .expect("balanced boundary has an opposite adjacent pair");
        let cap = Gen::cap(boundary[i]);
        apply(&mut boundary, i, cap);
    }
}
