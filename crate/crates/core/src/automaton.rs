//! Nondeterministic finite automata as Boolean linear algebra.
//!
//! A letter `a` acts on the free module `𝔹Q` from the right: `M_a[q][q'] = 1`
//! iff `q' ∈ δ(q, a)`, rows and columns in the order of [`Nfa::states`]. A word
//! acts by the ordered product `M_w = M_{a1} ⋯ M_{an}`. The interval value of
//! `w` is `Q_in · M_w · Q_tᵀ` and the circle (trace) value is `tr(M_w)`; both
//! are available over any [`Semiring`], so the same code decides membership
//! over `bool` and counts paths over `u64`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::{BoolMat, Matrix, Semiring};
use crate::word::Word;

/// On-disk form of an automaton. Key names are fixed; unknown keys are errors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NfaSpec {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    #[serde(default)]
    pub transitions: Vec<TransitionSpec>,
    #[serde(default)]
    pub initial: Vec<String>,
    #[serde(default)]
    pub accepting: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSpec {
    pub from: String,
    pub letter: String,
    pub to: String,
}

impl TransitionSpec {
    pub fn new(from: impl Into<String>, letter: impl Into<String>, to: impl Into<String>) -> Self {
        TransitionSpec {
            from: from.into(),
            letter: letter.into(),
            to: to.into(),
        }
    }
}

/// A transition by dense indices: `(from, letter, to)`.
pub type Transition = (usize, usize, usize);

/// Interned automaton `(Q, δ, Q_in, Q_t)`. Immutable once built.
#[derive(Clone, Debug)]
pub struct Nfa {
    states: Vec<String>,
    state_index: HashMap<String, usize>,
    alphabet: Vec<String>,
    letter_index: HashMap<String, usize>,
    transitions: BTreeSet<Transition>,
    initial: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
    letter_mats: Vec<BoolMat>,
}

fn intern(kind: &'static str, names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() {
            return Err(Error::invalid(format!("empty {kind} name")));
        }
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::invalid(format!("duplicate {kind} `{n}`")));
        }
    }
    Ok(index)
}

impl Nfa {
    pub fn new<S: AsRef<str>>(
        states: &[S],
        alphabet: &[S],
        transitions: &[(S, S, S)],
        initial: &[S],
        accepting: &[S],
    ) -> Result<Self> {
        let own = |xs: &[S]| xs.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>();
        Nfa::from_spec(NfaSpec {
            states: own(states),
            alphabet: own(alphabet),
            transitions: transitions
                .iter()
                .map(|(f, a, t)| TransitionSpec::new(f.as_ref(), a.as_ref(), t.as_ref()))
                .collect(),
            initial: own(initial),
            accepting: own(accepting),
        })
    }

    pub fn from_spec(spec: NfaSpec) -> Result<Self> {
        let state_index = intern("state", &spec.states)?;
        let letter_index = intern("letter", &spec.alphabet)?;
        let st = |n: &str| {
            state_index
                .get(n)
                .copied()
                .ok_or_else(|| Error::lookup("state", n))
        };
        let mut transitions = BTreeSet::new();
        for t in &spec.transitions {
            let a = letter_index
                .get(&t.letter)
                .copied()
                .ok_or_else(|| Error::lookup("letter", &t.letter))?;
            transitions.insert((st(&t.from)?, a, st(&t.to)?));
        }
        let initial = spec.initial.iter().map(|q| st(q)).collect::<Result<_>>()?;
        let accepting = spec.accepting.iter().map(|q| st(q)).collect::<Result<_>>()?;
        Ok(Nfa::from_indices(
            spec.states,
            state_index,
            spec.alphabet,
            letter_index,
            transitions,
            initial,
            accepting,
        ))
    }

    fn from_indices(
        states: Vec<String>,
        state_index: HashMap<String, usize>,
        alphabet: Vec<String>,
        letter_index: HashMap<String, usize>,
        transitions: BTreeSet<Transition>,
        initial: BTreeSet<usize>,
        accepting: BTreeSet<usize>,
    ) -> Self {
        let n = states.len();
        let mut letter_mats = vec![BoolMat::zeros(n, n); alphabet.len()];
        for &(q, a, r) in &transitions {
            letter_mats[a].set(q, r, true);
        }
        Nfa {
            states,
            state_index,
            alphabet,
            letter_index,
            transitions,
            initial,
            accepting,
            letter_mats,
        }
    }

    /// Rebuild from dense parts, reusing this automaton's names.
    fn restrict(&self, keep: &[usize]) -> Nfa {
        let mut remap = vec![None; self.states.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = Some(new);
        }
        let states: Vec<String> = keep.iter().map(|&i| self.states[i].clone()).collect();
        let state_index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let transitions = self
            .transitions
            .iter()
            .filter_map(|&(q, a, r)| Some((remap[q]?, a, remap[r]?)))
            .collect();
        let initial = self.initial.iter().filter_map(|&q| remap[q]).collect();
        let accepting = self.accepting.iter().filter_map(|&q| remap[q]).collect();
        Nfa::from_indices(
            states,
            state_index,
            self.alphabet.clone(),
            self.letter_index.clone(),
            transitions,
            initial,
            accepting,
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Nfa::from_spec(serde_json::from_str(text)?)
    }

    pub fn to_spec(&self) -> NfaSpec {
        NfaSpec {
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|&(q, a, r)| TransitionSpec::new(&self.states[q], &self.alphabet[a], &self.states[r]))
                .collect(),
            initial: self.initial.iter().map(|&q| self.states[q].clone()).collect(),
            accepting: self.accepting.iter().map(|&q| self.states[q].clone()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("automaton serializes")
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.transitions.iter().copied()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn has_transition(&self, from: usize, letter: usize, to: usize) -> bool {
        self.transitions.contains(&(from, letter, to))
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn state_id(&self, name: &str) -> Result<usize> {
        self.state_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::lookup("state", name))
    }

    pub fn letter_id(&self, name: &str) -> Result<usize> {
        self.letter_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::lookup("letter", name))
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn letter_name(&self, a: usize) -> &str {
        &self.alphabet[a]
    }

    pub fn resolve(&self, w: &Word) -> Result<Vec<usize>> {
        w.letters().iter().map(|l| self.letter_id(l)).collect()
    }

    /// Copy with new initial and accepting sets (given by index).
    pub fn with_decorations(&self, initial: BTreeSet<usize>, accepting: BTreeSet<usize>) -> Nfa {
        let mut out = self.clone();
        out.initial = initial;
        out.accepting = accepting;
        out
    }

    /// Successor states `δ(q, a)`.
    pub fn successors(&self, q: usize, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.transitions
            .range((q, a, 0)..=(q, a, usize::MAX))
            .map(|&(_, _, r)| r)
    }

    /// `M_a` in state order.
    pub fn letter_matrix(&self, a: &str) -> Result<&BoolMat> {
        Ok(&self.letter_mats[self.letter_id(a)?])
    }

    /// `M_w = M_{a1} ⋯ M_{an}`; the empty word gives the identity.
    pub fn word_matrix<S: Semiring>(&self, w: &Word) -> Result<Matrix<S>> {
        let ids = self.resolve(w)?;
        let mut acc = Matrix::identity(self.num_states());
        for a in ids {
            acc = acc.mul(&self.letter_mats[a].lift())?;
        }
        Ok(acc)
    }

    /// Indicator row of `Q_in`.
    pub fn initial_vector<S: Semiring>(&self) -> Matrix<S> {
        indicator_row(self.num_states(), &self.initial)
    }

    /// Indicator row of `Q_t`.
    pub fn accepting_vector<S: Semiring>(&self) -> Matrix<S> {
        indicator_row(self.num_states(), &self.accepting)
    }

    /// `Q_t*(Q_in · w)` over `S`. Over `u64` this counts accepting paths.
    pub fn interval_value<S: Semiring>(&self, w: &Word) -> Result<S> {
        let ids = self.resolve(w)?;
        let mut v: Matrix<S> = self.initial_vector();
        for a in ids {
            v = v.mul(&self.letter_mats[a].lift())?;
        }
        Ok(v.mul(&self.accepting_vector::<S>().transpose())?
            .as_scalar()
            .unwrap_or(S::ZERO))
    }

    /// Membership in the interval language.
    pub fn interval_eval(&self, w: &Word) -> Result<bool> {
        self.interval_value(w)
    }

    /// `Σ_q q*(q·w) = tr(M_w)` over `S`.
    pub fn trace_value<S: Semiring>(&self, w: &Word) -> Result<S> {
        self.word_matrix::<S>(w)?.trace()
    }

    /// Membership in the trace (circular) language.
    pub fn trace_eval(&self, w: &Word) -> Result<bool> {
        self.trace_value(w)
    }

    /// Whether some cyclic path spelling `w` passes through a marked state.
    /// Computed as `Σ_{q ∈ marked} Σ_{rotations w'} M_{w'}[q][q]`.
    pub fn circular_through_subset<S: AsRef<str>>(&self, marked: &[S], w: &Word) -> Result<bool> {
        let marked = marked
            .iter()
            .map(|q| self.state_id(q.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.resolve(w)?;
        for rot in w.rotations() {
            let m = self.word_matrix::<bool>(&rot)?;
            if marked.iter().any(|&q| m.get(q, q)) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Keep the states lying on an initial-to-accepting path or on an oriented
    /// loop, with the induced transitions and decorations. Transitions that
    /// leave the kept set are dropped, which is the quotient by the states
    /// reachable from it but not in it.
    pub fn trim(&self) -> Nfa {
        let n = self.num_states();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(q, _, r) in &self.transitions {
            succ[q].push(r);
            pred[r].push(q);
        }
        let forward = reach(&succ, self.initial.iter().copied());
        let backward = reach(&pred, self.accepting.iter().copied());
        let keep: Vec<usize> = (0..n)
            .filter(|&q| {
                (forward[q] && backward[q]) || {
                    // q lies on a loop iff q is reachable from its successors
                    let r = reach(&succ, succ[q].iter().copied());
                    r[q]
                }
            })
            .collect();
        self.restrict(&keep)
    }

    /// Disjoint union with states renamed `L.q` and `R.q`. Interval and trace
    /// languages of the result are the unions of the operands' languages.
    pub fn disjoint_union(&self, other: &Nfa) -> Result<Nfa> {
        let mine: BTreeSet<&String> = self.alphabet.iter().collect();
        let theirs: BTreeSet<&String> = other.alphabet.iter().collect();
        if mine != theirs {
            return Err(Error::invalid(format!(
                "alphabet mismatch in disjoint union: {:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        let mut spec = NfaSpec {
            alphabet: self.alphabet.clone(),
            ..NfaSpec::default()
        };
        for (tag, a) in [("L", self), ("R", other)] {
            let rename = |q: usize| format!("{tag}.{}", a.states[q]);
            spec.states.extend((0..a.num_states()).map(rename));
            spec.transitions.extend(
                a.transitions
                    .iter()
                    .map(|&(q, l, r)| TransitionSpec::new(rename(q), &a.alphabet[l], rename(r))),
            );
            spec.initial.extend(a.initial.iter().map(|&q| rename(q)));
            spec.accepting.extend(a.accepting.iter().map(|&q| rename(q)));
        }
        Nfa::from_spec(spec)
    }

    /// Graphviz rendering of the transition graph: accepting states are double
    /// circles, initial states get an entry arrow.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        for (q, name) in self.states.iter().enumerate() {
            let shape = if self.accepting.contains(&q) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  \"{}\" [shape={shape}];", escape(name));
        }
        for &q in &self.initial {
            let name = escape(&self.states[q]);
            let _ = writeln!(out, "  \"__start_{name}\" [shape=point, style=invis];");
            let _ = writeln!(out, "  \"__start_{name}\" -> \"{name}\";");
        }
        for &(q, a, r) in &self.transitions {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                escape(&self.states[q]),
                escape(&self.states[r]),
                escape(&self.alphabet[a])
            );
        }
        out.push_str("}\n");
        out
    }

    /// Brute-force isomorphism test (bijection of states preserving transitions
    /// and decorations, letters matched by name). Intended for small automata.
    pub fn is_isomorphic(&self, other: &Nfa) -> bool {
        let n = self.num_states();
        if n != other.num_states()
            || self.transitions.len() != other.transitions.len()
            || self.initial.len() != other.initial.len()
            || self.accepting.len() != other.accepting.len()
        {
            return false;
        }
        let letters: BTreeSet<&String> = self.alphabet.iter().collect();
        if letters != other.alphabet.iter().collect() {
            return false;
        }
        let letter_map: Vec<usize> = self
            .alphabet
            .iter()
            .map(|l| other.letter_index[l])
            .collect();
        let mut assign = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.iso_search(other, &letter_map, 0, &mut assign, &mut used)
    }

    fn iso_search(
        &self,
        other: &Nfa,
        letter_map: &[usize],
        q: usize,
        assign: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = self.num_states();
        if q == n {
            return self
                .transitions
                .iter()
                .all(|&(a, l, b)| other.has_transition(assign[a], letter_map[l], assign[b]));
        }
        for cand in 0..n {
            if used[cand]
                || self.initial.contains(&q) != other.initial.contains(&cand)
                || self.accepting.contains(&q) != other.accepting.contains(&cand)
            {
                continue;
            }
            assign[q] = cand;
            // transitions among already-assigned states must map over
            let consistent = self.transitions.iter().all(|&(a, l, b)| {
                a > q || b > q || other.has_transition(assign[a], letter_map[l], assign[b])
            });
            if consistent {
                used[cand] = true;
                if self.iso_search(other, letter_map, q + 1, assign, used) {
                    return true;
                }
                used[cand] = false;
            }
        }
        assign[q] = usize::MAX;
        false
    }
}

/// Equality by names: same state set, alphabet set, transitions and
/// decorations, regardless of declaration order.
impl PartialEq for Nfa {
    fn eq(&self, other: &Self) -> bool {
        type Names = BTreeSet<String>;
        fn canon(a: &Nfa) -> (Names, Names, BTreeSet<TransitionSpec>, Names, Names) {
            let s = a.to_spec();
            (
                s.states.into_iter().collect(),
                s.alphabet.into_iter().collect(),
                s.transitions.into_iter().collect(),
                s.initial.into_iter().collect(),
                s.accepting.into_iter().collect(),
            )
        }
        canon(self) == canon(other)
    }
}

impl Eq for Nfa {}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn indicator_row<S: Semiring>(n: usize, set: &BTreeSet<usize>) -> Matrix<S> {
    Matrix::row((0..n).map(|q| S::from_bool(set.contains(&q))).collect())
}

/// Breadth-first closure of `start` under `adj`; start vertices are included.
fn reach(adj: &[Vec<usize>], start: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in start {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(q) = queue.pop_front() {
        for &r in &adj[q] {
            if !seen[r] {
                seen[r] = true;
                queue.push_back(r);
            }
        }
    }
    seen
}

/// One-letter automaton (letter `a`) whose trace language is the eventually
/// periodic strongly circular language with the given short cycle lengths
/// and tail `a^N (a^n)^*`: the disjoint union of simple `a`-loops of lengths
/// `short_cycles` and a one-vertex flower with petals of lengths
/// `N, N + n, …, N + (m − 1) n`.
pub fn flower_automaton(short_cycles: &[usize], big_n: usize, n: usize, m: usize) -> Result<Nfa> {
    if n == 0 || m == 0 {
        return Err(Error::invalid("flower period and petal count must be at least 1"));
    }
    if big_n == 0 || short_cycles.contains(&0) {
        return Err(Error::invalid("zero-length cycle requested"));
    }
    let mut spec = NfaSpec {
        alphabet: vec!["a".into()],
        ..NfaSpec::default()
    };
    for (c, &len) in short_cycles.iter().enumerate() {
        let name = |k: usize| format!("c{c}_{k}");
        spec.states.extend((0..len).map(name));
        spec.transitions
            .extend((0..len).map(|k| TransitionSpec::new(name(k), "a", name((k + 1) % len))));
    }
    spec.states.push("f".into());
    for petal in 0..m {
        let len = big_n + petal * n;
        let node = |k: usize| {
            if k == 0 || k == len {
                "f".to_string()
            } else {
                format!("p{petal}_{k}")
            }
        };
        spec.states.extend((1..len).map(node));
        spec.transitions
            .extend((0..len).map(|k| TransitionSpec::new(node(k), "a", node(k + 1))));
    }
    Nfa::from_spec(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::all_words;

    /// Two states: `a` swaps them, `b` loops on `q2`; initial `q1`, accepting `q2`.
    pub(crate) fn a2() -> Nfa {
        Nfa::new(
            &["q1", "q2"],
            &["a", "b"],
            &[("q1", "a", "q2"), ("q2", "a", "q1"), ("q2", "b", "q2")],
            &["q1"],
            &["q2"],
        )
        .unwrap()
    }

    fn h1() -> Nfa {
        Nfa::new(
            &["q0", "q1"],
            &["a", "b"],
            &[("q0", "b", "q1"), ("q1", "b", "q0"), ("q1", "a", "q1")],
            &[],
            &[],
        )
        .unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    #[test]
    fn letter_matrices_follow_state_order() {
        let a = a2();
        let ma = a.letter_matrix("a").unwrap();
        assert_eq!(ma, &BoolMat::from_rows(vec![vec![false, true], vec![true, false]]).unwrap());
        assert_eq!(a.word_matrix::<bool>(&Word::empty()).unwrap(), BoolMat::identity(2));
        let mab = a.word_matrix::<bool>(&w("ab")).unwrap();
        assert!(mab.get(0, 1));
        assert_eq!(mab, BoolMat::from_rows(vec![vec![false, true], vec![false, false]]).unwrap());
        assert!(matches!(a.letter_matrix("z"), Err(Error::Lookup { .. })));
    }

    #[test]
    fn interval_membership() {
        let a = a2();
        assert!(a.interval_eval(&w("a")).unwrap());
        assert!(!a.interval_eval(&w("aa")).unwrap());
        assert!(a.interval_eval(&w("abba")).is_ok_and(|x| !x));
        assert!(a.interval_eval(&w("aaab")).unwrap());
        assert!(a.interval_eval(&w("c")).is_err());
        let loopy = Nfa::new(&["p"], &["a"], &[], &["p"], &["p"]).unwrap();
        assert!(loopy.interval_eval(&Word::empty()).unwrap());
    }

    #[test]
    fn trace_membership() {
        let a = a2();
        assert!(a.trace_eval(&w("aba")).unwrap());
        assert!(a.trace_eval(&Word::empty()).unwrap());
        assert!(!a.trace_eval(&w("a")).unwrap());
    }

    #[test]
    fn empty_automaton_rejects_everything() {
        let e = Nfa::new::<&str>(&[], &["a"], &[], &[], &[]).unwrap();
        for word in all_words(e.alphabet(), 3) {
            assert!(!e.interval_eval(&word).unwrap());
            assert!(!e.trace_eval(&word).unwrap());
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Nfa::new(&["q", "q"], &["a"], &[], &[], &[]),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            Nfa::new(&["q"], &["a"], &[("q", "b", "q")], &[], &[]),
            Err(Error::Lookup { .. })
        ));
        assert!(matches!(
            Nfa::new(&["q"], &["a"], &[], &["r"], &[]),
            Err(Error::Lookup { .. })
        ));
    }

    #[test]
    fn json_schema_is_strict() {
        let text = r#"{"states":["q1","q2"],"alphabet":["a"],"transitions":[{"from":"q1","letter":"a","to":"q2"}],"initial":["q1"],"accepting":["q2"]}"#;
        let a = Nfa::from_json(text).unwrap();
        assert!(a.interval_eval(&w("a")).unwrap());
        assert_eq!(Nfa::from_json(&a.to_json()).unwrap(), a);
        let extra = text.replacen('{', r#"{"comment":"x","#, 1);
        assert!(matches!(Nfa::from_json(&extra), Err(Error::Json(_))));
        let bad_edge = r#"{"states":["q"],"alphabet":["a"],"transitions":[{"from":"q","letter":"a","to":"q","w":1}],"initial":[],"accepting":[]}"#;
        assert!(Nfa::from_json(bad_edge).is_err());
    }

    #[test]
    fn trim_drops_unreachable_acyclic_state() {
        let a = Nfa::new(
            &["s", "t", "junk"],
            &["a"],
            &[("s", "a", "t"), ("junk", "a", "s")],
            &["s"],
            &["t"],
        )
        .unwrap();
        let t = a.trim();
        assert_eq!(t.states(), &["s".to_string(), "t".to_string()]);
        // a dead end after an accepting path is dropped too
        let b = Nfa::new(&["s", "t", "dead"], &["a"], &[("s", "a", "t"), ("t", "a", "dead")], &["s"], &["t"]).unwrap();
        assert_eq!(b.trim().num_states(), 2);
        assert_eq!(b.trim().num_transitions(), 1);
    }

    #[test]
    fn trim_fixes_a2() {
        let a = a2();
        assert_eq!(a.trim(), a);
    }

    #[test]
    fn trim_preserves_both_languages() {
        let a = Nfa::new(
            &["s", "t", "x", "y", "z"],
            &["a", "b"],
            &[
                ("s", "a", "t"),
                ("t", "b", "s"),
                ("x", "a", "y"),
                ("y", "a", "y"),
                ("y", "b", "z"),
                ("t", "a", "z"),
            ],
            &["s"],
            &["t"],
        )
        .unwrap();
        let t = a.trim();
        assert!(t.num_states() < a.num_states());
        for word in all_words(a.alphabet(), 8) {
            assert_eq!(a.interval_eval(&word).unwrap(), t.interval_eval(&word).unwrap(), "{word}");
            assert_eq!(a.trace_eval(&word).unwrap(), t.trace_eval(&word).unwrap(), "{word}");
        }
    }

    #[test]
    fn disjoint_union_behaviour() {
        let a = a2();
        let empty = Nfa::new::<&str>(&[], &["a", "b"], &[], &[], &[]).unwrap();
        assert!(a.disjoint_union(&empty).unwrap().is_isomorphic(&a));

        let bloop = Nfa::new(&["p"], &["a", "b"], &[("p", "b", "p")], &[], &[]).unwrap();
        let u = a.disjoint_union(&bloop).unwrap();
        for word in all_words(a.alphabet(), 6) {
            assert_eq!(u.interval_eval(&word).unwrap(), a.interval_eval(&word).unwrap());
            let either = a.trace_eval(&word).unwrap() || bloop.trace_eval(&word).unwrap();
            assert_eq!(u.trace_eval(&word).unwrap(), either);
        }
        // A2 already has a b-loop on q2; a lone b-loop automaton shows the flip
        let a_no_b = Nfa::new(&["q1", "q2"], &["a", "b"], &[("q1", "a", "q2"), ("q2", "a", "q1")], &["q1"], &["q2"]).unwrap();
        assert!(!a_no_b.trace_eval(&w("b")).unwrap());
        assert!(a_no_b.disjoint_union(&bloop).unwrap().trace_eval(&w("b")).unwrap());

        let other = Nfa::new(&["p"], &["c"], &[], &[], &[]).unwrap();
        assert!(matches!(a.disjoint_union(&other), Err(Error::Invalid(_))));
    }

    #[test]
    fn flower_single_loop_is_a_star() {
        let f = flower_automaton(&[], 1, 1, 1).unwrap();
        assert_eq!(f.num_states(), 1);
        for k in 0..8 {
            assert!(f.trace_eval(&w("a").pow(k)).unwrap());
        }
    }

    #[test]
    fn flower_with_short_cycle() {
        let f = flower_automaton(&[2], 3, 3, 1).unwrap();
        // expected memberships: exponents divisible by 2 or 3
        let expected = |k: usize| k.is_multiple_of(2) || k.is_multiple_of(3);
        for k in 0..=12 {
            assert_eq!(f.trace_eval(&w("a").pow(k)).unwrap(), expected(k), "a^{k}");
        }
        assert!(flower_automaton(&[0], 3, 3, 1).is_err());
        assert!(flower_automaton(&[], 0, 3, 1).is_err());
        assert!(flower_automaton(&[], 3, 0, 1).is_err());
    }

    #[test]
    fn flower_petals_share_a_vertex() {
        // petals of length 2 and 5 through one vertex: a^7 = a^2 a^5 is a loop
        let f = flower_automaton(&[], 2, 3, 2).unwrap();
        assert_eq!(f.num_states(), 1 + 1 + 4);
        assert!(f.trace_eval(&w("aaaaaaa")).unwrap());
        assert!(!f.trace_eval(&w("aaa")).unwrap());
    }

    #[test]
    fn circular_through_marked_state() {
        let h = h1();
        assert!(h.circular_through_subset(&["q0"], &w("bb")).unwrap());
        assert!(!h.circular_through_subset(&["q0"], &w("a")).unwrap());
        assert!(h.circular_through_subset(&["q0"], &Word::empty()).unwrap());
        // a-loops at q1 exist but never visit q0
        assert!(h.trace_eval(&w("a")).unwrap());
        assert!(h.circular_through_subset(&["q0"], &w("abb")).unwrap());
        assert!(!h.circular_through_subset(&["q0"], &w("abab")).unwrap());
        assert!(matches!(
            h.circular_through_subset(&["nope"], &w("b")),
            Err(Error::Lookup { .. })
        ));
    }

    #[test]
    fn dot_export_marks_decorations() {
        let dot = a2().to_dot();
        assert!(dot.contains("\"q2\" [shape=doublecircle];"));
        assert!(dot.contains("\"__start_q1\" -> \"q1\";"));
        assert!(dot.contains("\"q2\" -> \"q2\" [label=\"b\"];"));
    }

    #[test]
    fn decomposition_of_identity() {
        let n = 4;
        let sum = (0..n).fold(BoolMat::zeros(n, n), |acc, q| acc.add(&BoolMat::elementary(n, n, q, q)).unwrap());
        assert_eq!(sum, BoolMat::identity(n));
    }
}
