//! Coverings and weak coverings of automata.
//!
//! Cover states are named `q@k` (base state `q`, fiber index `k`) and listed
//! by base state first, then fiber.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{Nfa, NfaSpec, Transition, TransitionSpec};
use crate::error::{Error, Result};

/// A permutation of `{0, …, n − 1}`, as the list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::invalid(format!("permutation {images:?} of {{0..{n}}}")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// `i ↦ i + k mod n`.
    pub fn shift(n: usize, k: usize) -> Self {
        Permutation((0..n).map(|i| (i + k) % n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A map of automaton graphs `cover → base`. The edge map is induced by the
/// vertex map: transitions are determined by their endpoints and label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    vertex_map: Vec<usize>,
    edge_map: BTreeMap<Transition, Option<Transition>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphMapSpec {
    pub vertex_map: BTreeMap<String, String>,
}

impl GraphMap {
    /// `vertex_map[q']` is the image of cover state `q'`. Cover edges whose
    /// label is missing from the base alphabet map to `None`.
    pub fn new(cover: &Nfa, base: &Nfa, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != cover.num_states() {
            return Err(Error::invalid(format!(
                "graph map defined on {} of {} cover states",
                vertex_map.len(),
                cover.num_states()
            )));
        }
        if let Some(&q) = vertex_map.iter().find(|&&q| q >= base.num_states()) {
            return Err(Error::invalid(format!("graph map targets missing base state #{q}")));
        }
        let edge_map = cover
            .transitions()
            .map(|(q, a, r)| {
                let image = base
                    .letter_id(cover.letter_name(a))
                    .ok()
                    .map(|b| (vertex_map[q], b, vertex_map[r]));
                ((q, a, r), image)
            })
            .collect();
        Ok(GraphMap { vertex_map, edge_map })
    }

    pub fn identity(a: &Nfa) -> Self {
        GraphMap::new(a, a, (0..a.num_states()).collect()).expect("identity map is total")
    }

    pub fn from_spec(spec: &GraphMapSpec, cover: &Nfa, base: &Nfa) -> Result<Self> {
        let mut vmap = vec![None; cover.num_states()];
        for (from, to) in &spec.vertex_map {
            vmap[cover.state_id(from)?] = Some(base.state_id(to)?);
        }
        let vmap = vmap
            .into_iter()
            .enumerate()
            .map(|(q, t)| {
                t.ok_or_else(|| Error::invalid(format!("graph map undefined on `{}`", cover.state_name(q))))
            })
            .collect::<Result<_>>()?;
        GraphMap::new(cover, base, vmap)
    }

    pub fn from_json(text: &str, cover: &Nfa, base: &Nfa) -> Result<Self> {
        GraphMap::from_spec(&serde_json::from_str(text)?, cover, base)
    }

    pub fn to_spec(&self, cover: &Nfa, base: &Nfa) -> GraphMapSpec {
        GraphMapSpec {
            vertex_map: self
                .vertex_map
                .iter()
                .enumerate()
                .map(|(q, &b)| (cover.state_name(q).to_string(), base.state_name(b).to_string()))
                .collect(),
        }
    }

    pub fn vertex(&self, q: usize) -> usize {
        self.vertex_map[q]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge(&self, e: Transition) -> Option<Transition> {
        self.edge_map.get(&e).copied().flatten()
    }

    /// First failed covering condition, if any. `weak` selects the
    /// existence-only lifting condition for outgoing edges.
    pub fn check(&self, cover: &Nfa, base: &Nfa, weak: bool) -> Result<(), String> {
        if self.vertex_map.len() != cover.num_states() {
            return Err("map is not total".into());
        }
        let mut hit = vec![false; base.num_states()];
        for &b in &self.vertex_map {
            hit[b] = true;
        }
        if let Some(q) = hit.iter().position(|h| !h) {
            return Err(format!("state `{}` has no preimage", base.state_name(q)));
        }
        let mut image_edges = BTreeSet::new();
        for (&e, &img) in &self.edge_map {
            match img {
                Some(f) if base.has_transition(f.0, f.1, f.2) => {
                    image_edges.insert(f);
                }
                _ => {
                    return Err(format!(
                        "edge {} -{}-> {} has no image",
                        cover.state_name(e.0),
                        cover.letter_name(e.1),
                        cover.state_name(e.2)
                    ))
                }
            }
        }
        if let Some(f) = base.transitions().find(|f| !image_edges.contains(f)) {
            return Err(format!(
                "edge {} -{}-> {} has no preimage",
                base.state_name(f.0),
                base.letter_name(f.1),
                base.state_name(f.2)
            ));
        }
        for q in 0..cover.num_states() {
            let b = self.vertex_map[q];
            if cover.initial().contains(&q) != base.initial().contains(&b) {
                return Err(format!("initial states are not a full preimage at `{}`", cover.state_name(q)));
            }
            if cover.accepting().contains(&q) != base.accepting().contains(&b) {
                return Err(format!("accepting states are not a full preimage at `{}`", cover.state_name(q)));
            }
        }
        // lifts of each base edge at each vertex of the relevant fiber
        let mut out_lifts: BTreeMap<(usize, Transition), usize> = BTreeMap::new();
        let mut in_lifts: BTreeMap<(usize, Transition), usize> = BTreeMap::new();
        for (&(q, _, r), &img) in &self.edge_map {
            let f = img.expect("checked above");
            *out_lifts.entry((q, f)).or_default() += 1;
            *in_lifts.entry((r, f)).or_default() += 1;
        }
        for f in base.transitions() {
            for q in (0..cover.num_states()).filter(|&q| self.vertex_map[q] == f.0) {
                let k = out_lifts.get(&(q, f)).copied().unwrap_or(0);
                if k == 0 || (!weak && k > 1) {
                    return Err(format!(
                        "{} lifts of {} -{}-> {} start at `{}`",
                        k,
                        base.state_name(f.0),
                        base.letter_name(f.1),
                        base.state_name(f.2),
                        cover.state_name(q)
                    ));
                }
            }
            if weak {
                continue;
            }
            for r in (0..cover.num_states()).filter(|&r| self.vertex_map[r] == f.2) {
                let k = in_lifts.get(&(r, f)).copied().unwrap_or(0);
                if k != 1 {
                    return Err(format!(
                        "{} lifts of {} -{}-> {} end at `{}`",
                        k,
                        base.state_name(f.0),
                        base.letter_name(f.1),
                        base.state_name(f.2),
                        cover.state_name(r)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Locally trivial covering: surjective, label- and decoration-preserving,
/// with unique lifts of incoming and outgoing edges at every vertex.
pub fn is_covering(p: &GraphMap, cover: &Nfa, base: &Nfa) -> bool {
    p.check(cover, base, false).is_ok()
}

/// Weak covering: as [`is_covering`] but outgoing edges need only lift to
/// at least one edge, and incoming edges are unconstrained.
pub fn is_weak_covering(p: &GraphMap, cover: &Nfa, base: &Nfa) -> bool {
    p.check(cover, base, true).is_ok()
}

/// A cover automaton with its projection to the base.
#[derive(Clone, Debug)]
pub struct Cover {
    pub automaton: Nfa,
    pub projection: GraphMap,
}

pub fn fiber_name(q: &str, k: usize) -> String {
    format!("{q}@{k}")
}

/// Build the cover with fibers of the given sizes and an edge relation on
/// `(base edge, source fiber index) → target fiber indices`.
fn build_cover(
    base: &Nfa,
    fibers: &[usize],
    lifts: impl Fn(Transition, usize) -> Vec<usize>,
) -> Result<Cover> {
    let name = |q: usize, k: usize| fiber_name(base.state_name(q), k);
    let mut spec = NfaSpec {
        alphabet: base.alphabet().to_vec(),
        ..NfaSpec::default()
    };
    let mut vmap = Vec::new();
    for (q, &size) in fibers.iter().enumerate() {
        for k in 0..size {
            spec.states.push(name(q, k));
            vmap.push(q);
            if base.initial().contains(&q) {
                spec.initial.push(name(q, k));
            }
            if base.accepting().contains(&q) {
                spec.accepting.push(name(q, k));
            }
        }
    }
    for e in base.transitions() {
        for k in 0..fibers[e.0] {
            for j in lifts(e, k) {
                spec.transitions
                    .push(TransitionSpec::new(name(e.0, k), base.letter_name(e.1), name(e.2, j)));
            }
        }
    }
    let automaton = Nfa::from_spec(spec)?;
    let projection = GraphMap::new(&automaton, base, vmap)?;
    Ok(Cover {
        automaton,
        projection,
    })
}

/// Winding of an edge in the circular arrangement `order`:
/// 1 iff the target does not come strictly after the source.
pub fn winding(pos: &[usize], e: Transition) -> usize {
    usize::from(pos[e.2] <= pos[e.0])
}

/// Cyclic `n`-fold cover: states arranged around a circle in `order`, each
/// edge lifted from fiber `k` to fiber `k + winding`.
pub fn cyclic_cover<S: AsRef<str>>(base: &Nfa, order: &[S], n: usize) -> Result<Cover> {
    if n == 0 {
        return Err(Error::invalid("cover degree must be at least 1"));
    }
    let pos = arrangement(base, order)?;
    let voltages = base
        .transitions()
        .map(|e| (e, Permutation::shift(n, winding(&pos, e))))
        .collect();
    voltage_cover(base, n, &voltages)
}

fn arrangement<S: AsRef<str>>(base: &Nfa, order: &[S]) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; base.num_states()];
    for (i, q) in order.iter().enumerate() {
        let q = base.state_id(q.as_ref())?;
        if pos[q] != usize::MAX {
            return Err(Error::invalid(format!("state `{}` repeated in order", base.state_name(q))));
        }
        pos[q] = i;
    }
    if order.len() != base.num_states() {
        return Err(Error::invalid(format!(
            "order lists {} of {} states",
            order.len(),
            base.num_states()
        )));
    }
    Ok(pos)
}

/// Voltage cover: edge `e` lifts `(q, i) → (q', σ_e(i))`. Edges without a
/// voltage get the identity.
pub fn voltage_cover(base: &Nfa, n: usize, voltages: &BTreeMap<Transition, Permutation>) -> Result<Cover> {
    if n == 0 {
        return Err(Error::invalid("cover degree must be at least 1"));
    }
    for (e, p) in voltages {
        if p.len() != n {
            return Err(Error::invalid(format!("voltage {p} on a degree-{n} cover")));
        }
        if !base.has_transition(e.0, e.1, e.2) {
            return Err(Error::invalid("voltage on a missing transition"));
        }
    }
    build_cover(base, &vec![n; base.num_states()], |e, k| {
        vec![voltages.get(&e).map_or(k, |p| p.apply(k))]
    })
}

/// On-disk voltage assignment.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoltageSpec {
    pub n: usize,
    pub voltages: Vec<VoltageEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoltageEntry {
    pub from: String,
    pub letter: String,
    pub to: String,
    pub perm: Permutation,
}

impl VoltageSpec {
    pub fn resolve(&self, base: &Nfa) -> Result<BTreeMap<Transition, Permutation>> {
        self.voltages
            .iter()
            .map(|v| {
                let e = (base.state_id(&v.from)?, base.letter_id(&v.letter)?, base.state_id(&v.to)?);
                if !base.has_transition(e.0, e.1, e.2) {
                    return Err(Error::lookup("transition", format!("{} -{}-> {}", v.from, v.letter, v.to)));
                }
                Ok((e, v.perm.clone()))
            })
            .collect()
    }
}

/// Weak cover with the given fiber sizes. `targets(e, k)` lists the fiber
/// indices over `e.2` reached from fiber `k` over `e.0` by the lift of `e`;
/// each list must be non-empty.
pub fn weak_cover(
    base: &Nfa,
    fibers: &[usize],
    targets: impl Fn(Transition, usize) -> Vec<usize>,
) -> Result<Cover> {
    if fibers.len() != base.num_states() || fibers.contains(&0) {
        return Err(Error::invalid("every base state needs a non-empty fiber"));
    }
    for e in base.transitions() {
        for k in 0..fibers[e.0] {
            let t = targets(e, k);
            if t.is_empty() || t.iter().any(|&j| j >= fibers[e.2]) {
                return Err(Error::invalid(format!(
                    "lift of {} -{}-> {} from fiber {k} is empty or out of range",
                    base.state_name(e.0),
                    base.letter_name(e.1),
                    base.state_name(e.2)
                )));
            }
        }
    }
    build_cover(base, fibers, targets)
}

/// A weak covering of the two-state automaton with `a: q1 ⇄ q2`, `b` looping
/// at `q2`, with three states over `q1` and two over `q2`.
pub fn weak_cover_example(base: &Nfa) -> Result<Cover> {
    let q1 = base.state_id("q1")?;
    let a = base.letter_id("a")?;
    weak_cover(base, &[3, 2], |(from, letter, _), k| {
        if from == q1 {
            // q1@0 → q2@1, q1@1 → both, q1@2 → q2@1
            match k {
                0 => vec![1],
                1 => vec![0, 1],
                _ => vec![1],
            }
        } else if letter == a {
            // q2@0 → q1@0, q1@1; q2@1 → q1@2
            if k == 0 {
                vec![0, 1]
            } else {
                vec![2]
            }
        } else {
            // b: q2@0 → q2@1, q2@1 → q2@0
            vec![1 - k]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{all_words, Word};

    fn a2() -> Nfa {
        Nfa::new(
            &["q1", "q2"],
            &["a", "b"],
            &[("q1", "a", "q2"), ("q2", "a", "q1"), ("q2", "b", "q2")],
            &["q1"],
            &["q2"],
        )
        .unwrap()
    }

    fn f1() -> Nfa {
        Nfa::new(&["p", "q"], &["a"], &[("p", "a", "q"), ("q", "a", "p")], &["p"], &["p"]).unwrap()
    }

    fn a(k: usize) -> Word {
        Word::parse("a").pow(k)
    }

    #[test]
    fn degree_one_is_the_base() {
        let base = a2();
        let c = cyclic_cover(&base, &["q1", "q2"], 1).unwrap();
        assert!(c.automaton.is_isomorphic(&base));
        assert!(is_covering(&c.projection, &c.automaton, &base));
    }

    #[test]
    fn two_cycle_triple_cover() {
        let base = f1();
        let c = cyclic_cover(&base, &["p", "q"], 3).unwrap();
        let g = &c.automaton;
        assert_eq!(g.num_states(), 6);
        assert_eq!(g.states()[..3], ["p@0", "p@1", "p@2"]);
        assert!(g.trace_eval(&a(6)).unwrap());
        assert!(!g.trace_eval(&a(2)).unwrap());
        for k in 0..=12 {
            assert_eq!(g.interval_eval(&a(k)).unwrap(), base.interval_eval(&a(k)).unwrap());
        }
    }

    #[test]
    fn a2_double_cover_shifts_windings() {
        let base = a2();
        let c = cyclic_cover(&base, &["q1", "q2"], 2).unwrap();
        assert!(base.trace_eval(&Word::parse("aa")).unwrap());
        assert!(!c.automaton.trace_eval(&Word::parse("aa")).unwrap());
        assert!(c.automaton.trace_eval(&Word::parse("aba")).unwrap());
    }

    #[test]
    fn bad_orders_rejected() {
        let base = a2();
        assert!(cyclic_cover(&base, &["q1"], 2).is_err());
        assert!(cyclic_cover(&base, &["q1", "q1"], 2).is_err());
        assert!(cyclic_cover(&base, &["q1", "q3"], 2).is_err());
        assert!(cyclic_cover(&base, &["q1", "q2"], 0).is_err());
    }

    #[test]
    fn permutations_validate() {
        assert!(Permutation::new(vec![1, 0, 2]).is_ok());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(serde_json::from_str::<Permutation>("[0,0]").is_err());
    }

    #[test]
    fn identity_voltages_give_copies() {
        let base = a2();
        let c = voltage_cover(&base, 2, &BTreeMap::new()).unwrap();
        let copies = base.disjoint_union(&base).unwrap();
        assert!(c.automaton.is_isomorphic(&copies));
        assert!(is_covering(&c.projection, &c.automaton, &base));
    }

    #[test]
    fn cyclic_is_a_voltage_cover() {
        let base = a2();
        let pos = [0, 1];
        let volts = base
            .transitions()
            .map(|e| (e, Permutation::shift(3, winding(&pos, e))))
            .collect();
        let v = voltage_cover(&base, 3, &volts).unwrap();
        let c = cyclic_cover(&base, &["q1", "q2"], 3).unwrap();
        assert!(v.automaton.is_isomorphic(&c.automaton));
    }

    #[test]
    fn identity_and_collapse_maps() {
        let base = a2();
        let id = GraphMap::identity(&base);
        assert!(is_covering(&id, &base, &base));
        assert!(is_weak_covering(&id, &base, &base));
        let double = base.disjoint_union(&base).unwrap();
        let collapse = GraphMap::new(&double, &base, vec![0, 1, 0, 1]).unwrap();
        assert!(is_covering(&collapse, &double, &base));
        assert!(GraphMap::new(&double, &base, vec![0, 1]).is_err());
    }

    #[test]
    fn weak_cover_is_weak_but_not_locally_trivial() {
        let base = a2();
        let c = weak_cover_example(&base).unwrap();
        let g = &c.automaton;
        assert_eq!(g.num_states(), 5);
        assert!(is_weak_covering(&c.projection, g, &base));
        assert!(!is_covering(&c.projection, g, &base));
        for w in all_words(base.alphabet(), 8) {
            assert_eq!(g.interval_eval(&w).unwrap(), base.interval_eval(&w).unwrap(), "{w}");
            assert!(!g.trace_eval(&w).unwrap() || base.trace_eval(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn decoration_mismatch_detected() {
        let base = a2();
        let c = cyclic_cover(&base, &["q1", "q2"], 2).unwrap();
        let mut initial = c.automaton.initial().clone();
        initial.pop_first();
        let broken = c.automaton.with_decorations(initial, c.automaton.accepting().clone());
        let p = GraphMap::new(&broken, &base, c.projection.vertex_map().to_vec()).unwrap();
        let why = p.check(&broken, &base, true).unwrap_err();
        assert!(why.contains("initial"), "{why}");
    }

    #[test]
    fn graph_map_json() {
        let base = a2();
        let c = cyclic_cover(&base, &["q1", "q2"], 2).unwrap();
        let spec = c.projection.to_spec(&c.automaton, &base);
        let text = serde_json::to_string(&spec).unwrap();
        let p = GraphMap::from_json(&text, &c.automaton, &base).unwrap();
        assert_eq!(p, c.projection);
        let partial = r#"{"vertex_map":{"q1@0":"q1"}}"#;
        assert!(GraphMap::from_json(partial, &c.automaton, &base).is_err());
    }
}
