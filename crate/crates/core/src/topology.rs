//! Finite topological spaces, their lattices of open sets, and T-automata.
//!
//! A finite space is stored by its minimal open sets `U_x`. Only minimal
//! (T0) spaces are admitted, i.e. `U_x ≠ U_y` for `x ≠ y`; [`FinTop::reduce`]
//! merges points with equal minimal opens. Opens are down-sets of the
//! specialization order `y ≤ x ⇔ y ∈ U_x`, closed sets are up-sets, and
//! `V_x = {y : x ∈ U_y}` is the closure of `x`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::automaton::Nfa;
use crate::error::{Error, Result};
use crate::word::Word;

/// Subset of the points of a space, by index.
pub type PointSet = FixedBitSet;

/// Default cap on the number of open sets [`FinTop::opens`] will list.
pub const DEFAULT_OPENS_CAP: usize = 1 << 16;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinTopSpec {
    pub points: Vec<String>,
    pub min_open: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct FinTop {
    points: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<PointSet>,
    down: Vec<PointSet>,
}

impl PartialEq for FinTop {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.up == other.up
    }
}

impl Eq for FinTop {}

fn set_of(n: usize, members: impl IntoIterator<Item = usize>) -> PointSet {
    let mut s = PointSet::with_capacity(n);
    s.extend(members);
    s
}

fn check_basis(points: &[String], up: &[PointSet]) -> Result<()> {
    for (x, ux) in up.iter().enumerate() {
        if !ux.contains(x) {
            return Err(Error::invalid(format!("space: {0} not in U_{0}", points[x])));
        }
        for y in ux.ones() {
            if !up[y].is_subset(ux) {
                return Err(Error::invalid(format!(
                    "space: {} ∈ U_{} but U_{} ⊄ U_{}",
                    points[y], points[x], points[y], points[x]
                )));
            }
        }
    }
    Ok(())
}

fn intern_points(points: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(Error::invalid(format!("space: duplicate point `{p}`")));
        }
    }
    Ok(index)
}

fn parse_basis(spec: &FinTopSpec, index: &HashMap<String, usize>) -> Result<Vec<PointSet>> {
    let n = spec.points.len();
    let mut up = vec![None; n];
    for (x, members) in &spec.min_open {
        let xi = *index.get(x).ok_or_else(|| Error::lookup("point", x))?;
        let ids = members
            .iter()
            .map(|m| index.get(m).copied().ok_or_else(|| Error::lookup("point", m)))
            .collect::<Result<Vec<_>>>()?;
        up[xi] = Some(set_of(n, ids));
    }
    up.into_iter()
        .enumerate()
        .map(|(x, u)| u.ok_or_else(|| Error::invalid(format!("space: no minimal open for `{}`", spec.points[x]))))
        .collect()
}

impl FinTop {
    /// Build from a minimal-open basis, validating the basis and minimality.
    pub fn from_basis(points: Vec<String>, up: Vec<PointSet>) -> Result<Self> {
        if points.len() != up.len() {
            return Err(Error::Shape(format!("{} points but {} minimal opens", points.len(), up.len())));
        }
        let n = points.len();
        let up: Vec<PointSet> = up
            .into_iter()
            .map(|mut s| {
                s.grow(n);
                s
            })
            .collect();
        if up.iter().any(|s| s.len() > n) {
            return Err(Error::invalid("space: minimal open mentions an unknown point"));
        }
        let index = intern_points(&points)?;
        check_basis(&points, &up)?;
        for x in 0..n {
            for y in 0..x {
                if up[x] == up[y] {
                    return Err(Error::invalid(format!(
                        "space: not minimal, U_{} = U_{}",
                        points[y], points[x]
                    )));
                }
            }
        }
        let down = (0..n).map(|x| set_of(n, (0..n).filter(|&y| up[y].contains(x)))).collect();
        Ok(FinTop {
            points,
            index,
            up,
            down,
        })
    }

    pub fn from_spec(spec: &FinTopSpec) -> Result<Self> {
        let index = intern_points(&spec.points)?;
        let up = parse_basis(spec, &index)?;
        FinTop::from_basis(spec.points.clone(), up)
    }

    /// Validate a possibly non-minimal basis and merge points with equal
    /// minimal opens. Each class keeps the name of its first point; the
    /// returned vector maps old point indices to new ones.
    pub fn reduce(spec: &FinTopSpec) -> Result<(FinTop, Vec<usize>)> {
        let index = intern_points(&spec.points)?;
        let up = parse_basis(spec, &index)?;
        check_basis(&spec.points, &up)?;
        let n = up.len();
        let mut reps: Vec<usize> = Vec::new();
        let mut class = vec![0; n];
        for x in 0..n {
            match reps.iter().position(|&r| up[r] == up[x]) {
                Some(c) => class[x] = c,
                None => {
                    class[x] = reps.len();
                    reps.push(x);
                }
            }
        }
        let m = reps.len();
        let new_up = reps
            .iter()
            .map(|&r| set_of(m, up[r].ones().map(|y| class[y])))
            .collect();
        let names = reps.iter().map(|&r| spec.points[r].clone()).collect();
        Ok((FinTop::from_basis(names, new_up)?, class))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        FinTop::from_spec(&serde_json::from_str(text)?)
    }

    pub fn to_spec(&self) -> FinTopSpec {
        FinTopSpec {
            points: self.points.clone(),
            min_open: (0..self.len())
                .map(|x| (self.points[x].clone(), self.names_of(&self.up[x])))
                .collect(),
        }
    }

    pub fn discrete<S: AsRef<str>>(points: &[S]) -> Result<Self> {
        let n = points.len();
        FinTop::from_basis(
            points.iter().map(|p| p.as_ref().to_string()).collect(),
            (0..n).map(|x| set_of(n, [x])).collect(),
        )
    }

    /// Space of a partial order: `U_x = {y : leq(y, x)}`.
    pub fn from_order(points: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = points.len();
        let up = (0..n).map(|x| set_of(n, (0..n).filter(|&y| leq(y, x)))).collect();
        FinTop::from_basis(points, up)
    }

    /// The dual space `X*`: same points, minimal opens `V_x`.
    pub fn dual(&self) -> FinTop {
        FinTop {
            points: self.points.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_id(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::lookup("point", name))
    }

    pub fn point_set<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet> {
        let ids = names
            .iter()
            .map(|p| self.point_id(p.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(set_of(self.len(), ids))
    }

    pub fn names_of(&self, s: &PointSet) -> Vec<String> {
        s.ones().map(|i| self.points[i].clone()).collect()
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// `U_x`, the smallest open set containing `x`.
    pub fn min_open(&self, x: usize) -> &PointSet {
        &self.up[x]
    }

    /// `V_x`, the smallest closed set containing `x`.
    pub fn min_closed(&self, x: usize) -> &PointSet {
        &self.down[x]
    }

    /// `y ∈ U_x`.
    pub fn leq(&self, y: usize, x: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn is_open(&self, s: &PointSet) -> bool {
        s.ones().all(|x| self.up[x].is_subset(s))
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        s.ones().all(|x| self.down[x].is_subset(s))
    }

    pub fn is_open_names<S: AsRef<str>>(&self, names: &[S]) -> Result<bool> {
        Ok(self.is_open(&self.point_set(names)?))
    }

    pub fn open_set<S: AsRef<str>>(&self, names: &[S]) -> Result<OpenSet<'_>> {
        OpenSet::new(self, self.point_set(names)?)
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for x in s.ones() {
            out.union_with(&self.up[x]);
        }
        out
    }

    /// Open sets in a fixed deterministic order, produced lazily.
    pub fn opens_iter(&self) -> OpensIter<'_> {
        OpensIter {
            space: self,
            stack: vec![(self.empty_set(), self.empty_set(), 0)],
        }
    }

    pub fn opens(&self) -> Result<Vec<OpenSet<'_>>> {
        self.opens_capped(DEFAULT_OPENS_CAP)
    }

    /// All open sets, refusing when there are more than `cap`.
    pub fn opens_capped(&self, cap: usize) -> Result<Vec<OpenSet<'_>>> {
        let out: Vec<_> = self.opens_iter().take(cap.saturating_add(1)).collect();
        if out.len() > cap {
            return Err(Error::Capacity(format!("space has more than {cap} open sets")));
        }
        Ok(out
            .into_iter()
            .map(|members| OpenSet { space: self, members })
            .collect())
    }

    /// The Boolean tensor expansion of `Δ(U) = Σ_{U_x ⊆ U} U_x ⊗ U_x`.
    pub fn comult<'a>(&'a self, u: &OpenSet<'a>) -> Vec<(OpenSet<'a>, OpenSet<'a>)> {
        u.members
            .ones()
            .map(|x| {
                let ux = OpenSet {
                    space: self,
                    members: self.up[x].clone(),
                };
                (ux.clone(), ux)
            })
            .collect()
    }

    /// `ε(U) = 1` iff `U ≠ ∅`.
    pub fn counit(&self, u: &OpenSet<'_>) -> bool {
        !u.is_empty()
    }

    /// Pairing of a closed set with an open set: `δ_{V ∩ U}`.
    pub fn pairing(&self, closed: &PointSet, open: &PointSet) -> bool {
        !closed.is_disjoint(open)
    }

    /// Pairing of `Δ(V)` (computed in the dual space) with `U₁ ⊗ U₂`.
    pub fn pairing_comult(&self, closed: &PointSet, u1: &PointSet, u2: &PointSet) -> bool {
        closed
            .ones()
            .any(|x| self.pairing(&self.down[x], u1) && self.pairing(&self.down[x], u2))
    }
}

impl fmt::Display for FinTop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.len())
            .map(|x| format!("U_{}={{{}}}", self.points[x], self.names_of(&self.up[x]).join(",")))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Depth-first enumeration of down-sets: including `x` forces `U_x` in,
/// excluding it forces `V_x` out.
pub struct OpensIter<'a> {
    space: &'a FinTop,
    stack: Vec<(PointSet, PointSet, usize)>,
}

impl Iterator for OpensIter<'_> {
    type Item = PointSet;

    fn next(&mut self) -> Option<PointSet> {
        let n = self.space.len();
        while let Some((inc, exc, from)) = self.stack.pop() {
            let next = (from..n).find(|&i| !inc.contains(i) && !exc.contains(i));
            match next {
                None => return Some(inc),
                Some(i) => {
                    let mut out = exc.clone();
                    out.union_with(&self.space.down[i]);
                    self.stack.push((inc.clone(), out, i + 1));
                    let mut with = inc;
                    with.union_with(&self.space.up[i]);
                    self.stack.push((with, exc, i + 1));
                }
            }
        }
        None
    }
}

/// An open subset of a particular space.
#[derive(Clone, Debug)]
pub struct OpenSet<'a> {
    space: &'a FinTop,
    members: PointSet,
}

impl PartialEq for OpenSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_space(self.space, other.space)
    }
}

impl Eq for OpenSet<'_> {}

fn same_space(a: &FinTop, b: &FinTop) -> bool {
    std::ptr::eq(a, b) || a == b
}

impl<'a> OpenSet<'a> {
    pub fn new(space: &'a FinTop, mut members: PointSet) -> Result<Self> {
        if members.len() > space.len() && members.ones().any(|i| i >= space.len()) {
            return Err(Error::invalid("open set mentions an unknown point"));
        }
        members.grow(space.len());
        if !space.is_open(&members) {
            return Err(Error::invalid(format!(
                "{{{}}} is not open",
                space.names_of(&members).join(",")
            )));
        }
        Ok(OpenSet { space, members })
    }

    pub fn empty(space: &'a FinTop) -> Self {
        OpenSet {
            space,
            members: space.empty_set(),
        }
    }

    pub fn whole(space: &'a FinTop) -> Self {
        OpenSet {
            space,
            members: space.full_set(),
        }
    }

    pub fn minimal(space: &'a FinTop, x: usize) -> Self {
        OpenSet {
            space,
            members: space.up[x].clone(),
        }
    }

    pub fn space(&self) -> &'a FinTop {
        self.space
    }

    pub fn members(&self) -> &PointSet {
        &self.members
    }

    pub fn names(&self) -> Vec<String> {
        self.space.names_of(&self.members)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn is_subset(&self, other: &OpenSet<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    fn check_space(&self, other: &OpenSet<'_>) -> Result<()> {
        if same_space(self.space, other.space) {
            Ok(())
        } else {
            Err(Error::invalid("open sets belong to different spaces"))
        }
    }

    /// Product `U · V = U ∩ V`.
    pub fn meet(&self, other: &OpenSet<'_>) -> Result<OpenSet<'a>> {
        self.check_space(other)?;
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        Ok(OpenSet {
            space: self.space,
            members: m,
        })
    }

    /// Sum `U + V = U ∪ V`.
    pub fn join(&self, other: &OpenSet<'_>) -> Result<OpenSet<'a>> {
        self.check_space(other)?;
        let mut m = self.members.clone();
        m.union_with(&other.members);
        Ok(OpenSet {
            space: self.space,
            members: m,
        })
    }
}

impl fmt::Display for OpenSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(","))
    }
}

/// A join-preserving endomorphism of `U(X)`, given on irreducibles:
/// `image[x] = T(U_x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    images: Vec<PointSet>,
}

impl Endo {
    /// Unvalidated; see [`Endo::validate`].
    pub fn new(images: Vec<PointSet>) -> Self {
        Endo { images }
    }

    pub fn identity(space: &FinTop) -> Self {
        Endo::new(space.up.clone())
    }

    pub fn zero(space: &FinTop) -> Self {
        Endo::new(vec![space.empty_set(); space.len()])
    }

    pub fn from_names<S: AsRef<str>>(space: &FinTop, images: &BTreeMap<String, Vec<S>>) -> Result<Self> {
        let mut out = vec![None; space.len()];
        for (x, img) in images {
            out[space.point_id(x)?] = Some(space.point_set(img)?);
        }
        let images = out
            .into_iter()
            .enumerate()
            .map(|(x, s)| s.ok_or_else(|| Error::invalid(format!("endomorphism undefined on `{}`", space.points[x]))))
            .collect::<Result<_>>()?;
        Ok(Endo::new(images))
    }

    pub fn to_names(&self, space: &FinTop) -> BTreeMap<String, Vec<String>> {
        self.images
            .iter()
            .enumerate()
            .map(|(x, s)| (space.points[x].clone(), space.names_of(s)))
            .collect()
    }

    pub fn image(&self, x: usize) -> &PointSet {
        &self.images[x]
    }

    /// Images must be open and `y ∈ U_x ⇒ T(U_y) ⊆ T(U_x)`.
    pub fn validate(&self, space: &FinTop) -> Result<()> {
        if self.images.len() != space.len() {
            return Err(Error::invalid(format!(
                "endomorphism has {} images for {} points",
                self.images.len(),
                space.len()
            )));
        }
        for (x, img) in self.images.iter().enumerate() {
            if img.len() > space.len() && img.ones().any(|i| i >= space.len()) {
                return Err(Error::invalid("endomorphism image mentions an unknown point"));
            }
            if !space.is_open(img) {
                return Err(Error::invalid(format!(
                    "endomorphism: T(U_{}) = {{{}}} is not open",
                    space.points[x],
                    space.names_of(img).join(",")
                )));
            }
            for y in space.up[x].ones() {
                if !self.images[y].is_subset(img) {
                    return Err(Error::invalid(format!(
                        "endomorphism not monotone: {} ∈ U_{} but T(U_{}) ⊄ T(U_{})",
                        space.points[y], space.points[x], space.points[y], space.points[x]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, space: &FinTop) -> bool {
        self.validate(space).is_ok()
    }

    /// `T(U) = ⋃_{x ∈ U} T(U_x)`.
    pub fn apply(&self, u: &PointSet) -> PointSet {
        let mut out = PointSet::with_capacity(self.images.len());
        for x in u.ones() {
            out.union_with(&self.images[x]);
        }
        out
    }

    /// `x ↦ other(self(U_x))`: first `self`, then `other`.
    pub fn then(&self, other: &Endo) -> Endo {
        Endo::new(self.images.iter().map(|s| other.apply(s)).collect())
    }

    pub fn pow(&self, space: &FinTop, n: usize) -> Endo {
        (0..n).fold(Endo::identity(space), |acc, _| acc.then(self))
    }

    /// `tr(T) = 1` iff `x ∈ T(U_x)` for some `x`.
    pub fn trace(&self) -> bool {
        self.images.iter().enumerate().any(|(x, s)| s.contains(x))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TAutomatonSpec {
    pub points: Vec<String>,
    pub min_open: BTreeMap<String, Vec<String>>,
    pub initial_open: Vec<String>,
    pub accepting_closed: Vec<String>,
    pub letters: BTreeMap<String, BTreeMap<String, Vec<String>>>,
}

/// `(X, X_in, X_t, {m_a})`: an automaton whose state module is `U(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TAutomaton {
    space: FinTop,
    alphabet: Vec<String>,
    initial: PointSet,
    accepting: PointSet,
    letters: Vec<Endo>,
}

impl TAutomaton {
    pub fn new(
        space: FinTop,
        alphabet: Vec<String>,
        initial: PointSet,
        accepting: PointSet,
        letters: Vec<Endo>,
    ) -> Result<Self> {
        let n = space.len();
        let fit = |mut s: PointSet, what: &str| -> Result<PointSet> {
            if s.len() > n && s.ones().any(|i| i >= n) {
                return Err(Error::invalid(format!("{what} mentions an unknown point")));
            }
            s.grow(n);
            Ok(s)
        };
        let initial = fit(initial, "initial set")?;
        let accepting = fit(accepting, "accepting set")?;
        if !space.is_open(&initial) {
            return Err(Error::invalid("initial set is not open"));
        }
        if !space.is_closed(&accepting) {
            return Err(Error::invalid("accepting set is not closed"));
        }
        if alphabet.len() != letters.len() {
            return Err(Error::Shape(format!(
                "{} letters but {} endomorphisms",
                alphabet.len(),
                letters.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for a in &alphabet {
            if !seen.insert(a) {
                return Err(Error::invalid(format!("duplicate letter `{a}`")));
            }
        }
        for (a, m) in alphabet.iter().zip(&letters) {
            m.validate(&space)
                .map_err(|e| Error::invalid(format!("letter `{a}`: {e}")))?;
        }
        let letters = letters
            .into_iter()
            .map(|e| Endo::new(e.images.into_iter().map(|mut s| {
                s.grow(n);
                s
            }).collect()))
            .collect();
        Ok(TAutomaton {
            space,
            alphabet,
            initial,
            accepting,
            letters,
        })
    }

    pub fn from_spec(spec: &TAutomatonSpec) -> Result<Self> {
        let space = FinTop::from_spec(&FinTopSpec {
            points: spec.points.clone(),
            min_open: spec.min_open.clone(),
        })?;
        let initial = space.point_set(&spec.initial_open)?;
        let accepting = space.point_set(&spec.accepting_closed)?;
        let mut alphabet = Vec::new();
        let mut letters = Vec::new();
        for (a, images) in &spec.letters {
            alphabet.push(a.clone());
            letters.push(Endo::from_names(&space, images)?);
        }
        TAutomaton::new(space, alphabet, initial, accepting, letters)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        TAutomaton::from_spec(&serde_json::from_str(text)?)
    }

    pub fn to_spec(&self) -> TAutomatonSpec {
        let top = self.space.to_spec();
        TAutomatonSpec {
            points: top.points,
            min_open: top.min_open,
            initial_open: self.space.names_of(&self.initial),
            accepting_closed: self.space.names_of(&self.accepting),
            letters: self
                .alphabet
                .iter()
                .zip(&self.letters)
                .map(|(a, m)| (a.clone(), m.to_names(&self.space)))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("T-automaton serializes")
    }

    /// The discrete-space T-automaton of an NFA: `U_q = {q}`, `m_a({q}) = δ(q, a)`.
    pub fn discrete_from_nfa(nfa: &Nfa) -> Result<Self> {
        let space = FinTop::discrete(nfa.states())?;
        let n = space.len();
        let letters = (0..nfa.alphabet().len())
            .map(|a| Endo::new((0..n).map(|q| set_of(n, nfa.successors(q, a))).collect()))
            .collect();
        TAutomaton::new(
            space,
            nfa.alphabet().to_vec(),
            set_of(n, nfa.initial().iter().copied()),
            set_of(n, nfa.accepting().iter().copied()),
            letters,
        )
    }

    pub fn space(&self) -> &FinTop {
        &self.space
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    /// `X_in`.
    pub fn initial(&self) -> &PointSet {
        &self.initial
    }

    /// `X_t`.
    pub fn accepting(&self) -> &PointSet {
        &self.accepting
    }

    pub fn with_decorations(&self, initial: PointSet, accepting: PointSet) -> Result<Self> {
        TAutomaton::new(
            self.space.clone(),
            self.alphabet.clone(),
            initial,
            accepting,
            self.letters.clone(),
        )
    }

    pub fn letter_id(&self, a: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|l| l == a)
            .ok_or_else(|| Error::lookup("letter", a))
    }

    pub fn letter(&self, a: &str) -> Result<&Endo> {
        Ok(&self.letters[self.letter_id(a)?])
    }

    /// `m_w`, applying the letters of `w` in reading order.
    pub fn word_endo(&self, w: &Word) -> Result<Endo> {
        let mut acc = Endo::identity(&self.space);
        for l in w.letters() {
            acc = acc.then(self.letter(l)?);
        }
        Ok(acc)
    }

    /// 1 iff `X_t ∩ m_w(X_in) ≠ ∅`.
    pub fn interval_eval(&self, w: &Word) -> Result<bool> {
        let mut s = self.initial.clone();
        for l in w.letters() {
            s = self.letter(l)?.apply(&s);
        }
        Ok(!s.is_disjoint(&self.accepting))
    }

    /// 1 iff `x ∈ m_w(U_x)` for some `x`.
    pub fn trace_eval(&self, w: &Word) -> Result<bool> {
        Ok(self.word_endo(w)?.trace())
    }
}

/// Interval membership for a T-automaton.
pub fn t_interval_eval(t: &TAutomaton, w: &Word) -> Result<bool> {
    t.interval_eval(w)
}

/// Trace membership for a T-automaton.
pub fn t_trace_eval(t: &TAutomaton, w: &Word) -> Result<bool> {
    t.trace_eval(w)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every minimal space on `n` points up to homeomorphism, as partial orders.
/// Points are named `p0, p1, …`. Intended for `n ≤ 5`.
pub fn minimal_spaces(n: usize) -> Vec<FinTop> {
    assert!(n <= 5, "minimal space enumeration is limited to 5 points");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let bit = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let rel = |i: usize, j: usize| i == j || mask >> bit(i, j) & 1 == 1;
        let antisymmetric = pairs.iter().all(|&(i, j)| !(rel(i, j) && rel(j, i)));
        if !antisymmetric {
            continue;
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k)))
        });
        if !transitive {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(i, j))| rel(i, j))
                    .fold(0u32, |acc, (_, &(i, j))| acc | 1 << bit(p[i], p[j]))
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let names = (0..n).map(|i| format!("p{i}")).collect();
            out.push(FinTop::from_order(names, rel).expect("partial orders are minimal spaces"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> FinTop {
        FinTop::from_spec(&FinTopSpec {
            points: vec!["x".into(), "y".into()],
            min_open: [("x".into(), vec!["x".into()]), ("y".into(), vec!["x".into(), "y".into()])]
                .into_iter()
                .collect(),
        })
        .unwrap()
    }

    fn names(v: &[OpenSet<'_>]) -> Vec<Vec<String>> {
        let mut out: Vec<_> = v.iter().map(|u| u.names()).collect();
        out.sort();
        out
    }

    #[test]
    fn discrete_opens_are_all_subsets() {
        let d = FinTop::discrete(&["x", "y"]).unwrap();
        assert_eq!(d.opens().unwrap().len(), 4);
        assert_eq!(d.dual(), d);
    }

    #[test]
    fn sierpinski_opens() {
        let s = s2();
        assert_eq!(
            names(&s.opens().unwrap()),
            vec![vec![], vec!["x".to_string()], vec!["x".to_string(), "y".to_string()]]
        );
        assert!(!s.is_open_names(&["y"]).unwrap());
        assert!(s.is_open_names(&["x"]).unwrap());
        assert!(s.is_open_names(&["nope"]).is_err());
        assert!(matches!(s.opens_capped(2), Err(Error::Capacity(_))));
    }

    #[test]
    fn sierpinski_dual() {
        let s = s2();
        let x = s.point_id("x").unwrap();
        let y = s.point_id("y").unwrap();
        assert_eq!(s.names_of(s.min_closed(x)), vec!["x", "y"]);
        assert_eq!(s.names_of(s.min_closed(y)), vec!["y"]);
        let d = s.dual();
        assert_eq!(d.min_open(x), s.min_closed(x));
        assert_eq!(d.dual(), s);
    }

    #[test]
    fn invalid_spaces_rejected() {
        let bad_basis = FinTopSpec {
            points: vec!["x".into(), "y".into()],
            min_open: [("x".into(), vec!["y".into()]), ("y".into(), vec!["y".into()])]
                .into_iter()
                .collect(),
        };
        assert!(matches!(FinTop::from_spec(&bad_basis), Err(Error::Invalid(_))));
        let not_closed = FinTopSpec {
            points: vec!["x".into(), "y".into(), "z".into()],
            min_open: [
                ("x".into(), vec!["x".into(), "y".into()]),
                ("y".into(), vec!["y".into(), "z".into()]),
                ("z".into(), vec!["z".into()]),
            ]
            .into_iter()
            .collect(),
        };
        assert!(FinTop::from_spec(&not_closed).is_err());
        let missing = FinTopSpec {
            points: vec!["x".into()],
            min_open: BTreeMap::new(),
        };
        assert!(FinTop::from_spec(&missing).is_err());
    }

    #[test]
    fn reduce_merges_indistinguishable_points() {
        let spec = FinTopSpec {
            points: vec!["x".into(), "y".into(), "z".into()],
            min_open: [
                ("x".into(), vec!["x".into(), "y".into()]),
                ("y".into(), vec!["x".into(), "y".into()]),
                ("z".into(), vec!["x".into(), "y".into(), "z".into()]),
            ]
            .into_iter()
            .collect(),
        };
        assert!(FinTop::from_spec(&spec).is_err());
        let (r, class) = FinTop::reduce(&spec).unwrap();
        assert_eq!(r.points(), &["x".to_string(), "z".to_string()]);
        assert_eq!(class, vec![0, 0, 1]);
        assert_eq!(r.names_of(r.min_open(0)), vec!["x"]);
        assert_eq!(r.names_of(r.min_open(1)), vec!["x", "z"]);
    }

    #[test]
    fn meet_and_join() {
        let s = s2();
        let x = s.open_set(&["x"]).unwrap();
        let all = OpenSet::whole(&s);
        assert_eq!(x.meet(&all).unwrap(), x);
        assert_eq!(x.join(&all).unwrap(), all);
        assert!(s.open_set(&["y"]).is_err());
        let other = FinTop::discrete(&["a"]).unwrap();
        assert!(x.meet(&OpenSet::whole(&other)).is_err());
    }

    #[test]
    fn comultiplication_and_counit() {
        let s = s2();
        assert!(s.comult(&OpenSet::empty(&s)).is_empty());
        let d = s.comult(&OpenSet::whole(&s));
        let got: Vec<(Vec<String>, Vec<String>)> = d.iter().map(|(a, b)| (a.names(), b.names())).collect();
        assert_eq!(
            got,
            vec![
                (vec!["x".to_string()], vec!["x".to_string()]),
                (vec!["x".to_string(), "y".to_string()], vec!["x".to_string(), "y".to_string()])
            ]
        );
        assert!(!s.counit(&OpenSet::empty(&s)));
        assert!(s.counit(&OpenSet::whole(&s)));
    }

    #[test]
    fn endo_traces() {
        let s = s2();
        assert!(Endo::identity(&s).trace());
        assert!(!Endo::zero(&s).trace());
        let full = Endo::new(vec![s.full_set(), s.full_set()]);
        assert!(full.is_valid(&s));
        assert!(full.trace());
        // T(U_x) = {x, y} but T(U_y) = {x} breaks monotonicity
        let bad = Endo::new(vec![s.full_set(), s.point_set(&["x"]).unwrap()]);
        let err = bad.validate(&s).unwrap_err().to_string();
        assert!(err.contains("not monotone"), "{err}");
    }

    #[test]
    fn minimal_space_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| minimal_spaces(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
    }

    #[test]
    fn tautomaton_json_roundtrip() {
        let text = r#"{
            "points": ["x", "y"],
            "min_open": {"x": ["x"], "y": ["x", "y"]},
            "initial_open": ["x"],
            "accepting_closed": ["y"],
            "letters": {"a": {"x": ["x", "y"], "y": ["x", "y"]}}
        }"#;
        let t = TAutomaton::from_json(text).unwrap();
        assert_eq!(TAutomaton::from_json(&t.to_json()).unwrap(), t);
        assert!(!t.interval_eval(&Word::empty()).unwrap());
        assert!(t.interval_eval(&Word::parse("a")).unwrap());
        assert!(t.trace_eval(&Word::parse("aa")).unwrap());
        let not_closed = text.replace(r#""accepting_closed": ["y"]"#, r#""accepting_closed": ["x"]"#);
        assert!(TAutomaton::from_json(&not_closed).is_err());
        let partial = text.replace(r#", "y": ["x", "y"]}}"#, "}}");
        assert!(TAutomaton::from_json(&partial).is_err());
        let extra = text.replacen('{', r#"{"extra": 1,"#, 1);
        assert!(TAutomaton::from_json(&extra).is_err());
    }
}
