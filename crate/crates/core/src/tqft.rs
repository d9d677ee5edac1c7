//! Evaluation of diagrams: the symmetric monoidal functor of an automaton.
//!
//! Conventions used everywhere in this module:
//!
//! * matrices act on column vectors, so an image of `A → B` has shape
//!   `dim B × dim A` and `compose(d1, d2)` evaluates to `eval(d2) · eval(d1)`;
//! * each wire carries the ambient free module `S^X` (`X` the states of an
//!   NFA or the points of a space), and the wires of a boundary are tensored
//!   left to right with the Kronecker order of [`Matrix::kron`];
//! * a T-automaton's module `U(X)` is the image of the idempotent
//!   `E₊[y][x] = [y ∈ U_x]` on `+` wires and `E₋ = E₊ᵀ` on `−` wires. Every
//!   generator image `G` satisfies `E_out · G · E_in = G`, and a diagram with
//!   domain `D` starts from `E_D`, so identity wires need no work.

use std::collections::HashMap;

use crate::automaton::Nfa;
use crate::cobordism::{Diagram, Gen, Sign};
use crate::error::{Error, Result};
use crate::semiring::{BoolMat, Matrix, Semiring};
use crate::topology::TAutomaton;
use crate::word::Word;

/// Refuse evaluations whose running matrix would exceed this many entries.
pub const MAX_ENTRIES: usize = 1 << 20;

/// Images of generators in the ambient free modules.
pub trait Model<S: Semiring> {
    /// Rank of the ambient free module on one wire.
    fn dim(&self) -> usize;

    /// The idempotent on a wire of the given sign.
    fn projector(&self, sign: Sign) -> Matrix<S>;

    /// Matrix of a generator, `dim^outputs × dim^inputs`.
    fn image(&self, gen: &Gen) -> Result<Matrix<S>>;
}

/// The free-module functor of an NFA over any semiring.
#[derive(Clone, Copy, Debug)]
pub struct NfaModel<'a> {
    nfa: &'a Nfa,
}

impl<'a> NfaModel<'a> {
    pub fn new(nfa: &'a Nfa) -> Self {
        NfaModel { nfa }
    }
}

fn cup_vector<S: Semiring>(n: usize, rel: impl Fn(usize, usize) -> bool) -> Matrix<S> {
    Matrix::column((0..n * n).map(|k| S::from_bool(rel(k / n, k % n))).collect())
}

fn swap_matrix<S: Semiring>(n: usize) -> Matrix<S> {
    Matrix::from_fn(n * n, n * n, |r, c| S::from_bool(r / n == c % n && r % n == c / n))
}

fn indicator<S: Semiring>(n: usize, f: impl Fn(usize) -> bool) -> Vec<S> {
    (0..n).map(|i| S::from_bool(f(i))).collect()
}

impl<S: Semiring> Model<S> for NfaModel<'_> {
    fn dim(&self) -> usize {
        self.nfa.num_states()
    }

    fn projector(&self, _sign: Sign) -> Matrix<S> {
        Matrix::identity(self.nfa.num_states())
    }

    fn image(&self, gen: &Gen) -> Result<Matrix<S>> {
        let n = self.nfa.num_states();
        let a = self.nfa;
        let state = |label: &String| a.state_id(label);
        Ok(match gen {
            Gen::Id { .. } => Matrix::identity(n),
            Gen::Dot { letter, sign } => {
                let m = a.letter_matrix(letter)?.lift::<S>();
                match sign {
                    Sign::Plus => m.transpose(),
                    Sign::Minus => m,
                }
            }
            Gen::Cup { .. } => cup_vector(n, |i, j| i == j),
            Gen::Cap { .. } => cup_vector(n, |i, j| i == j).transpose(),
            Gen::Swap { .. } => swap_matrix(n),
            Gen::Birth { sign, label: None } => Matrix::column(match sign {
                Sign::Plus => indicator(n, |q| a.initial().contains(&q)),
                Sign::Minus => indicator(n, |q| a.accepting().contains(&q)),
            }),
            Gen::Death { sign, label: None } => Matrix::row(match sign {
                Sign::Plus => indicator(n, |q| a.accepting().contains(&q)),
                Sign::Minus => indicator(n, |q| a.initial().contains(&q)),
            }),
            Gen::Birth { label: Some(l), .. } => {
                let q = state(l)?;
                Matrix::column(indicator(n, |r| r == q))
            }
            Gen::Death { label: Some(l), .. } => {
                let q = state(l)?;
                Matrix::row(indicator(n, |r| r == q))
            }
            Gen::Merge | Gen::Split | Gen::Unit | Gen::Counit => {
                return Err(Error::Unsupported(format!(
                    "foam vertex `{gen}` needs a T-automaton; convert the automaton to a discrete space first"
                )))
            }
        })
    }
}

/// The functor of a T-automaton, evaluated in ambient modules `𝔹^X`.
#[derive(Clone, Copy, Debug)]
pub struct TModel<'a> {
    t: &'a TAutomaton,
}

impl<'a> TModel<'a> {
    pub fn new(t: &'a TAutomaton) -> Self {
        TModel { t }
    }
}

impl Model<bool> for TModel<'_> {
    fn dim(&self) -> usize {
        self.t.space().len()
    }

    fn projector(&self, sign: Sign) -> BoolMat {
        let x = self.t.space();
        let n = x.len();
        let e = BoolMat::from_fn(n, n, |y, z| x.leq(y, z));
        match sign {
            Sign::Plus => e,
            Sign::Minus => e.transpose(),
        }
    }

    fn image(&self, gen: &Gen) -> Result<BoolMat> {
        let t = self.t;
        let x = t.space();
        let n = x.len();
        // `leq(y, z)` is `y ∈ U_z`
        let leq = |y: usize, z: usize| x.leq(y, z);
        let point = |l: &String| x.point_id(l);
        Ok(match gen {
            Gen::Id { sign } => self.projector(*sign),
            Gen::Dot { letter, sign } => {
                let m = t.letter(letter)?;
                let plus = BoolMat::from_fn(n, n, |y, z| m.image(z).contains(y));
                match sign {
                    Sign::Plus => plus,
                    Sign::Minus => plus.transpose(),
                }
            }
            // coev = Σ_x U_x ⊗ V_x (and its mirror): `u ≤ x ≤ v` for some x
            Gen::Cup { sign: Sign::Plus } => cup_vector(n, leq),
            Gen::Cup { sign: Sign::Minus } => cup_vector(n, |v, u| leq(u, v)),
            // ev(V ⊗ U) = [V ∩ U ≠ ∅]
            Gen::Cap { sign: Sign::Minus } => cup_vector(n, leq).transpose(),
            Gen::Cap { sign: Sign::Plus } => cup_vector(n, |u, v| leq(v, u)).transpose(),
            Gen::Swap { left, right } => {
                swap_matrix(n).mul(&self.projector(*left).kron(&self.projector(*right)))?
            }
            Gen::Birth { sign, label: None } => Matrix::column(match sign {
                Sign::Plus => indicator(n, |y| t.initial().contains(y)),
                Sign::Minus => indicator(n, |y| t.accepting().contains(y)),
            }),
            // X_t is closed, so [X_t ∩ U_z ≠ ∅] = [z ∈ X_t]; dually for X_in
            Gen::Death { sign, label: None } => Matrix::row(match sign {
                Sign::Plus => indicator(n, |z| t.accepting().contains(z)),
                Sign::Minus => indicator(n, |z| t.initial().contains(z)),
            }),
            Gen::Birth { sign, label: Some(l) } => {
                let p = point(l)?;
                Matrix::column(match sign {
                    Sign::Plus => indicator(n, |y| leq(y, p)),
                    Sign::Minus => indicator(n, |y| leq(p, y)),
                })
            }
            Gen::Death { sign, label: Some(l) } => {
                let p = point(l)?;
                Matrix::row(match sign {
                    Sign::Plus => indicator(n, |z| leq(p, z)),
                    Sign::Minus => indicator(n, |v| leq(v, p)),
                })
            }
            Gen::Merge => BoolMat::from_fn(n, n * n, |o, c| leq(o, c / n) && leq(o, c % n)),
            Gen::Split => BoolMat::from_fn(n * n, n, |r, c| {
                (0..n).any(|z| leq(z, c) && leq(r / n, z) && leq(r % n, z))
            }),
            Gen::Unit => BoolMat::column(vec![true; n]),
            Gen::Counit => BoolMat::row(vec![true; n]),
        })
    }
}

/// The value of a diagram: a matrix from the ambient module of the domain to
/// that of the codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation<S: Semiring> {
    pub matrix: Matrix<S>,
    pub domain_dims: Vec<usize>,
    pub codomain_dims: Vec<usize>,
}

impl<S: Semiring> Evaluation<S> {
    /// The single entry of a closed diagram's value.
    pub fn scalar(&self) -> Option<S> {
        if self.domain_dims.is_empty() && self.codomain_dims.is_empty() {
            self.matrix.as_scalar()
        } else {
            None
        }
    }
}

fn checked_pow(d: usize, k: usize) -> Option<usize> {
    d.checked_pow(u32::try_from(k).ok()?)
}

fn too_big(rows: Option<usize>, cols: usize) -> Error {
    Error::Capacity(format!(
        "evaluation needs a matrix with {} x {cols} entries (limit {MAX_ENTRIES})",
        rows.map_or_else(|| "too many".to_string(), |r| r.to_string())
    ))
}

fn guard(rows: Option<usize>, cols: usize) -> Result<usize> {
    match rows {
        Some(r) if r.checked_mul(cols).is_some_and(|e| e <= MAX_ENTRIES) => Ok(r),
        _ => Err(too_big(rows, cols)),
    }
}

/// Kronecker power of per-wire projectors.
fn boundary_projector<S: Semiring, M: Model<S> + ?Sized>(model: &M, signs: &[Sign]) -> Matrix<S> {
    signs
        .iter()
        .fold(Matrix::scalar(S::ONE), |acc, &s| acc.kron(&model.projector(s)))
}

/// Replace wires `offset .. offset + k` of `r`'s row index by `g`'s output.
/// `r` has rows indexed by `(prefix, block, suffix)`.
fn apply_local<S: Semiring>(r: Matrix<S>, g: &Matrix<S>, prefix: usize, suffix: usize) -> Matrix<S> {
    let (rows, cols, data) = r.into_parts();
    let (outs, ins) = g.shape();
    debug_assert_eq!(rows, prefix * ins * suffix);
    let block = suffix * cols;
    let mut out = vec![S::ZERO; prefix * outs * block];
    for p in 0..prefix {
        let src = &data[p * ins * block..(p + 1) * ins * block];
        let dst = &mut out[p * outs * block..(p + 1) * outs * block];
        for o in 0..outs {
            let dst_row = &mut dst[o * block..(o + 1) * block];
            for i in 0..ins {
                let gi = g.get(o, i);
                if gi.is_zero() {
                    continue;
                }
                let src_row = &src[i * block..(i + 1) * block];
                for (d, &s) in dst_row.iter_mut().zip(src_row) {
                    *d = S::add(*d, S::mul(gi, s));
                }
            }
        }
    }
    Matrix::from_parts(prefix * outs * suffix, cols, out)
}

/// Evaluate a diagram under a model by applying each generator locally.
pub fn evaluate<S: Semiring, M: Model<S> + ?Sized>(model: &M, d: &Diagram) -> Result<Evaluation<S>> {
    let dim = model.dim();
    let dom = d.domain().signs();
    let cols = guard(checked_pow(dim, dom.len()), 1)?;
    guard(Some(cols), cols)?;
    let mut r = boundary_projector(model, dom);
    let mut cache: HashMap<&Gen, Matrix<S>> = HashMap::new();
    let mut width = dom.len();
    for slice in d.slices() {
        let mut offset = 0;
        for gen in slice {
            let k = gen.inputs().len();
            let l = gen.outputs().len();
            if gen.is_identity() {
                offset += 1;
                continue;
            }
            if !cache.contains_key(gen) {
                cache.insert(gen, model.image(gen)?);
            }
            let g = &cache[gen];
            let prefix = checked_pow(dim, offset).ok_or_else(|| too_big(None, cols))?;
            let suffix = checked_pow(dim, width - offset - k).ok_or_else(|| too_big(None, cols))?;
            let rows = prefix
                .checked_mul(g.rows())
                .and_then(|x| x.checked_mul(suffix));
            guard(rows, cols)?;
            r = apply_local(r, g, prefix, suffix);
            offset += l;
            width = width + l - k;
        }
    }
    Ok(Evaluation {
        matrix: r,
        domain_dims: vec![dim; d.domain().len()],
        codomain_dims: vec![dim; d.codomain().len()],
    })
}

/// Reference evaluator: each slice becomes the Kronecker product of its
/// generator images (identities as projectors), and slices are multiplied.
/// Much slower than [`evaluate`]; used to cross-check it.
pub fn evaluate_by_slices<S: Semiring, M: Model<S> + ?Sized>(model: &M, d: &Diagram) -> Result<Matrix<S>> {
    let mut acc = boundary_projector(model, d.domain().signs());
    for slice in d.slices() {
        let mut m = Matrix::scalar(S::ONE);
        for gen in slice {
            m = m.kron(&model.image(gen)?);
            if m.rows().saturating_mul(m.cols()) > MAX_ENTRIES {
                return Err(too_big(Some(m.rows()), m.cols()));
            }
        }
        acc = m.mul(&acc)?;
    }
    Ok(acc)
}

pub fn eval_nfa<S: Semiring>(nfa: &Nfa, d: &Diagram) -> Result<Evaluation<S>> {
    evaluate(&NfaModel::new(nfa), d)
}

pub fn eval_tautomaton(t: &TAutomaton, d: &Diagram) -> Result<Evaluation<bool>> {
    evaluate(&TModel::new(t), d)
}

fn closed_value<S: Semiring>(e: Evaluation<S>) -> S {
    e.scalar().expect("closed diagram evaluates to a scalar")
}

/// Interval membership through the diagram `birth+ ; dot(a1)+ ; … ; death+`.
pub fn eval_interval(nfa: &Nfa, w: &Word) -> Result<bool> {
    Ok(closed_value(eval_nfa(nfa, &crate::cobordism::shapes::interval(w))?))
}

/// Trace membership through the decorated circle.
pub fn eval_circle(nfa: &Nfa, w: &Word) -> Result<bool> {
    Ok(closed_value(eval_nfa(nfa, &crate::cobordism::shapes::circle(w))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobordism::shapes;
    use crate::cobordism::Sign::{Minus, Plus};
    use crate::cobordism::SignSeq;
    use crate::topology::{minimal_spaces, Endo};
    use crate::word::all_words;

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

    fn closed<S: Semiring>(nfa: &Nfa, text: &str) -> S {
        eval_nfa::<S>(nfa, &Diagram::parse(text).unwrap()).unwrap().scalar().unwrap()
    }

    #[test]
    fn documented_nfa_examples() {
        let a = a2();
        assert!(closed::<bool>(&a, "birth+ ; dot(a)+ ; death+"));
        assert!(!closed::<bool>(&a, "cup+ ; dot(a)+ id- ; cap+"));
        assert_eq!(closed::<u64>(&a, "cup+ ; cap+"), 2);
        assert_eq!(closed::<u64>(&a, "cup- ; cap-"), 2);
        assert!(!closed::<bool>(&a, "birth+ ; death+"));
        assert!(eval_interval(&a, &Word::parse("a")).unwrap());
        assert!(eval_circle(&a, &Word::parse("aba")).unwrap());
    }

    #[test]
    fn wrappers_agree_with_matrix_evaluation() {
        let a = a2();
        for w in all_words(a.alphabet(), 6) {
            assert_eq!(eval_interval(&a, &w).unwrap(), a.interval_eval(&w).unwrap(), "{w}");
            assert_eq!(eval_circle(&a, &w).unwrap(), a.trace_eval(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn foam_vertices_unsupported_for_nfa() {
        let err = eval_nfa::<bool>(&a2(), &Diagram::parse("unit ; counit").unwrap()).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn unknown_letter_and_label() {
        let a = a2();
        assert!(matches!(
            eval_nfa::<bool>(&a, &Diagram::parse("birth+ ; dot(z)+ ; death+").unwrap()),
            Err(Error::Lookup { .. })
        ));
        assert!(matches!(
            eval_nfa::<bool>(&a, &Diagram::parse("birth+(q9) ; death+").unwrap()),
            Err(Error::Lookup { .. })
        ));
    }

    #[test]
    fn path_counting_over_naturals() {
        let a = a2();
        // a b^k a ... : paths q1 -a-> q2 -b-> q2 -a-> q1 on "aba" from q1 to q1
        assert_eq!(closed::<u64>(&a, "birth+(q1) ; dot(a)+ ; dot(b)+ ; dot(a)+ ; death+(q1)"), 1);
        assert_eq!(closed::<u64>(&a, "cup+ ; dot(a)+ id- ; dot(a)+ id- ; cap+"), 2);
    }

    #[test]
    fn size_guard() {
        let states: Vec<String> = (0..40).map(|i| format!("s{i}")).collect();
        let big = Nfa::new(&states, &["a".to_string()], &[], &[], &[]).unwrap();
        let wide = Diagram::parse("cup+ cup+ ; cap+ cap+").unwrap();
        assert!(matches!(eval_nfa::<bool>(&big, &wide), Err(Error::Capacity(_))));
        assert!(eval_nfa::<bool>(&big, &Diagram::parse("cup+ ; cap+").unwrap()).is_ok());
    }

    #[test]
    fn zigzags_are_projectors() {
        for x in (1..=3).flat_map(minimal_spaces) {
            let n = x.len();
            let t = TAutomaton::new(x.clone(), vec![], x.empty_set(), x.empty_set(), vec![]).unwrap();
            let m = TModel::new(&t);
            for s in [Plus, Minus] {
                for z in shapes::zigzags(s) {
                    let e = eval_tautomaton(&t, &z).unwrap().matrix;
                    assert_eq!(e, m.projector(s), "{x} {s} {z}");
                }
            }
            let id = eval_tautomaton(&t, &Diagram::identity(SignSeq(vec![Plus]))).unwrap();
            assert_eq!(id.matrix, m.projector(Plus));
            assert_eq!(id.matrix.shape(), (n, n));
        }
    }

    #[test]
    fn images_are_balanced() {
        for x in (1..=3).flat_map(minimal_spaces) {
            let full = x.full_set();
            let t = TAutomaton::new(
                x.clone(),
                vec!["a".into()],
                x.open_hull(&x.empty_set()),
                full.clone(),
                vec![Endo::new(vec![full.clone(); x.len()])],
            )
            .unwrap();
            let m = TModel::new(&t);
            let labels: Vec<String> = x.points().to_vec();
            let mut gens = vec![
                Gen::dot("a", Plus),
                Gen::dot("a", Minus),
                Gen::Merge,
                Gen::Split,
                Gen::Unit,
                Gen::Counit,
                Gen::birth(Plus),
                Gen::death(Minus),
            ];
            for s in [Plus, Minus] {
                gens.extend([Gen::cup(s), Gen::cap(s), Gen::id(s)]);
                gens.extend(labels.iter().flat_map(|l| [Gen::birth_at(s, l), Gen::death_at(s, l)]));
                for r in [Plus, Minus] {
                    gens.push(Gen::swap(s, r));
                }
            }
            for g in &gens {
                let img = m.image(g).unwrap();
                let out = boundary_projector(&m, &g.outputs());
                let inp = boundary_projector(&m, &g.inputs());
                assert_eq!(out.mul(&img).unwrap().mul(&inp).unwrap(), img, "{g} on {x}");
            }
        }
    }

    #[test]
    fn local_evaluation_matches_slice_products() {
        let a = a2();
        let d = Diagram::parse("id+ cup- ; swap(+-) id+ ; dot(a)- dot(b)+ id+ ; id- swap(++) ; cap- id+").unwrap();
        let fast = eval_nfa::<u64>(&a, &d).unwrap().matrix;
        let slow = evaluate_by_slices(&NfaModel::new(&a), &d).unwrap();
        assert_eq!(fast, slow);
    }
}
