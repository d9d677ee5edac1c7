//! Boolean one-dimensional TQFTs with defects.

pub mod automaton;
pub mod cobordism;
pub mod covers;
pub mod error;
pub mod oracle;
pub mod sample;
pub mod semiring;
pub mod topology;
pub mod tqft;
pub mod word;

pub use automaton::{flower_automaton, Nfa, NfaSpec, TransitionSpec};
pub use cobordism::{Diagram, Gen, Sign, SignSeq};
pub use covers::{cyclic_cover, is_covering, is_weak_covering, voltage_cover, Cover, GraphMap, Permutation};
pub use error::{Error, Result};
pub use oracle::{chain_map_sum, circle_map_sum, regex_match, Regex};
pub use semiring::{BoolMat, Matrix, Semiring};
pub use topology::{minimal_spaces, Endo, FinTop, OpenSet, PointSet, TAutomaton};
pub use tqft::{eval_circle, eval_interval, eval_nfa, eval_tautomaton, Evaluation, Model, NfaModel, TModel};
pub use word::{all_words, CircularWord, Word};
