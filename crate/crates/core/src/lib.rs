//! Computational toolkit for finitely generated subgroups of free groups.
//!
//! * [`word`]: reduced words, parsing, exponent sums.
//! * [`stallings`]: core graphs, folding, bases, pullbacks, coset actions.
//! * [`abelian`]: visibility, the transfer map and its chain-level inverse.
//! * [`constructions`]: `Γ_m`, `H_m`, `L_m`, `w_k` in `F_2`.
//! * [`retracts`]: retract intersections and the randomized suites.

pub mod abelian;
pub mod constructions;
pub mod error;
pub mod perm;
pub mod retracts;
pub mod stallings;
pub mod word;

pub use abelian::{AbelianVector, BasisTag, ChainVector, IntMatrix};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use stallings::{BasisWord, CoreGraph, Edge, SpanningTree};
pub use word::{IntVector, Word};
