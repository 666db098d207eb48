//! Finite-dimensional algebras by structure constants, their standard
//! constructions (path algebras, matrix algebras, skew group algebras),
//! group actions, radicals, idempotents and Gabriel quivers.

mod action;
mod algebra;
mod constructions;
mod gabriel;
mod idempotents;
mod quiver;
mod radical;

pub use crate::exactlin::SubspaceBasis;
pub use action::{AlgebraAutomorphism, GroupAction};
pub use algebra::{Algebra, Origin, Terms};
pub use constructions::{matrix_algebra, skew_group_algebra, skew_index};
pub use gabriel::{gabriel_quiver, gabriel_quiver_from, GabrielQuiver};
pub use idempotents::{decompose, primitive_idempotents, Decomposition, DEFAULT_RETRIES};
pub use quiver::{path_algebra, Arrow, Quiver};
pub use radical::{jacobson_radical, product_subspace, radical_powers, SemisimpleQuotient};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("claimed unit is not a two-sided identity on basis element {0}")]
    NotUnital(usize),
    #[error("malformed structure constants: {0}")]
    BadTable(String),
    #[error("malformed quiver: {0}")]
    BadQuiver(String),
    #[error("quiver has an oriented cycle; its path algebra is infinite-dimensional")]
    CyclicQuiver,
    #[error("radical computation needs characteristic 0 or p > dim (p = {p}, dim = {dim})")]
    UnsupportedField { p: u64, dim: usize },
    #[error("algebra does not split over the base field: {0}")]
    NonSplit(String),
    #[error("idempotent lifting did not converge")]
    LiftingFailed,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("map is not multiplicative on basis pair ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("map does not fix the unit")]
    UnitNotFixed,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("action is not a homomorphism at ({0}, {1})")]
    NotAHomomorphism(String, String),
    #[error("group order {0} is not invertible in the base field")]
    OrderNotInvertible(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
