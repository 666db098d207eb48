//! Finite-dimensional left modules over structure-constant algebras:
//! Hom spaces, isomorphism tests, simples, projective covers, injective
//! envelopes, minimal resolutions, Ext, and the twist/induction/restriction
//! functors of skew group algebras.

mod category;
mod functors;
mod hom;
mod module;
mod resolution;

pub use category::{Approximation, ModuleCategory, Multiplicities, Projective};
pub use functors::{counit_map, induce, induce_map, restrict, restrict_map, skew_parts, twist, unit_map};
pub use hom::{hom_dim, hom_space, is_isomorphic, split_epi_section, split_mono_section, IsoEvidence, IsoVerdict, ISO_TRIALS};
pub use module::{direct_sum, regular_module, same_algebra, Module, ModuleMap};
pub use resolution::{
    ext_dim, ext_dims, ext_dims_from, ext_dims_via_injective, homological_dimension, injective_dimension,
    minimal_resolution, projective_dimension, Direction, HomDim, Resolution,
};

use crate::algcore::AlgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModError {
    #[error("modules or maps live over different algebras")]
    AlgebraMismatch,
    #[error("malformed module: {0}")]
    BadModule(String),
    #[error("module axioms fail: {0}")]
    NotAModule(String),
    #[error("matrix does not commute with the action")]
    NotAHomomorphism,
    #[error("algebra carries no skew group algebra structure")]
    NotASkewAlgebra,
    #[error(transparent)]
    Algebra(#[from] AlgError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
