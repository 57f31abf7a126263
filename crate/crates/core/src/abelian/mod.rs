//! Exact linear algebra over finitely generated abelian groups.

mod group;
mod hom;
mod lattice;
mod matrix;
pub(crate) mod smith;

use thiserror::Error;

pub use group::{groups_isomorphic, AbGroup, GroupDecomposition};
pub use hom::AbHom;
pub use lattice::{cokernel, kernel_basis, subquotient, Subquotient};
pub use matrix::{Int, IntMatrix};
pub use smith::{smith_normal_form, SmithNormalForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not in canonical form: {0}")]
    NotCanonical(String),
    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("composite of consecutive maps is not zero")]
    CompositionNotZero,
    #[error("element does not lie in the kernel")]
    NotInKernel,
}
