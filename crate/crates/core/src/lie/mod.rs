//! Dense matrix primitives for quadratic Lie groups and their algebras.
//!
//! Algebra and group elements are plain `DMatrix<T>` values; the
//! [`QuadraticStructure`] they belong to is passed alongside. Membership is
//! never enforced at runtime by the integrators: drift away from the algebra
//! is a diagnostic, not an error.

mod cayley;
mod scalar;
mod spectrum;
mod structure;

use nalgebra::DMatrix;

pub use cayley::{
    cayley, cayley_adjoint, commutator, dcay, dcay_inv, frobenius_pairing, CayleyFactors,
};
pub use scalar::{Scalar, ScalarKind};
pub use spectrum::{spectrum, Spectrum};
pub use structure::QuadraticStructure;

/// Element of a (quadratic) matrix Lie algebra, or of its dual.
pub type AlgebraElement<T> = DMatrix<T>;

/// Element of a (quadratic) matrix Lie group.
pub type GroupElement<T> = DMatrix<T>;

/// See [`QuadraticStructure::random_element`].
pub fn random_algebra_element<T: Scalar>(
    structure: &QuadraticStructure<T>,
    seed: u64,
    scale: f64,
) -> AlgebraElement<T> {
    structure.random_element(seed, scale)
}

/// `(‖x^† J x - J‖_F, ‖J x + x^† J‖_F)`.
pub fn membership_residuals<T: Scalar>(
    x: &DMatrix<T>,
    structure: &QuadraticStructure<T>,
) -> crate::Result<(f64, f64)> {
    structure.membership_residuals(x)
}
