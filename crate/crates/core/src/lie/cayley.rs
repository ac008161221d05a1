//! Cayley transform `cay(ξ) = (Id - ξ/2)⁻¹ (Id + ξ/2)` and its right
//! trivializations. No explicit inverses are formed: every `(Id ± ξ/2)⁻¹`
//! is a dense LU solve.

use nalgebra::{DMatrix, Dyn, LU};

use super::Scalar;
use crate::error::{Error, Result};

fn same_square<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<usize> {
    let n = a.nrows();
    for m in [a, b] {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
    }
    Ok(n)
}

/// `[a, b] = ab - ba`.
pub fn commutator<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<DMatrix<T>> {
    same_square(a, b)?;
    Ok(a * b - b * a)
}

/// `⟨a, b⟩ = tr(a^† b)`.
pub fn frobenius_pairing<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<T> {
    same_square(a, b)?;
    Ok(a.dotc(b))
}

/// `Id + c·ξ`.
pub(crate) fn shifted_identity<T: Scalar>(xi: &DMatrix<T>, c: f64) -> DMatrix<T> {
    let mut m = xi.scale(c);
    for i in 0..m.nrows() {
        m[(i, i)] += T::one();
    }
    m
}

/// Factorizations of `Id - ξ/2` and `Id + ξ/2` for repeated solves.
pub struct CayleyFactors<T: Scalar> {
    minus: DMatrix<T>,
    plus: DMatrix<T>,
    minus_lu: LU<T, Dyn, Dyn>,
    /// LU of `(Id + ξ/2)^T`, used for right division.
    plus_t_lu: LU<T, Dyn, Dyn>,
}

impl<T: Scalar> CayleyFactors<T> {
    pub fn new(xi: &DMatrix<T>) -> Result<Self> {
        if xi.nrows() != xi.ncols() {
            return Err(Error::DimensionMismatch {
                expected: xi.nrows(),
                rows: xi.nrows(),
                cols: xi.ncols(),
            });
        }
        let minus = shifted_identity(xi, -0.5);
        let plus = shifted_identity(xi, 0.5);
        let minus_lu = minus.clone().lu();
        let plus_t_lu = plus.transpose().lu();
        if !minus_lu.is_invertible() || !plus_t_lu.is_invertible() {
            return Err(Error::SingularFactor);
        }
        Ok(Self {
            minus,
            plus,
            minus_lu,
            plus_t_lu,
        })
    }

    /// `(Id - ξ/2)⁻¹ x`.
    fn left_div_minus(&self, x: &DMatrix<T>) -> Result<DMatrix<T>> {
        self.minus_lu.solve(x).ok_or(Error::SingularFactor)
    }

    /// `x (Id + ξ/2)⁻¹`.
    fn right_div_plus(&self, x: &DMatrix<T>) -> Result<DMatrix<T>> {
        self.plus_t_lu
            .solve(&x.transpose())
            .map(|y| y.transpose())
            .ok_or(Error::SingularFactor)
    }

    pub fn cayley(&self) -> Result<DMatrix<T>> {
        self.left_div_minus(&self.plus)
    }

    /// `dcay_ξ η = (Id - ξ/2)⁻¹ η (Id + ξ/2)⁻¹`.
    pub fn dcay(&self, eta: &DMatrix<T>) -> Result<DMatrix<T>> {
        self.left_div_minus(&self.right_div_plus(eta)?)
    }

    /// `Ad_{cay(ξ)} μ = cay(ξ) μ cay(ξ)⁻¹
    ///   = (Id - ξ/2)⁻¹ (Id + ξ/2) μ (Id + ξ/2)⁻¹ (Id - ξ/2)`.
    pub fn adjoint_action(&self, mu: &DMatrix<T>) -> Result<DMatrix<T>> {
        let inner = self.right_div_plus(&(&self.plus * mu))?;
        self.left_div_minus(&(inner * &self.minus))
    }
}

/// `cay(ξ) = (Id - ξ/2)⁻¹ (Id + ξ/2)`.
pub fn cayley<T: Scalar>(xi: &DMatrix<T>) -> Result<DMatrix<T>> {
    CayleyFactors::new(xi)?.cayley()
}

/// Right trivialized tangent of the Cayley map,
/// `dcay_ξ η = (Id - ξ/2)⁻¹ η (Id + ξ/2)⁻¹`.
pub fn dcay<T: Scalar>(xi: &DMatrix<T>, eta: &DMatrix<T>) -> Result<DMatrix<T>> {
    same_square(xi, eta)?;
    CayleyFactors::new(xi)?.dcay(eta)
}

/// Inverse of [`dcay`]: `dcay⁻¹_ξ η = (Id - ξ/2) η (Id + ξ/2)`.
pub fn dcay_inv<T: Scalar>(xi: &DMatrix<T>, eta: &DMatrix<T>) -> Result<DMatrix<T>> {
    same_square(xi, eta)?;
    Ok(shifted_identity(xi, -0.5) * eta * shifted_identity(xi, 0.5))
}

/// `cay(ξ) μ cay(ξ)⁻¹`, computed with solves only.
pub fn cayley_adjoint<T: Scalar>(xi: &DMatrix<T>, mu: &DMatrix<T>) -> Result<DMatrix<T>> {
    same_square(xi, mu)?;
    CayleyFactors::new(xi)?.adjoint_action(mu)
}
