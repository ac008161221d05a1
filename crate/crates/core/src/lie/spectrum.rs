use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Scalar;
use crate::error::{Error, Result};

/// Relative gap below which two real parts count as equal when ordering.
///
/// Conjugate pairs of real matrices and the purely imaginary spectra of
/// skew-Hermitian matrices have real parts that differ only by roundoff;
/// without clustering their order would flip from step to step.
const REAL_PART_CLUSTER_TOL: f64 = 1e-8;

/// Eigenvalues in canonical order: real part ascending, ties (real parts
/// within a small relative gap) broken by imaginary part ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<Complex64>);

impl Spectrum {
    pub fn from_eigenvalues(mut values: Vec<Complex64>) -> Self {
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Self(values);
        }
        values.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal));
        let scale = values.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let tol = REAL_PART_CLUSTER_TOL * scale;
        let mut start = 0;
        for i in 1..=values.len() {
            if i == values.len() || values[i].re - values[i - 1].re > tol {
                values[start..i].sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal));
                start = i;
            }
        }
        Self(values)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `max_k |λ_k - λ'_k|` after canonical ordering of both spectra.
    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        assert_eq!(self.len(), other.len(), "spectra of different dimension");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues of a square matrix in canonical order.
pub fn spectrum<T: Scalar>(a: &DMatrix<T>) -> Result<Spectrum> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigenFailure);
    }
    T::eigenvalues(a)
        .map(Spectrum::from_eigenvalues)
        .ok_or(Error::EigenFailure)
}
