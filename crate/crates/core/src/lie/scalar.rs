use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;

use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    Real,
    Complex,
}

/// Entry type of the dense matrices: `f64` or `Complex64`.
///
/// One scalar kind per matrix; the rigid body and Toda lattice are real,
/// the Zeitlin model is complex.
pub trait Scalar: ComplexField<RealField = f64> + Copy + Send + Sync + 'static {
    const KIND: ScalarKind;

    /// Uniform sample with every real component in `[-1, 1)`.
    fn sample(rng: &mut SeededRng) -> Self;

    fn to_complex(self) -> Complex64;

    /// All eigenvalues of a square matrix, unordered. `None` if the Schur
    /// iteration fails to converge.
    fn eigenvalues(m: &DMatrix<Self>) -> Option<Vec<Complex64>>;
}

const SCHUR_MAX_ITERS: usize = 10_000;

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Real;

    fn sample(rng: &mut SeededRng) -> Self {
        rng.symmetric()
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }

    fn eigenvalues(m: &DMatrix<Self>) -> Option<Vec<Complex64>> {
        if m.nrows() == 0 {
            return Some(Vec::new());
        }
        let schur = m.clone().try_schur(f64::EPSILON, SCHUR_MAX_ITERS)?;
        Some(schur.complex_eigenvalues().iter().copied().collect())
    }
}

impl Scalar for Complex64 {
    const KIND: ScalarKind = ScalarKind::Complex;

    fn sample(rng: &mut SeededRng) -> Self {
        let re = rng.symmetric();
        let im = rng.symmetric();
        Complex64::new(re, im)
    }

    fn to_complex(self) -> Complex64 {
        self
    }

    fn eigenvalues(m: &DMatrix<Self>) -> Option<Vec<Complex64>> {
        if m.nrows() == 0 {
            return Some(Vec::new());
        }
        let schur = m.clone().try_schur(f64::EPSILON, SCHUR_MAX_ITERS)?;
        // Over the complex field any remaining 2x2 diagonal block has a
        // complex square root, so this is always `Some` after convergence.
        Some(schur.eigenvalues()?.iter().copied().collect())
    }
}
