use nalgebra::DMatrix;

use super::IsospectralSystem;
use crate::error::{Error, Result};
use crate::lie::QuadraticStructure;

/// Free rigid body on so(3)* with `H(W) = ½⟨𝓘⁻¹W, W⟩`.
///
/// The Frobenius gradient of `H` in gl(3) is `𝓘⁻¹W`; its projection onto
/// so(3) is `∇H(W) = ½(𝓘⁻¹W + W𝓘⁻¹)`, which is skew, so `B(W) = ∇H(W)^T = -∇H(W)`.
#[derive(Debug, Clone)]
pub struct RigidBody {
    inertia: DMatrix<f64>,
    inertia_inv: DMatrix<f64>,
    structure: QuadraticStructure<f64>,
}

impl RigidBody {
    pub fn new(inertia: DMatrix<f64>) -> Result<Self> {
        if inertia.shape() != (3, 3) {
            return Err(Error::DimensionMismatch {
                expected: 3,
                rows: inertia.nrows(),
                cols: inertia.ncols(),
            });
        }
        if (&inertia - inertia.transpose()).norm() > 1e-14 * inertia.norm() {
            return Err(Error::InvalidArgument(
                "inertia matrix must be symmetric".into(),
            ));
        }
        let chol = inertia
            .clone()
            .cholesky()
            .ok_or_else(|| Error::InvalidArgument("inertia must be positive definite".into()))?;
        let inertia_inv = chol.inverse();
        Ok(Self {
            inertia,
            inertia_inv,
            structure: QuadraticStructure::special_unitary(3),
        })
    }

    /// Body with diagonal inertia `diag(i1, i2, i3)`.
    pub fn principal(moments: [f64; 3]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(
            &moments,
        )))
    }

    pub fn inertia(&self) -> &DMatrix<f64> {
        &self.inertia
    }

    pub fn gradient(&self, w: &DMatrix<f64>) -> DMatrix<f64> {
        (&self.inertia_inv * w + w * &self.inertia_inv).scale(0.5)
    }
}

impl Default for RigidBody {
    fn default() -> Self {
        Self::principal([1.0, 2.0, 3.0]).expect("diag(1,2,3) is positive definite")
    }
}

impl IsospectralSystem for RigidBody {
    type Scalar = f64;

    fn name(&self) -> &str {
        "rigidbody"
    }

    fn structure(&self) -> &QuadraticStructure<f64> {
        &self.structure
    }

    fn generator(&self, w: &DMatrix<f64>) -> DMatrix<f64> {
        self.gradient(w).transpose()
    }

    fn energy(&self, w: &DMatrix<f64>) -> f64 {
        0.5 * (&self.inertia_inv * w).dot(w)
    }

    /// `‖W‖_F²`, the angular momentum magnitude squared (equal to `-tr(W²)`).
    fn casimir_labels(&self) -> Vec<String> {
        vec!["casimir_2".into()]
    }

    fn casimirs(&self, w: &DMatrix<f64>) -> Vec<f64> {
        vec![w.norm_squared()]
    }
}
