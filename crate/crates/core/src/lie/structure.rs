use nalgebra::DMatrix;

use super::Scalar;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Defining data of a quadratic matrix group `{g : g^† J g = J}` and its
/// algebra `{x : J x + x^† J = 0}`, optionally restricted to trace zero.
///
/// `j = None` stands for the full general linear algebra, which carries no
/// quadratic constraint. The extended Toda lattice lives there.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticStructure<T: Scalar> {
    n: usize,
    j: Option<DMatrix<T>>,
    traceless: bool,
}

impl<T: Scalar> QuadraticStructure<T> {
    /// Build from an explicit `J`, which must be invertible with `J^† = ±J`.
    pub fn new(j: DMatrix<T>, traceless: bool) -> Result<Self> {
        let n = j.nrows();
        if j.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                rows: j.nrows(),
                cols: j.ncols(),
            });
        }
        if j.clone().lu().try_inverse().is_none() {
            return Err(Error::InvalidArgument("J is singular".into()));
        }
        let adj = j.adjoint();
        let scale = 1.0 + j.norm();
        let hermitian = (&adj - &j).norm() <= 1e-12 * scale;
        let skew = (&adj + &j).norm() <= 1e-12 * scale;
        if !hermitian && !skew {
            return Err(Error::InvalidArgument("J must satisfy J^† = ±J".into()));
        }
        Ok(Self {
            n,
            j: Some(j),
            traceless,
        })
    }

    /// `J = Id`: O(n) for real scalars, U(n) for complex ones.
    pub fn orthogonal(n: usize) -> Self {
        Self {
            n,
            j: Some(DMatrix::identity(n, n)),
            traceless: false,
        }
    }

    /// `J = Id` with trace zero: so(n) / su(n).
    pub fn special_unitary(n: usize) -> Self {
        Self {
            n,
            j: Some(DMatrix::identity(n, n)),
            traceless: true,
        }
    }

    /// Sp(2m) with `J = [[0, Id], [-Id, 0]]`.
    pub fn symplectic(m: usize) -> Self {
        let n = 2 * m;
        let mut j = DMatrix::zeros(n, n);
        for i in 0..m {
            j[(i, m + i)] = T::one();
            j[(m + i, i)] = -T::one();
        }
        Self {
            n,
            j: Some(j),
            traceless: false,
        }
    }

    pub fn general_linear(n: usize) -> Self {
        Self {
            n,
            j: None,
            traceless: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn j(&self) -> Option<&DMatrix<T>> {
        self.j.as_ref()
    }

    pub fn is_traceless(&self) -> bool {
        self.traceless
    }

    fn check_shape(&self, x: &DMatrix<T>) -> Result<()> {
        if x.nrows() != self.n || x.ncols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                rows: x.nrows(),
                cols: x.ncols(),
            });
        }
        Ok(())
    }

    /// `‖g^† J g - J‖_F`.
    pub fn group_residual(&self, g: &DMatrix<T>) -> f64 {
        match &self.j {
            Some(j) => (g.adjoint() * j * g - j).norm(),
            None => 0.0,
        }
    }

    /// `‖J x + x^† J‖_F`, plus `|tr x|` for traceless structures.
    pub fn algebra_residual(&self, x: &DMatrix<T>) -> f64 {
        let quad = match &self.j {
            Some(j) => (j * x + x.adjoint() * j).norm(),
            None => 0.0,
        };
        if self.traceless {
            quad + x.trace().modulus()
        } else {
            quad
        }
    }

    /// `(group_residual, algebra_residual)` for a square matrix.
    pub fn membership_residuals(&self, x: &DMatrix<T>) -> Result<(f64, f64)> {
        self.check_shape(x)?;
        Ok((self.group_residual(x), self.algebra_residual(x)))
    }

    /// Project an arbitrary square matrix onto the algebra:
    /// `x ↦ (x - J⁻¹ x^† J) / 2`, then remove the trace if required.
    pub fn project(&self, x: &DMatrix<T>) -> Result<DMatrix<T>> {
        self.check_shape(x)?;
        let mut p = match &self.j {
            Some(j) => {
                let lu = j.clone().lu();
                let rhs = x.adjoint() * j;
                let jinv_rhs = lu.solve(&rhs).ok_or(Error::SingularFactor)?;
                (x - jinv_rhs).scale(0.5)
            }
            None => x.clone(),
        };
        if self.traceless && self.n > 0 {
            let shift = p.trace() / T::from_real(self.n as f64);
            for i in 0..self.n {
                p[(i, i)] -= shift;
            }
        }
        Ok(p)
    }

    /// Seeded random algebra element: every entry sampled uniformly in
    /// `[-1, 1)` (both parts for complex scalars), projected onto the algebra,
    /// then multiplied by `scale`.
    pub fn random_element(&self, seed: u64, scale: f64) -> DMatrix<T> {
        let mut rng = SeededRng::new(seed);
        let raw = DMatrix::from_fn(self.n, self.n, |_, _| T::sample(&mut rng));
        let p = self.project(&raw).expect("shape matches by construction");
        p.scale(scale)
    }
}
