//! Isospectral Lie-Poisson systems `μ̇ = [B(μ), μ]` with `B(μ) = ∇H(μ)^†`.
//!
//! Gradients are taken with respect to the real Frobenius inner product
//! `Re tr(ξ^† α)`, so for complex algebras `∇H` is the vector that satisfies
//! `dH(μ)[δ] = Re tr(∇H^† δ)` for every admissible `δ`.

mod rigid_body;
mod toda;
mod zeitlin;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::lie::{QuadraticStructure, Scalar};

pub use rigid_body::RigidBody;
pub use toda::{toda_lax_matrices, TodaExtended};
pub use zeitlin::{spin_generators, LaplacianReading, ZeitlinSphere};

/// A Lie-Poisson system on a matrix algebra.
pub trait IsospectralSystem: Send + Sync {
    type Scalar: Scalar;

    fn name(&self) -> &str;

    /// Algebra in which `B(μ)` lives and group in which the reconstructed
    /// configuration `g` lives.
    fn structure(&self) -> &QuadraticStructure<Self::Scalar>;

    fn dim(&self) -> usize {
        self.structure().dim()
    }

    /// `B(μ) = ∇H(μ)^†`, the generator of the flow `μ̇ = [B(μ), μ]`.
    fn generator(&self, mu: &DMatrix<Self::Scalar>) -> DMatrix<Self::Scalar>;

    /// Hamiltonian `H(μ)`.
    fn energy(&self, mu: &DMatrix<Self::Scalar>) -> f64;

    /// Column labels for [`IsospectralSystem::casimirs`].
    fn casimir_labels(&self) -> Vec<String>;

    fn casimirs(&self, mu: &DMatrix<Self::Scalar>) -> Vec<f64>;

    /// How far the state is from its admissible set.
    fn state_residual(&self, mu: &DMatrix<Self::Scalar>) -> f64 {
        self.structure().algebra_residual(mu)
    }
}

/// `tr(W^k)` for each requested order.
pub fn casimir_traces<T: Scalar>(w: &DMatrix<T>, orders: &[u32]) -> Vec<Complex64> {
    let max = orders.iter().copied().max().unwrap_or(0);
    let mut traces = Vec::with_capacity(max as usize);
    let mut power = DMatrix::<T>::identity(w.nrows(), w.ncols());
    for _ in 0..max {
        power = &power * w;
        traces.push(power.trace().to_complex());
    }
    orders
        .iter()
        .map(|&k| {
            if k == 0 {
                Complex64::new(w.nrows() as f64, 0.0)
            } else {
                traces[k as usize - 1]
            }
        })
        .collect()
}

/// Real parts of `tr(W^k)` and the largest imaginary part seen, which
/// should be roundoff for real-valued Casimirs.
#[derive(Debug, Clone, PartialEq)]
pub struct CasimirValues {
    pub values: Vec<f64>,
    pub max_imag: f64,
}

pub fn casimirs<T: Scalar>(w: &DMatrix<T>, orders: &[u32]) -> CasimirValues {
    let traces = casimir_traces(w, orders);
    CasimirValues {
        values: traces.iter().map(|z| z.re).collect(),
        max_imag: traces.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
    }
}

/// Linear system with a fixed generator, `B(μ) ≡ B₀`, i.e. `H(μ) = Re tr(B₀ μ)`.
/// `B₀ = 0` gives the free system.
#[derive(Debug, Clone)]
pub struct ConstantGenerator<T: Scalar> {
    structure: QuadraticStructure<T>,
    b0: DMatrix<T>,
}

impl<T: Scalar> ConstantGenerator<T> {
    pub fn new(structure: QuadraticStructure<T>, b0: DMatrix<T>) -> Self {
        assert_eq!(b0.nrows(), structure.dim());
        Self { structure, b0 }
    }

    pub fn free(structure: QuadraticStructure<T>) -> Self {
        let n = structure.dim();
        Self::new(structure, DMatrix::zeros(n, n))
    }
}

impl<T: Scalar> IsospectralSystem for ConstantGenerator<T> {
    type Scalar = T;

    fn name(&self) -> &str {
        "constant"
    }

    fn structure(&self) -> &QuadraticStructure<T> {
        &self.structure
    }

    fn generator(&self, _mu: &DMatrix<T>) -> DMatrix<T> {
        self.b0.clone()
    }

    fn energy(&self, mu: &DMatrix<T>) -> f64 {
        (&self.b0 * mu).trace().real()
    }

    fn casimir_labels(&self) -> Vec<String> {
        vec!["casimir_2".into()]
    }

    fn casimirs(&self, mu: &DMatrix<T>) -> Vec<f64> {
        casimirs(mu, &[2]).values
    }
}
