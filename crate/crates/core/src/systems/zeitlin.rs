//! Zeitlin's matrix model of the barotropic vorticity equation on the sphere.
//!
//! Vorticity is a traceless skew-Hermitian `N×N` matrix `W`. The Hoppe
//! Laplacian is built from the spin `s = (N-1)/2` generators as
//! `Δ(W) = -Σ_k [S_k, [S_k, W]]`, normalized so its eigenvalues on matrix
//! harmonics are `+l(l+1)`, `l = 0..N-1`, with multiplicity `2l+1`.
//!
//! Because `[S_3, ·]` is diagonal on the matrix units `E_ij` and commutes
//! with `Δ`, each diagonal `j - i = k` is invariant. The inverse is applied
//! block by block from LU factors of the restricted operators.

use nalgebra::{DMatrix, DVector, Dyn, SymmetricEigen, LU};
use num_complex::Complex64;

use super::{casimir_traces, IsospectralSystem};
use crate::error::{Error, Result};
use crate::lie::QuadraticStructure;

type C = Complex64;

/// Trace tolerance for the inverse Laplacian, relative to `1 + ‖W‖_F`.
pub const TRACE_TOL: f64 = 1e-10;

/// How the operator in `Ẇ = N^{3/2} [Δ̂W, W]` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LaplacianReading {
    /// `Δ̂` is the (negative) inverse Laplacian producing the stream matrix.
    /// This is the reading that conserves `H`.
    #[default]
    Inverse,
    /// `Δ̂` is the (negative) forward Laplacian. Kept for comparison only.
    Forward,
}

/// Skew-Hermitian spin generators with `S_3 = i·diag(s, s-1, …, -s)` and
/// `[S_1, S_2] = S_3` cyclically.
pub fn spin_generators(n: usize) -> [DMatrix<C>; 3] {
    assert!(n >= 2, "spin generators need N >= 2");
    let s = (n as f64 - 1.0) / 2.0;
    let m = |j: usize| s - j as f64;
    let mut raise = DMatrix::<C>::zeros(n, n);
    for j in 1..n {
        let mj = m(j);
        raise[(j - 1, j)] = C::new((s * (s + 1.0) - mj * (mj + 1.0)).sqrt(), 0.0);
    }
    let lower = raise.transpose();
    let i = C::new(0.0, 1.0);
    let s1 = (&raise + &lower).scale(0.5) * i;
    let s2 = (&lower - &raise).scale(0.5);
    let s3 = DMatrix::from_diagonal(&DVector::from_fn(n, |j, _| i * m(j)));
    [s1, s2, s3]
}

struct DiagonalBlock {
    offset: isize,
    first_row: usize,
    operator: DMatrix<C>,
    solver: LU<C, Dyn, Dyn>,
}

impl DiagonalBlock {
    fn len(&self) -> usize {
        self.operator.nrows()
    }

    fn coords(&self, p: usize) -> (usize, usize) {
        let r = self.first_row + p;
        (r, (r as isize + self.offset) as usize)
    }
}

pub struct ZeitlinSphere {
    n: usize,
    generators: [DMatrix<C>; 3],
    blocks: Vec<DiagonalBlock>,
    time_scale: f64,
    reading: LaplacianReading,
    structure: QuadraticStructure<C>,
}

impl std::fmt::Debug for ZeitlinSphere {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ZeitlinSphere")
            .field("n", &self.n)
            .field("reading", &self.reading)
            .finish()
    }
}

impl ZeitlinSphere {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_reading(n, LaplacianReading::Inverse)
    }

    pub fn with_reading(n: usize, reading: LaplacianReading) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "Zeitlin model needs N >= 2, got {n}"
            )));
        }
        let generators = spin_generators(n);
        let s = (n as f64 - 1.0) / 2.0;
        let casimir = 2.0 * s * (s + 1.0);
        let mut blocks = Vec::with_capacity(2 * n - 1);
        for offset in -(n as isize - 1)..=(n as isize - 1) {
            let first_row = (-offset).max(0) as usize;
            let len = n - offset.unsigned_abs();
            // Δ(E_rc) = 2s(s+1) E_rc + 2 Σ_k S_k E_rc S_k, and
            // (S E_rc S)_ab = S_ar S_cb with S tridiagonal.
            let mut op = DMatrix::<C>::zeros(len, len);
            for q in 0..len {
                let r = first_row + q;
                let c = (r as isize + offset) as usize;
                op[(q, q)] += C::new(casimir, 0.0);
                for a in r.saturating_sub(1)..(r + 2).min(n) {
                    let b = a as isize + offset;
                    if b < 0 || b >= n as isize {
                        continue;
                    }
                    let b = b as usize;
                    let mut v = C::new(0.0, 0.0);
                    for g in &generators {
                        v += g[(a, r)] * g[(c, b)];
                    }
                    op[(a - first_row, q)] += v * 2.0;
                }
            }
            let mut regularized = op.clone();
            if offset == 0 {
                // The identity spans the kernel; adding the projector onto it
                // makes the block invertible without changing traceless solves.
                regularized.add_scalar_mut(C::new(1.0 / n as f64, 0.0));
            }
            let solver = regularized.lu();
            if !solver.is_invertible() {
                return Err(Error::SingularFactor);
            }
            blocks.push(DiagonalBlock {
                offset,
                first_row,
                operator: op,
                solver,
            });
        }
        Ok(Self {
            n,
            generators,
            blocks,
            time_scale: (n as f64).powf(1.5),
            reading,
            structure: QuadraticStructure::special_unitary(n),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn reading(&self) -> LaplacianReading {
        self.reading
    }

    pub fn generators(&self) -> &[DMatrix<C>; 3] {
        &self.generators
    }

    /// `Δ(W) = -Σ_k [S_k, [S_k, W]]`, evaluated directly.
    pub fn laplacian(&self, w: &DMatrix<C>) -> DMatrix<C> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for s in &self.generators {
            let inner = s * w - w * s;
            out -= s * &inner - &inner * s;
        }
        out
    }

    /// Solve `Δ(P) = W` for traceless `W`; the solution is traceless.
    pub fn laplacian_inv(&self, w: &DMatrix<C>) -> Result<DMatrix<C>> {
        let trace = w.trace().norm();
        if trace > TRACE_TOL * (1.0 + w.norm()) {
            return Err(Error::NonzeroTrace { trace });
        }
        Ok(self.solve_blocks(w))
    }

    fn solve_blocks(&self, w: &DMatrix<C>) -> DMatrix<C> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for block in &self.blocks {
            let rhs = DVector::from_fn(block.len(), |p, _| w[block.coords(p)]);
            let x = block
                .solver
                .solve(&rhs)
                .expect("factor checked at construction");
            for p in 0..block.len() {
                out[block.coords(p)] = x[p];
            }
        }
        out
    }

    /// `W - tr(W)/N · Id`.
    fn traceless_part(&self, w: &DMatrix<C>) -> DMatrix<C> {
        let mut p = w.clone();
        let shift = w.trace() / self.n as f64;
        for i in 0..self.n {
            p[(i, i)] -= shift;
        }
        p
    }

    /// Eigenvalues of `Δ` on traceless matrices, ascending, from the
    /// diagonal blocks.
    pub fn laplacian_spectrum(&self) -> Vec<f64> {
        let mut values = Vec::with_capacity(self.n * self.n - 1);
        for block in &self.blocks {
            let mut eig: Vec<f64> = SymmetricEigen::new(block.operator.clone())
                .eigenvalues
                .iter()
                .copied()
                .collect();
            if block.offset == 0 {
                // Drop the kernel (the identity matrix).
                let (idx, _) = eig
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                    .expect("block is non-empty");
                eig.remove(idx);
            }
            values.extend(eig);
        }
        values.sort_by(f64::total_cmp);
        values
    }

    /// `∇H(W) = N^{3/2} Δ⁻¹(W)` for the Hamiltonian `H = (N^{3/2}/2)⟨Δ⁻¹W, W⟩`,
    /// with the trace of `W` projected out first.
    pub fn gradient(&self, w: &DMatrix<C>) -> DMatrix<C> {
        self.solve_blocks(&self.traceless_part(w))
            .scale(self.time_scale)
    }

    /// Seeded random traceless skew-Hermitian matrix with unit Frobenius norm.
    pub fn random_initial(&self, seed: u64) -> DMatrix<C> {
        let w = self.structure.random_element(seed, 1.0);
        let norm = w.norm();
        w.unscale(norm)
    }
}

impl IsospectralSystem for ZeitlinSphere {
    type Scalar = C;

    fn name(&self) -> &str {
        "zeitlin"
    }

    fn structure(&self) -> &QuadraticStructure<C> {
        &self.structure
    }

    /// `B(W) = ∇H(W)^† = -N^{3/2} Δ⁻¹(W)` since `Δ⁻¹W` is skew-Hermitian.
    /// With the forward reading, `-N^{3/2} Δ(W)`.
    fn generator(&self, w: &DMatrix<C>) -> DMatrix<C> {
        match self.reading {
            LaplacianReading::Inverse => self.gradient(w).adjoint(),
            LaplacianReading::Forward => self.laplacian(w).scale(-self.time_scale),
        }
    }

    fn energy(&self, w: &DMatrix<C>) -> f64 {
        let p = self.traceless_part(w);
        0.5 * self.time_scale * self.solve_blocks(&p).dotc(&p).re
    }

    fn casimir_labels(&self) -> Vec<String> {
        (2..=5).map(|k| format!("casimir_{k}")).collect()
    }

    /// `tr(W^k)` for `k = 2..5`. For skew-Hermitian `W` the trace is real for
    /// even `k` and imaginary for odd `k`; the nonvanishing part is reported.
    fn casimirs(&self, w: &DMatrix<C>) -> Vec<f64> {
        casimir_traces(w, &[2, 3, 4, 5])
            .into_iter()
            .zip(2..)
            .map(|(z, k)| if k % 2 == 0 { z.re } else { z.im })
            .collect()
    }
}
