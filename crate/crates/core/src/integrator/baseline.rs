use nalgebra::DMatrix;

use super::{solve_stage, StepperConfig};
use crate::error::Result;
use crate::lie::dcay_inv;
use crate::systems::IsospectralSystem;

/// Gawlik-type isospectral midpoint on the half points:
/// `μ̃_n ↦ (Id + h/2 B(μ̃_n)) μ̃_n (Id - h/2 B(μ̃_n))`, then solve
/// `(Id - h/2 B(μ̃)) μ̃ (Id + h/2 B(μ̃)) = that` for `μ̃_{n+1}`.
///
/// The iterates are not isospectral with respect to each other, only up to
/// the conjugation that the evaluation introduces; the spectral drift of
/// the tracked variable grows with time. Returns `(μ̃_{n+1}, iterations)`.
pub fn gawlik_step<S: IsospectralSystem>(
    mu: &DMatrix<S::Scalar>,
    h: f64,
    system: &S,
    cfg: &StepperConfig,
) -> Result<(DMatrix<S::Scalar>, usize)> {
    let xi = system.generator(mu).scale(cfg.variant.sign() * h);
    let rhs = dcay_inv(&(-xi), mu)?;
    let sol = solve_stage(&rhs, h, system, cfg)?;
    Ok((sol.mu_stage, sol.iters))
}

/// Classical explicit RK4 on `μ̇ = [B(μ), μ]`.
pub fn classical_rk4_step<S: IsospectralSystem>(
    mu: &DMatrix<S::Scalar>,
    h: f64,
    system: &S,
) -> DMatrix<S::Scalar> {
    let f = |x: &DMatrix<S::Scalar>| {
        let b = system.generator(x);
        &b * x - x * &b
    };
    let k1 = f(mu);
    let k2 = f(&(mu + k1.scale(h / 2.0)));
    let k3 = f(&(mu + k2.scale(h / 2.0)));
    let k4 = f(&(mu + k3.scale(h)));
    mu + (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0)
}
