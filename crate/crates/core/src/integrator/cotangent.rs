//! Reference integrator on the cotangent bundle `T*G ≅ G × g*`: the
//! implicit-midpoint-type SDIRK applied to the unreduced canonical
//! equations, followed by reduction `μ = g^† p` (left) or `μ = p g^†`
//! (right). Used as an oracle for the reduced scheme.

use nalgebra::DMatrix;

use super::{StepperConfig, Variant};
use crate::error::{Error, Result};
use crate::lie::Scalar;
use crate::systems::IsospectralSystem;
use crate::tableau::StepSchedule;

#[derive(Debug, Clone)]
pub struct CotangentState<T: Scalar> {
    pub g: DMatrix<T>,
    pub p: DMatrix<T>,
}

impl<T: Scalar> CotangentState<T> {
    /// `g = Id`, `p = μ0`; reduces to `μ0` for either variant.
    pub fn from_momentum(mu0: &DMatrix<T>) -> Self {
        let n = mu0.nrows();
        Self {
            g: DMatrix::identity(n, n),
            p: mu0.clone(),
        }
    }

    pub fn reduce(&self, variant: Variant) -> DMatrix<T> {
        reduce(&self.g, &self.p, variant)
    }
}

fn reduce<T: Scalar>(g: &DMatrix<T>, p: &DMatrix<T>, variant: Variant) -> DMatrix<T> {
    match variant {
        Variant::Left => g.adjoint() * p,
        Variant::Right => p * g.adjoint(),
    }
}

#[derive(Debug, Clone)]
pub struct CotangentStage<T: Scalar> {
    pub g_stage: DMatrix<T>,
    pub p_stage: DMatrix<T>,
    pub g_before: DMatrix<T>,
    pub g_after: DMatrix<T>,
    pub p_before: DMatrix<T>,
    pub p_after: DMatrix<T>,
    pub iters: usize,
}

impl<T: Scalar> CotangentStage<T> {
    /// Reduced stage point `μ_c` from `(G_c, P_c)`.
    pub fn mu_stage(&self, variant: Variant) -> DMatrix<T> {
        reduce(&self.g_stage, &self.p_stage, variant)
    }
}

#[derive(Debug, Clone)]
pub struct CotangentStep<T: Scalar> {
    pub state: CotangentState<T>,
    pub stages: Vec<CotangentStage<T>>,
}

fn slopes<S: IsospectralSystem>(
    g: &DMatrix<S::Scalar>,
    p: &DMatrix<S::Scalar>,
    system: &S,
    variant: Variant,
) -> (DMatrix<S::Scalar>, DMatrix<S::Scalar>) {
    let b = system.generator(&reduce(g, p, variant));
    match variant {
        // ġ = g B^†, ṗ = -p B
        Variant::Left => (g * b.adjoint(), -(p * &b)),
        // ġ = B^† g, ṗ = -B p
        Variant::Right => (b.adjoint() * g, -(&b * p)),
    }
}

/// One SDIRK step on `T*G`. Each stage solves
/// `k = f(z + h_i/2 k)` by fixed-point iteration and sets `z ← z + h_i k`.
pub fn cotangent_sdirk_step<S: IsospectralSystem>(
    state: &CotangentState<S::Scalar>,
    system: &S,
    cfg: &StepperConfig,
    schedule: &StepSchedule,
) -> Result<CotangentStep<S::Scalar>> {
    let variant = cfg.variant;
    let mut g = state.g.clone();
    let mut p = state.p.clone();
    let mut stages = Vec::with_capacity(schedule.substeps.len());
    for &h_i in &schedule.substeps {
        let a = 0.5 * h_i;
        let (mut kg, mut kp) = slopes(&g, &p, system, variant);
        let mut converged = None;
        let mut change = f64::INFINITY;
        for iter in 1..=cfg.solver_max_iters {
            let gc = &g + kg.scale(a);
            let pc = &p + kp.scale(a);
            let (kg_new, kp_new) = slopes(&gc, &pc, system, variant);
            change = (&kg_new - &kg).norm() + (&kp_new - &kp).norm();
            let scale = 1.0 + kg_new.norm() + kp_new.norm();
            kg = kg_new;
            kp = kp_new;
            if !change.is_finite() {
                break;
            }
            if change <= cfg.solver_tol * scale {
                converged = Some(iter);
                break;
            }
        }
        let iters = converged.ok_or(Error::NonConvergence {
            iters: cfg.solver_max_iters,
            residual: change,
        })?;
        let g_after = &g + kg.scale(h_i);
        let p_after = &p + kp.scale(h_i);
        stages.push(CotangentStage {
            g_stage: &g + kg.scale(a),
            p_stage: &p + kp.scale(a),
            g_before: g.clone(),
            g_after: g_after.clone(),
            p_before: p.clone(),
            p_after: p_after.clone(),
            iters,
        });
        g = g_after;
        p = p_after;
    }
    Ok(CotangentStep {
        state: CotangentState { g, p },
        stages,
    })
}
