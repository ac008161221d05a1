use nalgebra::DMatrix;

use super::{solve_stage, StepperConfig, UpdateForm};
use crate::error::{Error, Result};
use crate::lie::{dcay_inv, CayleyFactors, Scalar};
use crate::systems::IsospectralSystem;
use crate::tableau::StepSchedule;

#[derive(Debug, Clone)]
pub struct StageState<T: Scalar> {
    /// `μ_{n,r_i}`, the half point after this stage.
    pub mu_half: DMatrix<T>,
    /// `μ_{n,c_i}`, the stage point.
    pub mu_stage: DMatrix<T>,
    pub iters: usize,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct StepOutput<T: Scalar> {
    pub mu_next: DMatrix<T>,
    pub stages: Vec<StageState<T>>,
}

impl<T: Scalar> StepOutput<T> {
    pub fn iters(&self) -> usize {
        self.stages.iter().map(|s| s.iters).sum()
    }
}

/// One isospectral SDIRK step `μ_n → μ_{n+1}`.
pub fn isospectral_sdirk_step<S: IsospectralSystem>(
    mu_n: &DMatrix<S::Scalar>,
    system: &S,
    cfg: &StepperConfig,
    schedule: &StepSchedule,
) -> Result<StepOutput<S::Scalar>> {
    let mut mu = mu_n.clone();
    let mut stages = Vec::with_capacity(schedule.substeps.len());
    for &h_i in &schedule.substeps {
        let sol = solve_stage(&mu, h_i, system, cfg)?;
        let xi = sol.generator.scale(cfg.variant.sign() * h_i);
        mu = match cfg.update_form {
            UpdateForm::Conjugation => CayleyFactors::new(&xi)?.adjoint_action(&mu)?,
            UpdateForm::Dcay => dcay_inv(&(-xi), &sol.mu_stage)?,
        };
        stages.push(StageState {
            mu_half: mu.clone(),
            mu_stage: sol.mu_stage,
            iters: sol.iters,
            residual: sol.residual,
        });
    }
    Ok(StepOutput {
        mu_next: mu,
        stages,
    })
}

/// Stepping loop with a per-step observer `(step, μ_step, stages)`, called
/// after every completed step (`step` counts from 1). Returns the final state.
pub fn run_trajectory_with<S, F>(
    mu0: &DMatrix<S::Scalar>,
    system: &S,
    cfg: &StepperConfig,
    schedule: &StepSchedule,
    n_steps: usize,
    mut observer: F,
) -> Result<DMatrix<S::Scalar>>
where
    S: IsospectralSystem,
    F: FnMut(usize, &DMatrix<S::Scalar>, &[StageState<S::Scalar>]),
{
    if n_steps == 0 {
        return Err(Error::InvalidArgument("n_steps must be >= 1".into()));
    }
    cfg.validate()?;
    let mut mu = mu0.clone();
    for step in 1..=n_steps {
        let out =
            isospectral_sdirk_step(&mu, system, cfg, schedule).map_err(|e| Error::Aborted {
                step,
                source: Box::new(e),
            })?;
        observer(step, &out.mu_next, &out.stages);
        mu = out.mu_next;
    }
    Ok(mu)
}

#[derive(Debug, Clone)]
pub struct Trajectory<T: Scalar> {
    /// `μ_0, μ_1, …, μ_{n_steps}`.
    pub points: Vec<DMatrix<T>>,
    /// Stage data per step, empty unless requested.
    pub stages: Vec<Vec<StageState<T>>>,
}

pub fn run_trajectory<S: IsospectralSystem>(
    mu0: &DMatrix<S::Scalar>,
    system: &S,
    cfg: &StepperConfig,
    schedule: &StepSchedule,
    n_steps: usize,
    keep_stages: bool,
) -> Result<Trajectory<S::Scalar>> {
    let mut points = Vec::with_capacity(n_steps + 1);
    let mut stages = Vec::new();
    points.push(mu0.clone());
    run_trajectory_with(mu0, system, cfg, schedule, n_steps, |_, mu, st| {
        points.push(mu.clone());
        if keep_stages {
            stages.push(st.to_vec());
        }
    })?;
    Ok(Trajectory { points, stages })
}
