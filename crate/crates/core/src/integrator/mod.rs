//! Isospectral SDIRK time stepping and the reference integrators it is
//! checked against.
//!
//! One step of an s-stage scheme leapfrogs between half points `μ_{n,r_i}`
//! and stage points `μ_{n,c_i}`:
//!
//! ```text
//! solve   μ_{n,r_{i-1}} = (Id - h_i/2 B(μ_c)) μ_c (Id + h_i/2 B(μ_c))   for μ_c
//! update  μ_{n,r_i}     = (Id + h_i/2 B(μ_c)) μ_c (Id - h_i/2 B(μ_c))
//! ```
//!
//! The update is equivalently `cay(h_i B(μ_c)) μ_{n,r_{i-1}} cay(h_i B(μ_c))⁻¹`.
//! The default update uses that conjugation form, which keeps the spectrum
//! exact to roundoff whatever the stage residual; the product form is
//! available as [`UpdateForm::Dcay`].

mod baseline;
mod cotangent;
mod method;
mod sdirk;
mod stage;

use crate::error::{Error, Result};
use crate::tableau::SdirkTableau;

pub use baseline::{classical_rk4_step, gawlik_step};
pub use cotangent::{cotangent_sdirk_step, CotangentStage, CotangentState, CotangentStep};
pub use method::{Method, Propagator, StepStats};
pub use sdirk::{
    isospectral_sdirk_step, run_trajectory, run_trajectory_with, StageState, StepOutput, Trajectory,
};
pub use stage::{solve_stage, StageSolution};

pub const DEFAULT_SOLVER_TOL: f64 = 1e-13;
pub const DEFAULT_SOLVER_MAX_ITERS: usize = 200;

/// Left- or right-invariant reconstruction. The right-invariant algorithm
/// is the left one with every substep `h_i` replaced by `-h_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    Left,
    Right,
}

impl Variant {
    pub fn sign(self) -> f64 {
        match self {
            Variant::Left => 1.0,
            Variant::Right => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpdateForm {
    /// `μ_{r_i} = cay(h_i B) μ_{r_{i-1}} cay(h_i B)⁻¹`.
    #[default]
    Conjugation,
    /// `μ_{r_i} = dcay⁻¹_{-h_i B} μ_{c_i}`.
    Dcay,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepperConfig {
    pub variant: Variant,
    pub update_form: UpdateForm,
    /// Relative stage residual: `‖R‖_F ≤ tol (1 + ‖μ_prev‖_F)`.
    pub solver_tol: f64,
    pub solver_max_iters: usize,
    pub tableau: SdirkTableau,
}

impl StepperConfig {
    pub fn new(tableau: SdirkTableau) -> Self {
        Self {
            variant: Variant::Left,
            update_form: UpdateForm::Conjugation,
            solver_tol: DEFAULT_SOLVER_TOL,
            solver_max_iters: DEFAULT_SOLVER_MAX_ITERS,
            tableau,
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_update_form(mut self, update_form: UpdateForm) -> Self {
        self.update_form = update_form;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.solver_tol > 0.0 && self.solver_tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "solver_tol must be positive, got {}",
                self.solver_tol
            )));
        }
        if self.solver_max_iters == 0 {
            return Err(Error::InvalidArgument(
                "solver_max_iters must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

impl Default for StepperConfig {
    fn default() -> Self {
        Self::new(SdirkTableau::builtin("midpoint").expect("builtin"))
    }
}
