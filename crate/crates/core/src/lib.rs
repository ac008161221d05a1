//! Isospectral symplectic Runge-Kutta methods for Lie-Poisson systems on
//! quadratic matrix Lie algebras.
//!
//! The state `μ` lives in a matrix algebra `g = {ξ : Jξ + ξ^†J = 0}`
//! (optionally traceless) and evolves by the isospectral flow
//! `μ̇ = [B(μ), μ]` with `B(μ) = ∇H(μ)^†`. The SDIRK steppers in
//! [`integrator`] advance `μ` by Cayley conjugations, so the spectrum of
//! `μ` (and every Casimir `tr μ^k`) is preserved to roundoff.
//!
//! ```
//! use isork::{integrator::{Method, Propagator, StepperConfig}, systems::{IsospectralSystem, RigidBody}};
//! use isork::lie::spectrum;
//!
//! let body = RigidBody::default();
//! let mu0 = body.structure().random_element(42, 1.0);
//! let prop = Propagator::new(&body, Method::parse("midpoint").unwrap(), StepperConfig::default(), 0.01).unwrap();
//! let (mu1, _) = prop.step(&mu0).unwrap();
//! let drift = spectrum(&mu1).unwrap().max_abs_diff(&spectrum(&mu0).unwrap());
//! assert!(drift < 1e-13);
//! ```

pub mod diagnostics;
pub mod error;
pub mod integrator;
pub mod lie;
pub mod rng;
pub mod systems;
pub mod tableau;

pub use diagnostics::{
    convergence_study, read_csv, record, simulate, write_csv, ConvergenceReport, Recorder,
    Simulation, TrajectoryRecord,
};
pub use error::{Error, Result};
pub use integrator::{
    cotangent_sdirk_step, isospectral_sdirk_step, run_trajectory, solve_stage, Method, Propagator,
    StepperConfig, UpdateForm, Variant,
};
pub use lie::{
    cayley, dcay, dcay_inv, membership_residuals, random_algebra_element, spectrum,
    QuadraticStructure, Spectrum,
};
pub use rng::SeededRng;
pub use systems::{IsospectralSystem, RigidBody, TodaExtended, ZeitlinSphere};
pub use tableau::{SdirkTableau, StepSchedule};
