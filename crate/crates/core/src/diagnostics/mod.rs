//! Conservation metrics, trajectory recording, self-convergence studies and
//! CSV output.
//!
//! `spectral_drift` is the max-abs difference of canonically sorted spectra
//! (see [`crate::lie::Spectrum`]); the eigenvalues are conserved, so sorting
//! pairs them stably and no continuous tracking is needed.

mod convergence;
mod csv_io;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::integrator::Propagator;
use crate::lie::{spectrum, Spectrum};
use crate::systems::IsospectralSystem;

pub use convergence::{convergence_study, least_squares_slope, ConvergenceReport};
pub use csv_io::{csv_header, read_csv, write_csv, write_csv_to, CsvTable};

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub step: usize,
    pub t: f64,
    pub energy: f64,
    /// `H(μ_n) - H(μ_0)`.
    pub energy_drift: f64,
    /// NaN when the eigensolver failed (then `flagged` is set).
    pub spectral_drift: f64,
    pub casimir_values: Vec<f64>,
    pub solver_iters_total: usize,
    pub membership_residual: f64,
    pub flagged: bool,
}

/// Holds the initial spectrum and energy so each record costs one
/// eigen-decomposition.
pub struct Recorder<'a, S: IsospectralSystem> {
    system: &'a S,
    h: f64,
    initial_spectrum: Spectrum,
    initial_energy: f64,
}

impl<'a, S: IsospectralSystem> Recorder<'a, S> {
    pub fn new(system: &'a S, mu0: &DMatrix<S::Scalar>, h: f64) -> Result<Self> {
        let n = system.dim();
        if mu0.nrows() != n || mu0.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                rows: mu0.nrows(),
                cols: mu0.ncols(),
            });
        }
        Ok(Self {
            system,
            h,
            initial_spectrum: spectrum(mu0)?,
            initial_energy: system.energy(mu0),
        })
    }

    pub fn initial_spectrum(&self) -> &Spectrum {
        &self.initial_spectrum
    }

    pub fn initial_energy(&self) -> f64 {
        self.initial_energy
    }

    pub fn record(
        &self,
        step: usize,
        mu: &DMatrix<S::Scalar>,
        solver_iters_total: usize,
    ) -> TrajectoryRecord {
        let energy = self.system.energy(mu);
        let (spectral_drift, flagged) = match spectrum(mu) {
            Ok(s) if s.len() == self.initial_spectrum.len() => {
                (s.max_abs_diff(&self.initial_spectrum), false)
            }
            _ => (f64::NAN, true),
        };
        TrajectoryRecord {
            step,
            // Integer multiple of h, not an accumulated sum.
            t: step as f64 * self.h,
            energy,
            energy_drift: energy - self.initial_energy,
            spectral_drift,
            casimir_values: self.system.casimirs(mu),
            solver_iters_total,
            membership_residual: self.system.state_residual(mu),
            flagged,
        }
    }
}

/// One-shot form of [`Recorder::record`].
pub fn record<S: IsospectralSystem>(
    mu_n: &DMatrix<S::Scalar>,
    mu0: &DMatrix<S::Scalar>,
    system: &S,
    step: usize,
    h: f64,
    solver_iters_total: usize,
) -> Result<TrajectoryRecord> {
    if mu_n.shape() != mu0.shape() {
        return Err(Error::DimensionMismatch {
            expected: mu0.nrows(),
            rows: mu_n.nrows(),
            cols: mu_n.ncols(),
        });
    }
    Ok(Recorder::new(system, mu0, h)?.record(step, mu_n, solver_iters_total))
}

/// Outcome of [`simulate`]. A solver failure does not discard the records
/// gathered so far; it is reported in `error` instead.
#[derive(Debug, Clone)]
pub struct Simulation<T: nalgebra::Scalar> {
    pub records: Vec<TrajectoryRecord>,
    pub final_state: DMatrix<T>,
    pub steps_completed: usize,
    pub total_iters: usize,
    pub max_step_iters: usize,
    pub error: Option<Error>,
}

impl<T: nalgebra::Scalar> Simulation<T> {
    pub fn max_spectral_drift(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.spectral_drift)
            .fold(0.0, |m, x| if x.is_nan() || x > m { x } else { m })
    }

    pub fn max_energy_drift(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.energy_drift.abs())
            .fold(0.0, f64::max)
    }

    pub fn mean_step_iters(&self) -> f64 {
        if self.steps_completed == 0 {
            0.0
        } else {
            self.total_iters as f64 / self.steps_completed as f64
        }
    }
}

/// Run `n_steps` steps from `mu0`, recording step 0 and every
/// `record_every`-th step (and always the last completed one).
/// `solver_iters` in a record is the cumulative iteration count.
pub fn simulate<S: IsospectralSystem>(
    propagator: &Propagator<'_, S>,
    mu0: &DMatrix<S::Scalar>,
    n_steps: usize,
    record_every: usize,
) -> Result<Simulation<S::Scalar>> {
    if record_every == 0 {
        return Err(Error::InvalidArgument("record_every must be >= 1".into()));
    }
    let recorder = Recorder::new(propagator.system(), mu0, propagator.h())?;
    let mut records = vec![recorder.record(0, mu0, 0)];
    let mut mu = mu0.clone();
    let mut total_iters = 0;
    let mut max_step_iters = 0;
    let mut steps_completed = 0;
    let mut error = None;
    for step in 1..=n_steps {
        match propagator.step(&mu) {
            Ok((next, stats)) => {
                mu = next;
                total_iters += stats.iters;
                max_step_iters = max_step_iters.max(stats.iters);
                steps_completed = step;
                if step % record_every == 0 || step == n_steps {
                    records.push(recorder.record(step, &mu, total_iters));
                }
            }
            Err(e) => {
                if records.last().map(|r| r.step) != Some(steps_completed) {
                    records.push(recorder.record(steps_completed, &mu, total_iters));
                }
                error = Some(Error::Aborted {
                    step,
                    source: Box::new(e),
                });
                break;
            }
        }
    }
    Ok(Simulation {
        records,
        final_state: mu,
        steps_completed,
        total_iters,
        max_step_iters,
        error,
    })
}
