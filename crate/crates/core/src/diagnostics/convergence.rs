use std::thread;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::integrator::{Method, Propagator, StepperConfig};
use crate::systems::IsospectralSystem;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// Descending; repeated values are kept.
    pub h_values: Vec<f64>,
    /// `‖μ_h(t_final) - μ_ref(t_final)‖_F`, aligned with `h_values`.
    pub errors: Vec<f64>,
    pub fitted_slope: f64,
    pub reference_h: f64,
    /// Set when some run failed; `h_values`/`errors` then hold only the
    /// runs that finished.
    pub failure: Option<(f64, Error)>,
}

impl ConvergenceReport {
    pub fn is_complete(&self) -> bool {
        self.failure.is_none()
    }
}

/// Slope of the least-squares line through `(ln h, ln e)`; NaN with fewer
/// than two usable points.
pub fn least_squares_slope(h: &[f64], e: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = h
        .iter()
        .zip(e)
        .filter(|(h, e)| **h > 0.0 && **e > 0.0 && e.is_finite())
        .map(|(h, e)| (h.ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        f64::NAN
    } else {
        sxy / sxx
    }
}

fn step_count(t_final: f64, h: f64) -> Result<usize> {
    let n = t_final / h;
    let rounded = n.round();
    if rounded < 1.0 || (n - rounded).abs() > 1e-9 * rounded.max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "t_final = {t_final} is not an integer multiple of h = {h}"
        )));
    }
    Ok(rounded as usize)
}

fn integrate<S: IsospectralSystem>(
    system: &S,
    method: &Method,
    cfg: &StepperConfig,
    mu0: &DMatrix<S::Scalar>,
    h: f64,
    steps: usize,
) -> Result<DMatrix<S::Scalar>> {
    let prop = Propagator::new(system, method.clone(), cfg.clone(), h)?;
    let mut mu = mu0.clone();
    for step in 1..=steps {
        mu = prop
            .step(&mu)
            .map_err(|e| Error::Aborted {
                step,
                source: Box::new(e),
            })?
            .0;
    }
    Ok(mu)
}

/// Self-convergence study: every `h` and the reference run concurrently on
/// scoped threads, one per step size.
pub fn convergence_study<S: IsospectralSystem>(
    system: &S,
    method: &Method,
    cfg: &StepperConfig,
    mu0: &DMatrix<S::Scalar>,
    h_list: &[f64],
    t_final: f64,
    reference_h: f64,
) -> Result<ConvergenceReport> {
    if h_list.is_empty() {
        return Err(Error::InvalidArgument("h_list is empty".into()));
    }
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "t_final must be positive, got {t_final}"
        )));
    }
    let mut hs = h_list.to_vec();
    if hs.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
        return Err(Error::InvalidArgument("step sizes must be positive".into()));
    }
    hs.sort_by(|a, b| b.total_cmp(a));
    let h_min = *hs.last().expect("non-empty");
    if !(reference_h > 0.0 && reference_h <= h_min / 8.0 * (1.0 + 1e-12)) {
        return Err(Error::InvalidArgument(format!(
            "reference_h = {reference_h} must be <= min(h)/8 = {}",
            h_min / 8.0
        )));
    }
    let steps: Vec<usize> = hs
        .iter()
        .map(|&h| step_count(t_final, h))
        .collect::<Result<_>>()?;
    let ref_steps = step_count(t_final, reference_h)?;

    let (reference, runs) = thread::scope(|scope| {
        let ref_handle =
            scope.spawn(|| integrate(system, method, cfg, mu0, reference_h, ref_steps));
        let handles: Vec<_> = hs
            .iter()
            .zip(&steps)
            .map(|(&h, &n)| scope.spawn(move || integrate(system, method, cfg, mu0, h, n)))
            .collect();
        let runs: Vec<_> = handles
            .into_iter()
            .map(|h| h.join().expect("integration thread panicked"))
            .collect();
        (
            ref_handle.join().expect("integration thread panicked"),
            runs,
        )
    });

    let reference = match reference {
        Ok(r) => r,
        Err(e) => {
            return Ok(ConvergenceReport {
                h_values: Vec::new(),
                errors: Vec::new(),
                fitted_slope: f64::NAN,
                reference_h,
                failure: Some((reference_h, e)),
            })
        }
    };
    let mut h_values = Vec::new();
    let mut errors = Vec::new();
    let mut failure = None;
    for (h, run) in hs.into_iter().zip(runs) {
        match run {
            Ok(mu) => {
                h_values.push(h);
                errors.push((mu - &reference).norm());
            }
            Err(e) => {
                failure.get_or_insert((h, e));
            }
        }
    }
    Ok(ConvergenceReport {
        fitted_slope: least_squares_slope(&h_values, &errors),
        h_values,
        errors,
        reference_h,
        failure,
    })
}
