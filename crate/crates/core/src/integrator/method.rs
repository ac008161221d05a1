use std::fmt;

use nalgebra::DMatrix;

use super::{classical_rk4_step, gawlik_step, isospectral_sdirk_step, StepperConfig};
use crate::error::{Error, Result};
use crate::systems::IsospectralSystem;
use crate::tableau::{SdirkTableau, StepSchedule};

/// Integrator choice for runs and comparisons.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Isospectral(SdirkTableau),
    Gawlik,
    ClassicalRk4,
}

impl Method {
    /// `gawlik`, `rk4`, or any tableau name accepted by
    /// [`SdirkTableau::builtin`].
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "gawlik" => Ok(Method::Gawlik),
            "rk4" | "classical_rk4" => Ok(Method::ClassicalRk4),
            other => SdirkTableau::builtin(other).map(Method::Isospectral),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Method::Isospectral(t) => t.name().to_string(),
            Method::Gawlik => "gawlik".into(),
            Method::ClassicalRk4 => "rk4".into(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepStats {
    /// Total fixed-point iterations spent in the step (0 for explicit RK4).
    pub iters: usize,
}

/// A method bound to a system, a configuration, and a step size.
pub struct Propagator<'a, S: IsospectralSystem> {
    system: &'a S,
    method: Method,
    cfg: StepperConfig,
    h: f64,
    schedule: StepSchedule,
}

impl<'a, S: IsospectralSystem> Propagator<'a, S> {
    pub fn new(system: &'a S, method: Method, mut cfg: StepperConfig, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "step size must be positive, got {h}"
            )));
        }
        cfg.validate()?;
        if let Method::Isospectral(t) = &method {
            cfg.tableau = t.clone();
        }
        let schedule = cfg.tableau.schedule(h);
        Ok(Self {
            system,
            method,
            cfg,
            h,
            schedule,
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn method(&self) -> &Method {
        &self.method
    }

    pub fn system(&self) -> &S {
        self.system
    }

    pub fn config(&self) -> &StepperConfig {
        &self.cfg
    }

    pub fn step(&self, mu: &DMatrix<S::Scalar>) -> Result<(DMatrix<S::Scalar>, StepStats)> {
        match &self.method {
            Method::Isospectral(_) => {
                let out = isospectral_sdirk_step(mu, self.system, &self.cfg, &self.schedule)?;
                let iters = out.iters();
                Ok((out.mu_next, StepStats { iters }))
            }
            Method::Gawlik => {
                let (next, iters) = gawlik_step(mu, self.h, self.system, &self.cfg)?;
                Ok((next, StepStats { iters }))
            }
            Method::ClassicalRk4 => {
                let next = classical_rk4_step(mu, self.h, self.system);
                if next.iter().any(|x| !nalgebra::ComplexField::is_finite(x)) {
                    return Err(Error::NonConvergence {
                        iters: 0,
                        residual: f64::INFINITY,
                    });
                }
                Ok((next, StepStats::default()))
            }
        }
    }
}
