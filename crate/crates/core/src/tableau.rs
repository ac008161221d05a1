//! Symplectic diagonally implicit Runge-Kutta tableaux.
//!
//! An s-stage SDIRK of this family is fixed by its weights `b_1..b_s`: the
//! Butcher matrix has `b_j` below the diagonal and `b_i/2` on it, so the
//! method is a composition of `s` implicit midpoint substeps of size
//! `h·b_i`. Negative weights (e.g. `yoshida4`) give time-reversed substeps
//! and are handled by the same formulas.

use crate::error::{Error, Result};

/// Residual threshold below which a scheme counts as a 4th-order candidate.
pub const ORDER4_TOL: f64 = 1e-12;

/// Tolerance on `Σ b_i = 1` for user-supplied weights.
pub const CONSISTENCY_TOL: f64 = 1e-10;

pub const BUILTIN_NAMES: [&str; 4] = ["midpoint", "sdirk2", "yoshida4", "suzuki4"];

#[derive(Debug, Clone, PartialEq)]
pub struct SdirkTableau {
    name: String,
    weights: Vec<f64>,
}

impl SdirkTableau {
    fn validated(name: impl Into<String>, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidTableau("no weights given".into()));
        }
        if let Some(i) = weights.iter().position(|b| !b.is_finite()) {
            return Err(Error::InvalidTableau(format!(
                "weight b_{} is not finite",
                i + 1
            )));
        }
        if let Some(i) = weights.iter().position(|&b| b == 0.0) {
            return Err(Error::InvalidTableau(format!("weight b_{} is zero", i + 1)));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > CONSISTENCY_TOL {
            return Err(Error::InvalidTableau(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(Self {
            name: name.into(),
            weights,
        })
    }

    /// Look up a built-in scheme by name.
    pub fn builtin(name: &str) -> Result<Self> {
        let weights = match name {
            "midpoint" => vec![1.0],
            "sdirk2" => vec![0.5, 0.5],
            "yoshida4" => {
                let w1 = 1.0 / (2.0 - 2f64.cbrt());
                vec![w1, 1.0 - 2.0 * w1, w1]
            }
            "suzuki4" => {
                let v = 1.0 / (4.0 - 4f64.cbrt());
                vec![v, v, 1.0 - 4.0 * v, v, v]
            }
            other => return Err(Error::UnknownTableau(other.to_string())),
        };
        Self::validated(name, weights)
    }

    /// Validate user-supplied weights, e.g. the coefficients of a 7-stage scheme.
    pub fn custom(weights: &[f64]) -> Result<Self> {
        Self::validated("custom", weights.to_vec())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn stages(&self) -> usize {
        self.weights.len()
    }

    pub fn order_conditions(&self) -> OrderResiduals {
        OrderResiduals {
            consistency: (self.weights.iter().sum::<f64>() - 1.0).abs(),
            cubic: self.weights.iter().map(|b| b * b * b).sum::<f64>().abs(),
        }
    }

    /// Substep sizes and node offsets for base step `h`.
    pub fn schedule(&self, h: f64) -> StepSchedule {
        debug_assert!(h.is_finite() && h != 0.0);
        let mut nodes = Vec::with_capacity(self.weights.len() + 1);
        let mut r = 0.0;
        nodes.push(r);
        let mut stage_offsets = Vec::with_capacity(self.weights.len());
        for &b in &self.weights {
            stage_offsets.push(r + 0.5 * b);
            r += b;
            nodes.push(r);
        }
        StepSchedule {
            h,
            substeps: self.weights.iter().map(|b| h * b).collect(),
            nodes,
            stage_offsets,
        }
    }
}

/// `|Σ b_i - 1|` and `|Σ b_i³|`.
///
/// For symmetric compositions of midpoint steps both vanishing characterizes
/// order at least four.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderResiduals {
    pub consistency: f64,
    pub cubic: f64,
}

impl OrderResiduals {
    pub fn is_order4_candidate(&self) -> bool {
        self.consistency <= ORDER4_TOL && self.cubic <= ORDER4_TOL
    }
}

/// Per-step bookkeeping: `h_i = h b_i`, `r_i = Σ_{j≤i} b_j` (with `r_0 = 0`)
/// and stage offsets `c_i = r_{i-1} + b_i/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepSchedule {
    pub h: f64,
    pub substeps: Vec<f64>,
    pub nodes: Vec<f64>,
    pub stage_offsets: Vec<f64>,
}

/// Free-function form of [`SdirkTableau::builtin`].
pub fn builtin(name: &str) -> Result<SdirkTableau> {
    SdirkTableau::builtin(name)
}

/// Free-function form of [`SdirkTableau::custom`].
pub fn parse_custom(weights: &[f64]) -> Result<SdirkTableau> {
    SdirkTableau::custom(weights)
}
