//! Run configuration.
//!
//! Config files are flat `key = value` lines. `#` starts a comment, blank
//! lines are ignored, arrays are comma separated (`h_list = 0.1, 0.05`).
//! Keys are the field names below; an unknown or repeated key is an error.
//!
//! Precedence, lowest first: built-in defaults, config file, `ISORK_SEED`
//! (seed only), command-line flags.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use isork::integrator::{UpdateForm, Variant};
use isork::systems::LaplacianReading;

pub const SEED_ENV: &str = "ISORK_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    RigidBody,
    Toda,
    Zeitlin,
}

impl SystemKind {
    pub fn name(self) -> &'static str {
        match self {
            SystemKind::RigidBody => "rigidbody",
            SystemKind::Toda => "toda",
            SystemKind::Zeitlin => "zeitlin",
        }
    }

    pub fn default_size(self) -> usize {
        match self {
            SystemKind::RigidBody => 3,
            SystemKind::Toda => 4,
            SystemKind::Zeitlin => 17,
        }
    }
}

impl FromStr for SystemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rigidbody" | "rigid_body" => Ok(SystemKind::RigidBody),
            "toda" => Ok(SystemKind::Toda),
            "zeitlin" => Ok(SystemKind::Zeitlin),
            other => Err(format!(
                "unknown system {other:?} (rigidbody, toda, zeitlin)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub system: SystemKind,
    /// Builtin tableau name, `custom` (uses `weights`), `gawlik` or `rk4`.
    pub method: String,
    pub h: f64,
    pub steps: usize,
    pub seed: u64,
    pub record_every: usize,
    pub update_form: UpdateForm,
    pub variant: Variant,
    pub solver_tol: f64,
    pub solver_max_iters: usize,
    /// Matrix size for toda / zeitlin; ignored for the rigid body.
    pub size: Option<usize>,
    pub inertia: [f64; 3],
    pub laplacian: LaplacianReading,
    pub weights: Vec<f64>,
    pub out: PathBuf,
    pub h_list: Vec<f64>,
    pub t_final: f64,
    /// Defaults to `min(h_list) / 8`.
    pub reference_h: Option<f64>,
    pub methods: Vec<String>,
    pub out_dir: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            system: SystemKind::RigidBody,
            method: "midpoint".into(),
            h: 0.01,
            steps: 1000,
            seed: 42,
            record_every: 1,
            update_form: UpdateForm::Conjugation,
            variant: Variant::Left,
            solver_tol: isork::integrator::DEFAULT_SOLVER_TOL,
            solver_max_iters: isork::integrator::DEFAULT_SOLVER_MAX_ITERS,
            size: None,
            inertia: [1.0, 2.0, 3.0],
            laplacian: LaplacianReading::Inverse,
            weights: Vec::new(),
            out: PathBuf::from("trajectory.csv"),
            h_list: vec![0.1, 0.05, 0.025, 0.0125],
            t_final: 1.0,
            reference_h: None,
            methods: vec!["midpoint".into(), "gawlik".into(), "rk4".into()],
            out_dir: PathBuf::from("."),
        }
    }
}

pub const KEYS: [&str; 20] = [
    "system",
    "method",
    "h",
    "steps",
    "seed",
    "record_every",
    "update_form",
    "variant",
    "solver_tol",
    "solver_max_iters",
    "size",
    "inertia",
    "laplacian",
    "weights",
    "out",
    "h_list",
    "t_final",
    "reference_h",
    "methods",
    "out_dir",
];

fn scalar<T: FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("{key}: cannot parse {v:?}"))
}

fn positive(key: &str, v: &str) -> Result<f64, String> {
    let x: f64 = scalar(key, v)?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{key}: must be positive, got {v}"))
    }
}

fn list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>, String> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| scalar(key, s))
        .collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl Config {
    /// Set one key from its textual value.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), String> {
        let v = value.trim();
        match key {
            "system" => self.system = v.parse()?,
            "method" => self.method = v.to_string(),
            "h" => self.h = positive(key, v)?,
            "steps" => self.steps = scalar(key, v)?,
            "seed" => self.seed = scalar(key, v)?,
            "record_every" => {
                self.record_every = scalar(key, v)?;
                if self.record_every == 0 {
                    return Err("record_every: must be >= 1".into());
                }
            }
            "update_form" => {
                self.update_form = match v {
                    "conjugation" => UpdateForm::Conjugation,
                    "dcay" => UpdateForm::Dcay,
                    _ => {
                        return Err(format!(
                            "update_form: expected conjugation or dcay, got {v:?}"
                        ))
                    }
                }
            }
            "variant" => {
                self.variant = match v {
                    "left" => Variant::Left,
                    "right" => Variant::Right,
                    _ => return Err(format!("variant: expected left or right, got {v:?}")),
                }
            }
            "solver_tol" => self.solver_tol = positive(key, v)?,
            "solver_max_iters" => self.solver_max_iters = scalar(key, v)?,
            "size" => self.size = Some(scalar(key, v)?),
            "inertia" => {
                let xs: Vec<f64> = list(key, v)?;
                self.inertia = xs
                    .try_into()
                    .map_err(|_| "inertia: expected three principal moments".to_string())?;
            }
            "laplacian" => {
                self.laplacian = match v {
                    "inverse" => LaplacianReading::Inverse,
                    "forward" => LaplacianReading::Forward,
                    _ => return Err(format!("laplacian: expected inverse or forward, got {v:?}")),
                }
            }
            "weights" => self.weights = list(key, v)?,
            "out" => self.out = PathBuf::from(v),
            "h_list" => {
                let hs: Vec<f64> = list(key, v)?;
                if hs.is_empty() || hs.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
                    return Err("h_list: expected positive step sizes".into());
                }
                self.h_list = hs;
            }
            "t_final" => self.t_final = positive(key, v)?,
            "reference_h" => self.reference_h = Some(positive(key, v)?),
            "methods" => {
                self.methods = list(key, v)?;
                if self.methods.is_empty() {
                    return Err("methods: expected at least one method".into());
                }
            }
            "out_dir" => self.out_dir = PathBuf::from(v),
            other => return Err(format!("unknown config key {other:?}")),
        }
        Ok(())
    }

    /// Apply the contents of a config file.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), String> {
        let mut seen = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", i + 1))?;
            let key = key.trim();
            if !seen.insert(key.to_string()) {
                return Err(format!("line {}: duplicate key {key:?}", i + 1));
            }
            self.apply(key, value)
                .map_err(|e| format!("line {}: {e}", i + 1))?;
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size.unwrap_or(self.system.default_size())
    }

    pub fn reference_h(&self) -> f64 {
        self.reference_h
            .unwrap_or_else(|| self.h_list.iter().cloned().fold(f64::INFINITY, f64::min) / 8.0)
    }

    /// Every key, in a form `apply_file_text` reads back to the same config.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        put("system", self.system.name().into());
        put("method", self.method.clone());
        put("h", self.h.to_string());
        put("steps", self.steps.to_string());
        put("seed", self.seed.to_string());
        put("record_every", self.record_every.to_string());
        put(
            "update_form",
            match self.update_form {
                UpdateForm::Conjugation => "conjugation",
                UpdateForm::Dcay => "dcay",
            }
            .into(),
        );
        put(
            "variant",
            match self.variant {
                Variant::Left => "left",
                Variant::Right => "right",
            }
            .into(),
        );
        put("solver_tol", self.solver_tol.to_string());
        put("solver_max_iters", self.solver_max_iters.to_string());
        put("size", self.size().to_string());
        put("inertia", join(&self.inertia));
        put(
            "laplacian",
            match self.laplacian {
                LaplacianReading::Inverse => "inverse",
                LaplacianReading::Forward => "forward",
            }
            .into(),
        );
        put("weights", join(&self.weights));
        put("out", self.out.display().to_string());
        put("h_list", join(&self.h_list));
        put("t_final", self.t_final.to_string());
        put("reference_h", self.reference_h().to_string());
        put("methods", self.methods.join(","));
        put("out_dir", self.out_dir.display().to_string());
        s
    }
}
