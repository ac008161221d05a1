use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use isork::diagnostics::{write_csv, Simulation};
use isork::integrator::{Method, Propagator, StepperConfig};
use isork::systems::{IsospectralSystem, RigidBody, TodaExtended, ZeitlinSphere};
use isork::tableau::SdirkTableau;
use isork::{convergence_study, simulate};

use crate::config::{Config, SystemKind};
use crate::error::CliError;

fn method(cfg: &Config, name: &str) -> Result<Method, CliError> {
    if name == "custom" {
        if cfg.weights.is_empty() {
            return Err(CliError::Config("method custom needs `weights`".into()));
        }
        return Ok(Method::Isospectral(SdirkTableau::custom(&cfg.weights)?));
    }
    Ok(Method::parse(name)?)
}

fn stepper_config(cfg: &Config) -> StepperConfig {
    let mut s = StepperConfig::default()
        .with_variant(cfg.variant)
        .with_update_form(cfg.update_form);
    s.solver_tol = cfg.solver_tol;
    s.solver_max_iters = cfg.solver_max_iters;
    s
}

/// Something that can run a command once the system type is fixed.
trait SystemTask {
    type Output;
    fn run<S: IsospectralSystem>(
        self,
        system: &S,
        mu0: &DMatrix<S::Scalar>,
    ) -> Result<Self::Output, CliError>;
}

fn with_system<T: SystemTask>(cfg: &Config, task: T) -> Result<T::Output, CliError> {
    match cfg.system {
        SystemKind::RigidBody => {
            let body = RigidBody::principal(cfg.inertia)?;
            let mu0 = body.structure().random_element(cfg.seed, 1.0);
            task.run(&body, &mu0)
        }
        SystemKind::Toda => {
            let toda = TodaExtended::new(cfg.size())?;
            let mu0 = toda.alternating_initial();
            task.run(&toda, &mu0)
        }
        SystemKind::Zeitlin => {
            let z = ZeitlinSphere::with_reading(cfg.size(), cfg.laplacian)?;
            let mu0 = z.random_initial(cfg.seed);
            task.run(&z, &mu0)
        }
    }
}

fn ensure_parent(path: &Path) -> Result<(), CliError> {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => fs::create_dir_all(p).map_err(CliError::from),
        _ => Ok(()),
    }
}

/// Per-run numbers shown in summaries.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub method: String,
    pub steps_completed: usize,
    pub max_spectral_drift: f64,
    pub max_energy_drift: f64,
    pub final_energy_drift: f64,
    pub max_casimir_drift: f64,
    pub total_iters: usize,
    pub mean_iters: f64,
    pub max_step_iters: usize,
}

fn summarize<T: nalgebra::Scalar>(label: String, sim: &Simulation<T>) -> RunSummary {
    let first = &sim.records[0];
    let last = sim.records.last().expect("record 0 always present");
    let max_casimir_drift = sim
        .records
        .iter()
        .flat_map(|r| {
            r.casimir_values
                .iter()
                .zip(&first.casimir_values)
                .map(|(c, c0)| (c - c0).abs())
        })
        .fold(0.0, f64::max);
    RunSummary {
        method: label,
        steps_completed: sim.steps_completed,
        max_spectral_drift: sim.max_spectral_drift(),
        max_energy_drift: sim.max_energy_drift(),
        final_energy_drift: last.energy_drift,
        max_casimir_drift,
        total_iters: sim.total_iters,
        mean_iters: sim.mean_step_iters(),
        max_step_iters: sim.max_step_iters,
    }
}

struct RunTask<'a> {
    cfg: &'a Config,
    method: Method,
    out: &'a Path,
}

impl SystemTask for RunTask<'_> {
    type Output = (RunSummary, Option<isork::Error>);

    fn run<S: IsospectralSystem>(
        self,
        system: &S,
        mu0: &DMatrix<S::Scalar>,
    ) -> Result<Self::Output, CliError> {
        let prop = Propagator::new(
            system,
            self.method.clone(),
            stepper_config(self.cfg),
            self.cfg.h,
        )?;
        let sim = simulate(&prop, mu0, self.cfg.steps, self.cfg.record_every)?;
        ensure_parent(self.out)?;
        write_csv(&sim.records, &system.casimir_labels(), self.out)?;
        Ok((summarize(self.method.label(), &sim), sim.error))
    }
}

fn summary_text(cfg: &Config, s: &RunSummary, out: &Path) -> String {
    let mut t = String::new();
    let _ = writeln!(
        t,
        "system            {} (size {})",
        cfg.system.name(),
        cfg.size()
    );
    let _ = writeln!(t, "method            {}", s.method);
    let _ = writeln!(t, "h                 {}", cfg.h);
    let _ = writeln!(
        t,
        "steps             {} of {}",
        s.steps_completed, cfg.steps
    );
    let _ = writeln!(t, "max spectral drift {:.3e}", s.max_spectral_drift);
    let _ = writeln!(t, "max energy drift   {:.3e}", s.max_energy_drift);
    let _ = writeln!(t, "final energy drift {:.3e}", s.final_energy_drift);
    let _ = writeln!(t, "max casimir drift  {:.3e}", s.max_casimir_drift);
    let _ = writeln!(
        t,
        "solver iterations  {} total, {:.2} mean, {} max per step",
        s.total_iters, s.mean_iters, s.max_step_iters
    );
    let _ = writeln!(t, "wrote              {}", out.display());
    t
}

/// `run`: one trajectory to `cfg.out`. On solver failure the partial CSV is
/// still written and the error is returned after printing the summary.
pub fn run(cfg: &Config) -> Result<String, CliError> {
    let m = method(cfg, &cfg.method)?;
    let (summary, err) = with_system(
        cfg,
        RunTask {
            cfg,
            method: m,
            out: &cfg.out,
        },
    )?;
    let text = summary_text(cfg, &summary, &cfg.out);
    match err {
        None => Ok(text),
        Some(e) => {
            print!("{text}");
            Err(CliError::NonConvergence(e))
        }
    }
}

struct ConvergenceTask<'a> {
    cfg: &'a Config,
    method: Method,
}

impl SystemTask for ConvergenceTask<'_> {
    type Output = isork::ConvergenceReport;

    fn run<S: IsospectralSystem>(
        self,
        system: &S,
        mu0: &DMatrix<S::Scalar>,
    ) -> Result<Self::Output, CliError> {
        Ok(convergence_study(
            system,
            &self.method,
            &stepper_config(self.cfg),
            mu0,
            &self.cfg.h_list,
            self.cfg.t_final,
            self.cfg.reference_h(),
        )?)
    }
}

/// `convergence`: CSV `h,error` to `cfg.out`, fitted slope on stdout.
pub fn convergence(cfg: &Config) -> Result<String, CliError> {
    let m = method(cfg, &cfg.method)?;
    let report = with_system(
        cfg,
        ConvergenceTask {
            cfg,
            method: m.clone(),
        },
    )?;
    ensure_parent(&cfg.out)?;
    let mut w = csv::Writer::from_path(&cfg.out).map_err(|e| CliError::Io(e.to_string()))?;
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["h", "error"]).map_err(io)?;
    for (h, e) in report.h_values.iter().zip(&report.errors) {
        w.write_record([h.to_string(), e.to_string()]).map_err(io)?;
    }
    w.flush()?;
    let mut t = String::new();
    let _ = writeln!(
        t,
        "method {}  reference_h {}  t_final {}",
        m.label(),
        report.reference_h,
        cfg.t_final
    );
    for (h, e) in report.h_values.iter().zip(&report.errors) {
        let _ = writeln!(t, "h {h:<10} error {e:.6e}");
    }
    let _ = writeln!(t, "slope {:.4}", report.fitted_slope);
    match report.failure {
        None => Ok(t),
        Some((h, e)) => {
            print!("{t}");
            eprintln!("run with h = {h} failed; report is partial");
            Err(CliError::NonConvergence(e))
        }
    }
}

struct CompareTask<'a> {
    cfg: &'a Config,
    methods: Vec<Method>,
}

impl SystemTask for CompareTask<'_> {
    type Output = Vec<(RunSummary, Option<isork::Error>)>;

    fn run<S: IsospectralSystem>(
        self,
        system: &S,
        mu0: &DMatrix<S::Scalar>,
    ) -> Result<Self::Output, CliError> {
        fs::create_dir_all(&self.cfg.out_dir)?;
        let mut out = Vec::new();
        for m in self.methods {
            let path = self.cfg.out_dir.join(format!("{}.csv", m.label()));
            out.push(
                RunTask {
                    cfg: self.cfg,
                    method: m,
                    out: &path,
                }
                .run(system, mu0)?,
            );
        }
        Ok(out)
    }
}

/// `compare`: same initial data for every method, one CSV each in
/// `cfg.out_dir`, drift table (ratios relative to the first method).
pub fn compare(cfg: &Config) -> Result<String, CliError> {
    let methods = cfg
        .methods
        .iter()
        .map(|n| method(cfg, n))
        .collect::<Result<Vec<_>, _>>()?;
    let results = with_system(cfg, CompareTask { cfg, methods })?;
    let base = results[0].0.max_spectral_drift.max(f64::MIN_POSITIVE);
    let mut t = String::new();
    let _ = writeln!(
        t,
        "{:<10} {:>8} {:>14} {:>14} {:>12} {:>10} {:>8}",
        "method", "steps", "spectral", "energy", "ratio", "mean_it", "max_it"
    );
    let mut failure = None;
    for (s, err) in results {
        let _ = writeln!(
            t,
            "{:<10} {:>8} {:>14.3e} {:>14.3e} {:>12.3e} {:>10.2} {:>8}",
            s.method,
            s.steps_completed,
            s.max_spectral_drift,
            s.max_energy_drift,
            s.max_spectral_drift / base,
            s.mean_iters,
            s.max_step_iters
        );
        if failure.is_none() {
            failure = err;
        }
    }
    let _ = writeln!(t, "wrote {}", cfg.out_dir.display());
    match failure {
        None => Ok(t),
        Some(e) => {
            print!("{t}");
            Err(CliError::NonConvergence(e))
        }
    }
}
