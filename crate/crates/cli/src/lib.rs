//! Command-line front end for `isork`: experiment runs, self-convergence
//! studies and method comparisons. Everything here is a thin layer over the
//! library; `main.rs` only parses arguments and maps errors to exit codes.

pub mod commands;
pub mod config;
pub mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Config, SystemKind, SEED_ENV};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "isork",
    version,
    about = "Isospectral symplectic Runge-Kutta experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one trajectory and write per-step diagnostics as CSV.
    Run(Overrides),
    /// Self-convergence study over `--h-list`; prints the fitted order.
    Convergence(Overrides),
    /// Run several methods from identical initial data.
    Compare(Overrides),
    /// Print the effective configuration as a config file.
    DumpConfig(Overrides),
}

/// Flags mirror the config keys. Values are validated by the same parser as
/// the config file.
#[derive(Debug, Default, Args)]
pub struct Overrides {
    /// Config file (`key = value` lines).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub system: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub method: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub steps: Option<String>,
    /// Falls back to $ISORK_SEED, then the config file.
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub record_every: Option<String>,
    /// conjugation | dcay
    #[arg(long, allow_hyphen_values = true)]
    pub update_form: Option<String>,
    /// left | right
    #[arg(long, allow_hyphen_values = true)]
    pub variant: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub solver_tol: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub solver_max_iters: Option<String>,
    /// Matrix size (toda n, zeitlin N).
    #[arg(long, allow_hyphen_values = true)]
    pub size: Option<String>,
    /// Three principal moments, e.g. `1,2,3`.
    #[arg(long, allow_hyphen_values = true)]
    pub inertia: Option<String>,
    /// inverse | forward
    #[arg(long, allow_hyphen_values = true)]
    pub laplacian: Option<String>,
    /// Custom tableau weights for `--method custom`.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub out: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub h_list: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_final: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub reference_h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub methods: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub out_dir: Option<String>,
}

impl Overrides {
    fn flags(&self) -> [(&'static str, Option<&String>); 20] {
        [
            ("system", self.system.as_ref()),
            ("method", self.method.as_ref()),
            ("h", self.h.as_ref()),
            ("steps", self.steps.as_ref()),
            ("seed", self.seed.as_ref()),
            ("record_every", self.record_every.as_ref()),
            ("update_form", self.update_form.as_ref()),
            ("variant", self.variant.as_ref()),
            ("solver_tol", self.solver_tol.as_ref()),
            ("solver_max_iters", self.solver_max_iters.as_ref()),
            ("size", self.size.as_ref()),
            ("inertia", self.inertia.as_ref()),
            ("laplacian", self.laplacian.as_ref()),
            ("weights", self.weights.as_ref()),
            ("out", self.out.as_ref()),
            ("h_list", self.h_list.as_ref()),
            ("t_final", self.t_final.as_ref()),
            ("reference_h", self.reference_h.as_ref()),
            ("methods", self.methods.as_ref()),
            ("out_dir", self.out_dir.as_ref()),
        ]
    }

    /// Defaults, then the config file, then `seed_env`, then flags.
    pub fn resolve(&self, seed_env: Option<&str>) -> Result<Config, CliError> {
        let mut cfg = Config::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            cfg.apply_file_text(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        }
        if let Some(seed) = seed_env {
            cfg.apply("seed", seed)
                .map_err(|e| CliError::Config(format!("{SEED_ENV}: {e}")))?;
        }
        for (key, value) in self.flags() {
            if let Some(v) = value {
                cfg.apply(key, v)
                    .map_err(|e| CliError::Config(format!("--{}: {e}", key.replace('_', "-"))))?;
            }
        }
        Ok(cfg)
    }
}

/// Run a parsed command; returns the text for standard output.
pub fn execute(cli: &Cli, seed_env: Option<&str>) -> Result<String, CliError> {
    match &cli.command {
        Command::Run(o) => commands::run(&o.resolve(seed_env)?),
        Command::Convergence(o) => commands::convergence(&o.resolve(seed_env)?),
        Command::Compare(o) => commands::compare(&o.resolve(seed_env)?),
        Command::DumpConfig(o) => Ok(o.resolve(seed_env)?.dump()),
    }
}
