use std::fmt;

/// Exit codes: 2 configuration, 3 solver non-convergence, 4 I/O.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    NonConvergence(isork::Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::NonConvergence(e) => write!(f, "solver failed: {e}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<isork::Error> for CliError {
    fn from(e: isork::Error) -> Self {
        if e.is_non_convergence() || matches!(e.root(), isork::Error::EigenFailure) {
            CliError::NonConvergence(e)
        } else if matches!(e.root(), isork::Error::Io(_)) {
            CliError::Io(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
