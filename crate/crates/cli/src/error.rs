use std::fmt;
use std::process::ExitCode;

/// Failure classes with their stable exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input, bad flags: exit 2.
    Input(String),
    /// Solver stopped without certifying the eigenvalue: exit 3.
    NotConverged(String),
    /// A mathematical check failed: exit 4.
    Check(String),
    /// A size guard refused the work: exit 5.
    Capacity(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Input(_) => 2,
            CliError::NotConverged(_) => 3,
            CliError::Check(_) => 4,
            CliError::Capacity(_) => 5,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::NotConverged(m) => write!(f, "not converged: {m}"),
            CliError::Check(m) => write!(f, "check failed: {m}"),
            CliError::Capacity(m) => write!(f, "{m}"),
        }
    }
}

impl From<hyperspec::Error> for CliError {
    fn from(e: hyperspec::Error) -> Self {
        use hyperspec::Error as E;
        match e {
            E::Capacity(_) => CliError::Capacity(e.to_string()),
            E::NotConverged(_) => CliError::NotConverged(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
