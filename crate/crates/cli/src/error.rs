use thiserror::Error;

/// Failures of a command, each with a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("{0}")]
    Precondition(String),

    #[error("no toric deformations: the polygon has no lattice Minkowski decomposition")]
    NoDeformations,

    #[error("{0}")]
    Mismatch(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::NoDeformations => 4,
            CliError::Mismatch(_) => 5,
        }
    }

    /// Wraps a library error with the name of the stage that raised it.
    pub fn from_stage(stage: &str, e: toricdef_core::Error) -> Self {
        let msg = format!("{stage}: {e}");
        if e.is_validation() {
            CliError::Validation(msg)
        } else {
            CliError::Precondition(msg)
        }
    }
}

impl From<toricdef_core::Error> for CliError {
    fn from(e: toricdef_core::Error) -> Self {
        CliError::from_stage("polyhedral", e)
    }
}
