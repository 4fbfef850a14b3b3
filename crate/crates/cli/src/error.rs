use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(sectordet::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("spec file: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for bad input, 2 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Json(_) | CliError::Io(_) => 1,
            CliError::Numerical(_) | CliError::Csv(_) => 2,
        }
    }
}

impl From<sectordet::Error> for CliError {
    fn from(e: sectordet::Error) -> Self {
        use sectordet::Error as E;
        match e {
            E::Domain(_) | E::MethodMismatch { .. } | E::NearRational { .. } | E::InvalidSpec(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numerical(e),
        }
    }
}
