use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse: {0}")]
    Parse(String),
    #[error("validation: {0}")]
    Validation(String),
    #[error("work-cap: {0}")]
    WorkCap(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Validation(_) => 2,
            CliError::WorkCap(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    /// `klab: <kind>: <message>` on one line.
    pub fn one_line(&self) -> String {
        format!("klab: {self}").replace(['\n', '\r'], " ")
    }
}

impl From<klab_core::Error> for CliError {
    fn from(err: klab_core::Error) -> Self {
        use klab_core::Error as E;
        match err {
            E::WorkCapExceeded { .. } | E::ModulusTooLarge { .. } | E::LimitTooLarge { .. } => {
                CliError::WorkCap(err.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        CliError::Io(err.to_string())
    }
}
