use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Numeric(#[from] mirror_radiance::Error),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use mirror_radiance::Error as E;
        match self {
            CliError::Verification(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numeric(E::InvalidParams(_) | E::Domain(_)) => 2,
            CliError::Numeric(E::NonConvergence { .. } | E::StepUnderflow { .. }) => 3,
        }
    }
}
