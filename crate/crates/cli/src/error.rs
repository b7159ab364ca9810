use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Numerical(gw_decohere_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl From<gw_decohere_core::Error> for CliError {
    fn from(e: gw_decohere_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e)
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl CliError {
    /// 1 invalid config, 2 numerical failure, 3 I/O failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}
