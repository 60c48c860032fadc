use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Core(#[from] qinfer::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 for bad input, 2 for numerical failure.
    pub fn exit_code(&self) -> u8 {
        use qinfer::Error as E;
        match self {
            CliError::InvalidConfig(_) | CliError::Io(_) | CliError::Csv(_) => 1,
            CliError::Core(e) => match e {
                E::MeanOutOfRange { .. }
                | E::Infeasible { .. }
                | E::InvalidParams(_)
                | E::InvalidDistribution(_)
                | E::DegenerateSpectrum(_)
                | E::NotNormalized(_)
                | E::NotOrthonormal(_) => 1,
                E::NotHermitian(_)
                | E::NotPsd(_)
                | E::InvalidTrace(_)
                | E::NonRealExpectation(_)
                | E::NoConvergence(_) => 2,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidConfig(msg.into())
}
