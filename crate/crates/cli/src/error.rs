use thiserror::Error;

/// CLI failure, carrying its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] symdet::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0} of the verified properties failed")]
    VerifyFailed(usize),
}

impl CliError {
    /// Documented exit codes:
    ///
    /// | code | meaning |
    /// |------|---------|
    /// | 1 | problem file or argument could not be parsed |
    /// | 2 | dimension or arity mismatch |
    /// | 3 | singular matrix or division by zero |
    /// | 4 | eigenvalue evaluation on non-commuting generators |
    /// | 5 | symbolic expansion of negative exponents |
    /// | 6 | `verify` found failing properties |
    pub fn exit_code(&self) -> i32 {
        use symdet::Error as E;
        match self {
            CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                E::InvalidArgument(_) => 1,
                E::DimensionMismatch { .. } | E::ArityMismatch(_) | E::LeibnizCap { .. } => 2,
                E::SingularMatrix { .. } | E::DivisionByZero(_) => 3,
                E::CommutationRequired => 4,
                E::UnsupportedSymbolic(_) => 5,
            },
            CliError::VerifyFailed(_) => 6,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
