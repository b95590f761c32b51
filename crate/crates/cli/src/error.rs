use thiserror::Error;

/// Failures surfaced by the command line, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] boxchrom::Error),

    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use boxchrom::Error as E;
        match self {
            CliError::Usage(_) | CliError::File { .. } => EXIT_USAGE,
            CliError::Core(e) => match e {
                E::Timeout(_) | E::Internal(_) | E::SolverCrash(_) => EXIT_INTERNAL,
                E::Structure { .. } | E::Realization(_) | E::Certification { .. } => EXIT_NEGATIVE,
                _ => EXIT_USAGE,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;
    use boxchrom::{Error, SearchStats};

    #[test]
    fn exit_codes_follow_the_error_kind() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_USAGE);
        assert_eq!(CliError::from(Error::Timeout(SearchStats::default())).exit_code(), EXIT_INTERNAL);
        assert_eq!(CliError::from(Error::Internal("x".into())).exit_code(), EXIT_INTERNAL);
        assert_eq!(
            CliError::from(Error::Structure { premise: 'b', detail: String::new() }).exit_code(),
            EXIT_NEGATIVE
        );
        assert_eq!(CliError::from(Error::Parse("x".into())).exit_code(), EXIT_USAGE);
        assert_eq!(EXIT_OK, 0);
    }
}
