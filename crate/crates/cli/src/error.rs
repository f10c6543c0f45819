use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] symcover::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 3 for resource guards and environment failures,
    /// 1 for certificates that fail to check.
    pub fn exit_code(&self) -> u8 {
        use symcover::Error as E;
        match self {
            CliError::Usage(_) | CliError::Json(_) => 2,
            CliError::Core(E::Domain(_) | E::DegreeMismatch { .. } | E::Applicability { .. })
            | CliError::Core(E::InvalidShape(_)) => 2,
            CliError::Core(E::Certificate(_)) => 1,
            CliError::Core(E::Resource(_) | E::Undecidable { .. }) | CliError::Io(_) => 3,
        }
    }

    pub fn hint(&self) -> Option<&'static str> {
        match self {
            CliError::Core(symcover::Error::Resource(_)) => {
                Some("rerun with --force to lift the limit")
            }
            _ => None,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::from(symcover::Error::Resource("x".into())).exit_code(),
            3
        );
        assert_eq!(
            CliError::from(symcover::Error::Certificate("x".into())).exit_code(),
            1
        );
        assert!(CliError::from(symcover::Error::Resource("x".into()))
            .hint()
            .is_some());
    }
}
