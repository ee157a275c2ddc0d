use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The sampling grid cannot resolve the requested number of modes.
    #[error(
        "resolution error: mode {k} has {points_per_wavelength:.2} samples per wavelength, need at least {required}"
    )]
    Resolution {
        k: usize,
        points_per_wavelength: f64,
        required: f64,
    },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A reconstruction denominator vanished at an index that is not skipped.
    #[error("conditioning error: denominator {denominator:e} at mode {k}")]
    Conditioning { k: usize, denominator: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Failure inside one stage of an experiment pipeline.
    #[error("stage `{stage}` failed: {source} (config: {config})")]
    Stage {
        stage: &'static str,
        config: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit code used by the command line front end.
    ///
    /// 2 for configuration problems, 3 for bad or missing data, 4 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Config(_) => 2,
            Error::InsufficientData(_) | Error::Parse { .. } | Error::Io(_) => 3,
            Error::Resolution { .. } | Error::Conditioning { .. } => 4,
            Error::Stage { source, .. } => source.exit_code(),
        }
    }
}
