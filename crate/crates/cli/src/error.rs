use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Json {
        context: String,
        source: serde_json::Error,
    },
    #[error("{context}: {message}")]
    Schema { context: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Doc {
        context: String,
        source: pifactor_core::Error,
    },
    #[error(transparent)]
    Math(#[from] pifactor_core::Error),
}

impl CliError {
    pub fn schema(context: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Schema {
            context: context.into(),
            message: message.into(),
        }
    }

    pub fn doc(context: impl Into<String>, source: pifactor_core::Error) -> Self {
        Self::Doc {
            context: context.into(),
            source,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Self::Io { .. } => "IO_ERROR",
            Self::Json { source, .. } if source.is_data() => "SCHEMA_ERROR",
            Self::Json { .. } => "PARSE_ERROR",
            Self::Schema { .. } => "SCHEMA_ERROR",
            Self::Usage(_) => "USAGE_ERROR",
            Self::Doc { source, .. } | Self::Math(source) => source.code(),
        }
    }

    /// 1 for input problems, 2 for mathematical violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Doc { source, .. } | Self::Math(source) => core_exit_code(source),
            _ => 1,
        }
    }

    /// The wrapped core error, if any.
    pub fn core(&self) -> Option<&pifactor_core::Error> {
        match self {
            Self::Doc { source, .. } | Self::Math(source) => Some(source),
            _ => None,
        }
    }
}

fn core_exit_code(e: &pifactor_core::Error) -> i32 {
    use pifactor_core::Error as E;
    match e {
        E::Parse { .. }
        | E::ZeroDenominator
        | E::EmptySequence
        | E::NonincreasingExponents
        | E::ZeroCoefficient
        | E::BadParams(_)
        | E::FieldMismatch
        | E::RankMismatch(..) => 1,
        _ => 2,
    }
}
