use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("unresolved {kind} `{name}`")]
    Unresolved { kind: &'static str, name: String },
    #[error("name `{0}` is declared twice")]
    DuplicateName(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: abscon_core::Error,
    },
    #[error("invalid instance: {0}")]
    Invalid(String),
}

impl CliError {
    pub(crate) fn core(context: impl Into<String>) -> impl FnOnce(abscon_core::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Core { context, source }
    }

    pub(crate) fn from_json(path: &str, e: serde_json::Error) -> CliError {
        CliError::Parse { path: path.to_string(), line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
