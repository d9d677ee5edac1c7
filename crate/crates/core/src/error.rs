use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Matrix or tensor shapes do not fit together.
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unknown {kind} `{name}`")]
    Lookup { kind: &'static str, name: String },

    /// A diagram slice (or a composite boundary) does not match the signs
    /// flowing into it. `slice` is `None` for whole-diagram boundaries.
    #[error("type error{}: expected `{expected}`, found `{found}`", .slice.map(|i| format!(" at slice {i}")).unwrap_or_default())]
    Type {
        slice: Option<usize>,
        expected: String,
        found: String,
    },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Structural validation failed (bad topology, non-monotone endo, ...).
    #[error("invalid {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn lookup(kind: &'static str, name: impl Into<String>) -> Self {
        Error::Lookup {
            kind,
            name: name.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
