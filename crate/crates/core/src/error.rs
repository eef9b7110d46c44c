use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants map onto CLI exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("malformed header: instance must begin with a decimal qubit count")]
    MalformedHeader,

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("range error at offset {offset}: {message}")]
    Range { offset: usize, message: String },

    #[error("unknown alias ({k}): dictionary has {m} entries")]
    UnknownAlias { k: usize, m: usize },

    #[error("arity mismatch at substring {position}: ({k}) names a {actual}-qubit gate but the substring has {expected} qubit argument(s)")]
    Arity {
        position: usize,
        k: usize,
        expected: usize,
        actual: usize,
    },

    #[error("invalid dictionary: {0}")]
    InvalidDictionary(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("phases are indistinguishable within 64 bits")]
    IndistinguishablePhases,

    #[error("unsafe phases: {0}")]
    UnsafePhases(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// CLI exit status for this error: 2 for parse and validation
    /// failures, 4 for resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
