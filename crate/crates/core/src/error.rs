use std::io;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A line of a trial log could not be turned into a record.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate record for question {question_id}, trial {trial}")]
    DuplicateKey { question_id: String, trial: u64 },

    #[error("no records match agent {agent:?} and benchmark {benchmark:?}")]
    NoRecords { agent: String, benchmark: String },

    /// Arguments outside an operation's domain.
    #[error("{0}")]
    InvalidInput(String),

    /// The data are well formed but the requested statistic is undefined.
    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Error::Degenerate(_))
    }
}
