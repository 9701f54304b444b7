use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient size m={0} outside the supported range 3..=16")]
    AmbientOutOfRange(u32),

    #[error("subsets live in different ground sets (m={left} vs m={right})")]
    AmbientMismatch { left: u8, right: u8 },

    #[error("element {element} is not in {{1..{m}}}")]
    ElementOutOfRange { element: u32, m: u8 },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("gene {gene} does not contain the top element {m}")]
    GeneMissingTop { gene: String, m: u8 },

    #[error("invalid genetic code {code}: {reason}")]
    InvalidCode { code: String, reason: String },

    #[error("code {0} carries almost-short genes; a chamber code is required")]
    NotChamberCode(String),

    #[error("code {0} is not in the image of the plus map")]
    NotInPlusImage(String),

    #[error("code {0} is not realizable")]
    NotRealizable(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },

    #[error("run stopped after {0} items")]
    Interrupted(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_owned(),
            reason: reason.into(),
        }
    }

    /// True for errors that signal a broken internal invariant rather than bad input.
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
