use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is outside {range}")]
    Domain {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph too small: need at least {need} vertices, got {got}")]
    TooSmall { need: usize, got: usize },

    #[error("vertex set is empty")]
    EmptySet,

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error(
        "subsample budget exhausted: {successes} of {required} successes after {attempts} attempts"
    )]
    BudgetExhausted {
        successes: usize,
        required: usize,
        attempts: usize,
    },

    #[error("stage {stage} has only {size} vertices")]
    DegenerateStage { stage: usize, size: usize },

    #[error("unsupported for this graphon variant: {0}")]
    Unsupported(&'static str),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the command-line tool: 2 validation,
    /// 3 parse or I/O, 4 subsample budget exhausted.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) => 3,
            Error::BudgetExhausted { .. } => 4,
            _ => 2,
        }
    }
}

pub(crate) fn check_unit(what: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value,
            range: "[0, 1]",
        })
    }
}
