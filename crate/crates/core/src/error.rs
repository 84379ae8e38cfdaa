use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A brute-force enumeration would exceed the configured state cap.
    #[error("enumeration budget exceeded: need {required} states, cap is {cap}")]
    Budget { required: u128, cap: u128 },

    /// A spoke with reduced alphabet size <= 1 was asked to absorb insertions.
    #[error("degenerate spoke: reduced alphabet {reduced} cannot absorb insertion rate {gamma}")]
    DegenerateSpoke { reduced: usize, gamma: f64 },

    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(u32, u32),

    #[error("two independent oracle routes disagree: {0}")]
    OracleDisagreement(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown bound source `{0}`")]
    UnknownSource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget { .. } => 2,
            _ => 1,
        }
    }
}
