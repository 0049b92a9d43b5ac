use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid signature ({p},{q}): both p and q must be at least 3")]
    InvalidSignature { p: u32, q: u32 },

    #[error("unsupported tessellation class for ({p},{q}): {class}")]
    UnsupportedClass { p: u32, q: u32, class: &'static str },

    #[error("operands belong to different quadratic fields")]
    FieldMismatch,

    #[error("arithmetic error: {0}")]
    Arithmetic(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("budget exceeded: needed {needed}, budget {budget}")]
    Budget { needed: u64, budget: u64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
