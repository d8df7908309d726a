use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),
    /// Well-formed inputs that cannot describe one object (e.g. p' not dividing the order).
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    /// Two independent computations of the same quantity disagreed.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    /// The oracle declined to answer at the requested truncation depth.
    #[error("truncation depth {depth} is too shallow (need more than {bound})")]
    TooShallow { depth: usize, bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
