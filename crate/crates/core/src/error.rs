use core::fmt;

/// Errors raised by the simulator core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument was outside its documented domain.
    InvalidArgument(&'static str),
    /// Two matrices had incompatible dimensions.
    DimensionMismatch { expected: usize, found: usize },
    /// A Kraus set handed to the operator-sum routine is not trace preserving.
    IncompleteKraus { residual: f64 },
    /// A freshly constructed channel failed its completeness check.
    Construction { residual: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::IncompleteKraus { residual } => {
                write!(f, "kraus set violates completeness (residual {residual:e})")
            }
            Error::Construction { residual } => {
                write!(
                    f,
                    "channel construction failed completeness (residual {residual:e})"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
