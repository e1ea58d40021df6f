use thiserror::Error;

use crate::gaussian::GaussInt;

/// Errors raised by the arithmetic and analytic routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero in Z[i]")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("{0} is zero")]
    ZeroInput(&'static str),
    #[error("{0} must be odd (norm {1} is even)")]
    EvenInput(&'static str, u64),
    #[error("{0} is not square-free")]
    NotSquareFree(GaussInt),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("cannot factor norm {0}: composite cofactor beyond trial-division range")]
    FactorizationLimit(u64),
    #[error("modulus norm {norm} exceeds the direct-sum guard {limit}")]
    SizeGuard { norm: u64, limit: u64 },
    #[error("pole of {0} at s = {1}")]
    Pole(&'static str, String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("coefficient table too short: need n <= {needed}, have {have}")]
    CutoffInsufficient { needed: usize, have: usize },
    #[error("coefficient cutoff {0} exceeds the memory guard")]
    MemoryGuard(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument tracking of log f failed near t = {0}")]
    BranchTracking(f64),
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
