use crate::series::Exponent;
use thiserror::Error;

/// Failures raised by series arithmetic and the special-function builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has no nonzero term below its truncation order, cannot invert")]
    ZeroLeadingTerm,
    #[error("substitution ratio must be positive, got {0}")]
    NonPositiveRatio(Exponent),
    #[error("modulus exponent must be positive, got {0}")]
    NonPositiveBase(Exponent),
    #[error("q -> -q needs integral exponents, found {0}")]
    FractionalExponent(Exponent),
    #[error("series known only below q^{have}, comparison needs q^{needed}")]
    InsufficientOrder { needed: Exponent, have: Exponent },
    #[error("infinite product with argument exponent {0} does not converge")]
    DivergentProduct(Exponent),
    #[error("argument exponent {qexp} lies outside the strip [0, {base})")]
    OutOfStrip { qexp: Exponent, base: Exponent },
    #[error("x*z is an integral power of the modulus: the Appell-Lerch sum has a pole")]
    PoleAtXZ,
    #[error("theta function in a denominator vanishes identically")]
    ThetaZeroDenominator,
    #[error("invalid string label (N={level}, ell={ell}, m={m}): {reason}")]
    InvalidLabel { level: i64, ell: i64, m: i64, reason: &'static str },
    #[error("parity condition violated: {0}")]
    InvalidParity(String),
    #[error("closed-form theta side is only tabulated for levels 1..=4, got {0}")]
    UnsupportedLevel(i64),
    #[error("negative power of a series whose leading exponent is unknown")]
    UnknownLeadingTerm,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{path}: {source}")]
    At { path: String, source: Box<Error> },
}

impl Error {
    /// Innermost error, with any location wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
