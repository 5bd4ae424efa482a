use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("not invertible: zero constant term")]
    NotInvertible,
    #[error("exp requires zero constant term")]
    ExpDomain,
    #[error("log requires unit constant term")]
    LogDomain,
    #[error("pairing diverges at fixed hbar-order: neither argument is hbar-dominated")]
    PairingDiverges,
    #[error("element is not hbar-dominated")]
    NotDominated,
    #[error("singular covariance")]
    SingularCovariance,
    #[error("truncation window exhausted: {0}")]
    Window(String),
    #[error("denominator is zero; S is undefined for 1/0-type input")]
    ZeroDenominator,
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("singular linking matrix")]
    SingularMatrix,
    #[error("invalid lens space L({0},{1}): {2}")]
    InvalidLens(i64, i64, String),
    #[error("invalid Seifert data: {0}")]
    InvalidSeifert(String),
    #[error("not a rational homology sphere (e0 = 0)")]
    NotRationalHomologySphere,
    #[error("singular covariance (unknot with framing 0 is not a rational homology sphere surgery)")]
    ZeroFraming,
    #[error("not an integral homology sphere presentation: {0}")]
    NotIntegralHomologySphere(String),
    #[error("contour not implemented for e0 <= 0")]
    ContourNotImplemented,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
