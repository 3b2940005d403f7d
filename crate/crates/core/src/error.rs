use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by an expression that is identically zero")]
    DivisionByZeroExpr,
    #[error("cannot invert {0}: denominator outside the supported localization")]
    UnsupportedDenominator(String),
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("unsupported representation: n={n}, 2mu={two_mu}")]
    UnsupportedRep { n: usize, two_mu: u32 },
    #[error("Casimir sum is not a multiple of the identity")]
    NotScalar,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("derivative order {0} exceeds the bound {1}")]
    OrderExceeded(u32, u32),
    #[error("coefficient is not polynomial in x, r and 1/r: {0}")]
    NonPolynomialCoefficient(String),
    #[error("field strength conventions disagree: {0}")]
    ConventionMismatch(String),
    #[error("weight {0} is not dominant")]
    NonDominant(String),
    #[error("integral diverges at the origin: r^{0} against e^(-λr)")]
    DivergentIntegral(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
