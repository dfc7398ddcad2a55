use thiserror::Error;

/// Errors raised by the algebra, construction, classification and parsing layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} of the zero polynomial is undefined")]
    ZeroPolynomial(&'static str),
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("the zero function has no {0}")]
    ZeroFunction(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("input is constant")]
    ConstantFunction,
    #[error("second derivative vanishes identically (f'' = 0)")]
    SecondDerivativeVanishes,
    #[error("hypothesis violated: f''/f has zeros, numerator {numerator}")]
    HypothesisViolated { numerator: String },
    #[error("family/instance mismatch: {0}")]
    FamilyMismatch(String),
    #[error("{tag} is a catalog-only family and has no constructor")]
    CatalogOnly { tag: &'static str },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("division by the zero function in `{text}` at line {line}, column {column}")]
    DivisionByZero {
        text: String,
        line: usize,
        column: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
