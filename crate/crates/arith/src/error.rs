use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}: polynomial must be nonzero")]
    ZeroPolynomial(&'static str),
    #[error("expected a polynomial in at most one symbol, found {0}")]
    NotUnivariate(String),
    #[error("polynomial has degree 0 in {0}")]
    ZeroDegree(String),
    #[error("symbol `{0}` is not declared")]
    UnknownSymbol(String),
    #[error("symbol `{0}` already declared with a different kind")]
    DuplicateSymbol(String),
    #[error("expected a polynomial, found a proper fraction {0}")]
    NotPolynomial(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
