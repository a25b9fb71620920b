//! Exact arithmetic kernel: arbitrary-precision rationals, sparse
//! multivariate polynomials over interned symbols, and reduced rational
//! functions, with gcd, resultants and rational root enumeration.

mod error;
mod gcd;
mod monomial;
mod parse;
mod poly;
mod resultant;
mod roots;
mod scalar;
mod symbol;

pub use error::ArithError;
pub use gcd::gcd;
pub use monomial::Monomial;
pub use parse::{parse_integer_index, parse_scalar, SymbolResolver};
pub use poly::Polynomial;
pub use resultant::{determinant, resultant};
pub use roots::{deflate, rational_roots};
pub use scalar::Scalar;
pub use symbol::{Symbol, SymbolKind, SymbolTable};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `q` divides `p`: the exact quotient when it exists.
pub fn poly_divides(q: &Polynomial, p: &Polynomial) -> Result<Option<Polynomial>, ArithError> {
    if q.is_zero() {
        return Err(ArithError::ZeroPolynomial("divisor"));
    }
    p.div_exact(q)
}
