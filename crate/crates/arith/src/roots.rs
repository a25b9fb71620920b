//! Rational roots of univariate polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ArithError;
use crate::poly::Polynomial;
use crate::symbol::Symbol;
use crate::Rational;

/// All rational roots in ascending order, without multiplicity.
///
/// Candidates `±p/q` come from the divisors of the trailing and leading
/// coefficients of the integer-cleared polynomial; each candidate is checked
/// by exact evaluation. A constant nonzero polynomial has no roots.
pub fn rational_roots(p: &Polynomial) -> Result<Vec<Rational>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial("rational_roots"));
    }
    let Some(x) = p.univariate_symbol()? else {
        return Ok(Vec::new());
    };
    let coeffs = integer_coefficients(p, &x);
    let mut roots = Vec::new();
    // Strip the root at zero so the trailing coefficient is nonzero.
    let low = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    if low > 0 {
        roots.push(Rational::zero());
    }
    let coeffs = &coeffs[low..];
    if coeffs.len() > 1 {
        let lead = coeffs.last().unwrap().abs();
        let trail = coeffs[0].abs();
        let dq = divisors(&lead);
        let dp = divisors(&trail);
        for num in &dp {
            for den in &dq {
                if !num.gcd(den).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = Rational::new(num * BigInt::from(sign), den.clone());
                    if eval_int(coeffs, &r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Divides out every rational root (with multiplicity) and returns the roots
/// with the cofactor left over, which has no rational roots.
pub fn deflate(p: &Polynomial) -> Result<(Vec<(Rational, u32)>, Polynomial), ArithError> {
    let roots = rational_roots(p)?;
    let Some(x) = p.univariate_symbol()? else {
        return Ok((Vec::new(), p.clone()));
    };
    let mut rest = p.clone();
    let mut out = Vec::new();
    for r in roots {
        let lin = &Polynomial::var(x.clone()) - &Polynomial::constant(r.clone());
        let mut mult = 0;
        while let Some(q) = rest.div_exact(&lin)? {
            rest = q;
            mult += 1;
        }
        out.push((r, mult));
    }
    Ok((out, rest))
}

fn integer_coefficients(p: &Polynomial, x: &Symbol) -> Vec<BigInt> {
    let (_, prim) = p.integer_primitive();
    let deg = prim.degree_in(x) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (e, c) in prim.coefficients_in(x) {
        let c = c.constant_value().expect("univariate");
        out[e as usize] = c.to_integer();
    }
    out
}

fn eval_int(coeffs: &[BigInt], r: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * r + Rational::from_integer(c.clone());
    }
    acc
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            let j = &n / &i;
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(Symbol::parameter("x"))
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x() * &x()) - &Polynomial::one();
        assert_eq!(rational_roots(&p).unwrap(), vec![q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn no_rational_roots() {
        let p = &(&x() * &x()) + &Polynomial::one();
        assert!(rational_roots(&p).unwrap().is_empty());
    }

    #[test]
    fn fractional_and_zero_roots() {
        // x(2x−1)(3x+2)
        let p = &(&x() * &(&x().scale(&q(2, 1)) - &Polynomial::one()))
            * &(&x().scale(&q(3, 1)) + &Polynomial::integer(2));
        assert_eq!(rational_roots(&p).unwrap(), vec![q(-2, 3), q(0, 1), q(1, 2)]);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert!(rational_roots(&Polynomial::zero()).is_err());
    }

    #[test]
    fn multivariate_is_an_error() {
        let y = Polynomial::var(Symbol::parameter("y"));
        assert!(rational_roots(&(&x() + &y)).is_err());
    }

    #[test]
    fn deflation_reports_multiplicity_and_cofactor() {
        let lin = &x() - &Polynomial::one();
        let irr = &(&x() * &x()) - &Polynomial::integer(2);
        let p = &(&lin * &lin) * &irr;
        let (roots, rest) = deflate(&p).unwrap();
        assert_eq!(roots, vec![(q(1, 1), 2)]);
        assert_eq!(rest.primitive(), irr);
    }
}
