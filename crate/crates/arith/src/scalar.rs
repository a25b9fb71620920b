//! Reduced rational functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::ArithError;
use crate::gcd::gcd;
use crate::poly::Polynomial;
use crate::symbol::{Symbol, SymbolTable};
use crate::Rational;

/// A quotient of polynomials in canonical form: numerator and denominator are
/// coprime, and the denominator has coprime integer coefficients with a
/// positive leading coefficient under the monomial order. Two equal
/// rational functions therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Polynomial,
    den: Polynomial,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Scalar, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.constant_value() {
            return Scalar {
                num: num.scale(&c.recip()),
                den: Polynomial::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).unwrap().expect("gcd divides numerator"),
                den.div_exact(&g).unwrap().expect("gcd divides denominator"),
            )
        };
        let (content, den) = den.integer_primitive();
        Scalar {
            num: num.scale(&content.recip()),
            den,
        }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_poly(Polynomial::one())
    }

    pub fn integer(n: i64) -> Scalar {
        Scalar::from_poly(Polynomial::integer(n))
    }

    pub fn rational(n: i64, d: i64) -> Scalar {
        Scalar::constant(Rational::new(n.into(), d.into()))
    }

    pub fn constant(c: Rational) -> Scalar {
        Scalar::from_poly(Polynomial::constant(c))
    }

    pub fn var(sym: Symbol) -> Scalar {
        Scalar::from_poly(Polynomial::var(sym))
    }

    pub fn from_poly(p: Polynomial) -> Scalar {
        Scalar {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn to_polynomial(&self) -> Result<Polynomial, ArithError> {
        self.as_polynomial()
            .cloned()
            .ok_or_else(|| ArithError::NotPolynomial(self.to_string()))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one_poly() {
                return Scalar::from_poly(&self.num + &rhs.num);
            }
            return Self::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::reduce(num, &self.den * &rhs.den)
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one_poly() && rhs.den.is_one_poly() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        Self::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Scalar, ArithError> {
        Scalar::one().div(self)
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        Scalar {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Simultaneous substitution of scalars for symbols.
    ///
    /// Fails with `DivisionByZero` when the substituted denominator vanishes.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Scalar>) -> Result<Scalar, ArithError> {
        if bindings.values().all(|v| v.is_polynomial()) {
            let pb: BTreeMap<Symbol, Polynomial> = bindings
                .iter()
                .map(|(s, v)| (s.clone(), v.num.clone()))
                .collect();
            let num = self.num.substitute(&pb);
            let den = self.den.substitute(&pb);
            return Scalar::new(num, den);
        }
        let num = substitute_rational(&self.num, bindings);
        let den = substitute_rational(&self.den, bindings);
        num.div(&den)
    }

    /// Substitution restricted to symbols declared in `table`.
    pub fn substitute_checked(
        &self,
        table: &SymbolTable,
        bindings: &BTreeMap<Symbol, Scalar>,
    ) -> Result<Scalar, ArithError> {
        if let Some(bad) = bindings.keys().find(|s| !table.contains(s)) {
            return Err(ArithError::UnknownSymbol(bad.to_string()));
        }
        self.substitute(bindings)
    }

    pub fn evaluate(&self, values: &BTreeMap<Symbol, Rational>) -> Result<Scalar, ArithError> {
        let bindings = values
            .iter()
            .map(|(s, v)| (s.clone(), Scalar::constant(v.clone())))
            .collect();
        self.substitute(&bindings)
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    pub fn contains_symbol(&self, sym: &Symbol) -> bool {
        self.num.contains_symbol(sym) || self.den.contains_symbol(sym)
    }

    /// `self` as `Σ coeff·u + rest` for the given linear symbols. Fails when
    /// a listed symbol appears nonlinearly or in the denominator.
    pub fn linear_coefficients(
        &self,
        linear: &[Symbol],
    ) -> Result<(BTreeMap<Symbol, Scalar>, Scalar), ArithError> {
        for u in linear {
            if self.den.contains_symbol(u) || self.num.degree_in(u) > 1 {
                return Err(ArithError::NotPolynomial(format!(
                    "{self} is not linear in {u}"
                )));
            }
        }
        let by_mono = self.num.coefficients_in_all(linear);
        let mut coeffs = BTreeMap::new();
        let mut rest = Scalar::zero();
        for (m, c) in by_mono {
            let part = Scalar::reduce(c, self.den.clone());
            match m.factors() {
                [] => rest = part,
                [(s, 1)] => {
                    coeffs.insert(s.clone(), part);
                }
                _ => {
                    return Err(ArithError::NotPolynomial(format!(
                        "{self} has a product of unknowns {m}"
                    )))
                }
            }
        }
        Ok((coeffs, rest))
    }
}

trait IsOne {
    fn is_one_poly(&self) -> bool;
}

impl IsOne for Polynomial {
    fn is_one_poly(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }
}

fn substitute_rational(p: &Polynomial, bindings: &BTreeMap<Symbol, Scalar>) -> Scalar {
    let mut acc = Scalar::zero();
    let mut cache: BTreeMap<(Symbol, u32), Scalar> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut term = Scalar::constant(c.clone());
        for (s, e) in m.factors() {
            let factor = match bindings.get(s) {
                Some(v) => cache
                    .entry((s.clone(), *e))
                    .or_insert_with(|| v.pow(*e))
                    .clone(),
                None => Scalar::var(s.clone()).pow(*e),
            };
            term = term.mul(&factor);
        }
        acc = acc.add(&term);
    }
    acc
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl From<Polynomial> for Scalar {
    fn from(p: Polynomial) -> Self {
        Scalar::from_poly(p)
    }
}

impl From<Symbol> for Scalar {
    fn from(s: Symbol) -> Self {
        Scalar::var(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl From<Rational> for Scalar {
    fn from(c: Rational) -> Self {
        Scalar::constant(c)
    }
}

/// Canonical text. Polynomials print bare; proper fractions print as
/// `(num)/(den)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str) -> Scalar {
        Scalar::var(Symbol::parameter(n))
    }

    #[test]
    fn rational_addition() {
        let s = Scalar::rational(1, 2).add(&Scalar::rational(1, 3));
        assert_eq!(s, Scalar::rational(5, 6));
        assert_eq!(s.to_string(), "5/6");
    }

    #[test]
    fn difference_of_squares() {
        let d = p("d");
        let one = Scalar::one();
        let prod = (&d - &one).mul(&(&d + &one));
        assert_eq!(prod, &d.mul(&d) - &one);
    }

    #[test]
    fn gcd_cancellation() {
        let bpp = p("b″");
        let b = p("b");
        let diff = &bpp - &b;
        let other = &diff - &Scalar::one();
        let q = diff.mul(&other).div(&diff).unwrap();
        assert_eq!(q, other);
        assert_eq!(q.mul(&diff), diff.mul(&other));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(p("x").div(&Scalar::zero()), Err(ArithError::DivisionByZero));
        assert!(Scalar::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn denominators_are_primitive() {
        let d = p("d");
        let s = Scalar::one().div(&(&d.scale(&Rational::from_integer((-2).into())) + &Scalar::one())).unwrap();
        assert_eq!(s.to_string(), "(−1)/(2·d−1)");
        assert_eq!(s.denominator().leading_coefficient(), Rational::from_integer(2.into()));
    }

    #[test]
    fn substitution_cancels() {
        let bp = Symbol::parameter("b′");
        let b = p("b");
        let e = &Scalar::var(bp.clone()) - &b;
        let mut bind = BTreeMap::new();
        bind.insert(bp, b.clone());
        assert!(e.substitute(&bind).unwrap().is_zero());
    }

    #[test]
    fn substitution_into_vanishing_denominator_fails() {
        let x = Symbol::parameter("x");
        let e = Scalar::one().div(&Scalar::var(x.clone())).unwrap();
        let mut bind = BTreeMap::new();
        bind.insert(x, Scalar::zero());
        assert_eq!(e.substitute(&bind), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn linear_coefficients_split() {
        let u = Symbol::unknown("a", vec![vec![0]]);
        let w = Symbol::unknown("a", vec![vec![1]]);
        let x = p("x");
        let e = &(&x.mul(&Scalar::var(u.clone())) + &Scalar::var(w.clone())) + &Scalar::integer(3);
        let (c, rest) = e.linear_coefficients(&[u.clone(), w.clone()]).unwrap();
        assert_eq!(c[&u], x);
        assert_eq!(c[&w], Scalar::one());
        assert_eq!(rest, Scalar::integer(3));
        let bad = Scalar::var(u.clone()).mul(&Scalar::var(w.clone()));
        assert!(bad.linear_coefficients(&[u, w]).is_err());
    }
}
