//! Sparse multivariate polynomials over ℚ.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ArithError;
use crate::monomial::Monomial;
use crate::symbol::Symbol;
use crate::Rational;

/// A polynomial stored as a map from monomials to nonzero coefficients.
///
/// The map is ordered by the graded lexicographic monomial order, so the
/// leading term is the last entry.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(sym: Symbol) -> Self {
        Self::term(Monomial::var(sym), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in iter {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, sym: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.degree_in(sym)).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.symbols().cloned())
            .collect()
    }

    pub fn contains_symbol(&self, sym: &Symbol) -> bool {
        self.terms.keys().any(|m| m.degree_in(sym) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients with respect to `sym`: `self = Σ_k coeff[k]·sym^k`.
    pub fn coefficients_in(&self, sym: &Symbol) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, BTreeMap<Monomial, Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(sym);
            out.entry(e).or_default().insert(rest, c.clone());
        }
        out.into_iter()
            .map(|(e, terms)| (e, Polynomial { terms }))
            .collect()
    }

    /// The coefficient of `sym^exp`.
    pub fn coefficient(&self, sym: &Symbol, exp: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let (e, rest) = m.split(sym);
                (e == exp).then(|| (rest, c.clone()))
            })
            .collect();
        Polynomial { terms }
    }

    /// Coefficients with respect to a set of symbols, keyed by the monomial in
    /// those symbols.
    pub fn coefficients_in_all(&self, syms: &[Symbol]) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut inside = Vec::new();
            let mut rest = m.clone();
            for s in syms {
                let (e, r) = rest.split(s);
                if e > 0 {
                    inside.push((s.clone(), e));
                }
                rest = r;
            }
            let key = Monomial::from_factors(inside);
            out.entry(key)
                .or_default()
                .terms
                .insert(rest, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(sym: &Symbol, coeffs: &BTreeMap<u32, Polynomial>) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (e, c) in coeffs {
            acc = &acc + &c.mul_monomial(&Monomial::power(sym.clone(), *e), &Rational::one());
        }
        acc
    }

    /// Simultaneous substitution of polynomials for symbols.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Polynomial>) -> Polynomial {
        if bindings.is_empty() || !self.symbols().iter().any(|s| bindings.contains_key(s)) {
            return self.clone();
        }
        let mut powers: HashMap<(Symbol, u32), Polynomial> = HashMap::new();
        let mut acc: Vec<Polynomial> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Polynomial::constant(c.clone());
            for (s, e) in m.factors() {
                match bindings.get(s) {
                    Some(value) => {
                        let p = powers
                            .entry((s.clone(), *e))
                            .or_insert_with(|| value.pow(*e))
                            .clone();
                        factor = &factor * &p;
                    }
                    None => kept.push((s.clone(), *e)),
                }
            }
            acc.push(factor.mul_monomial(&Monomial::from_factors(kept), &Rational::one()));
        }
        sum_all(acc)
    }

    /// Evaluates at rational values. Symbols without a value stay symbolic.
    pub fn evaluate(&self, values: &BTreeMap<Symbol, Rational>) -> Polynomial {
        let bindings = values
            .iter()
            .map(|(s, v)| (s.clone(), Polynomial::constant(v.clone())))
            .collect();
        self.substitute(&bindings)
    }

    /// Multivariate division by a single divisor under the graded lex order.
    /// Returns `(quotient, remainder)` with `self = quotient·divisor + remainder`
    /// and no term of the remainder divisible by the divisor's leading monomial.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), ArithError> {
        let (lm, lc) = divisor
            .leading_term()
            .ok_or(ArithError::ZeroPolynomial("div_rem divisor"))?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rest = self.terms.clone();
        let mut quotient = Vec::new();
        let mut remainder = BTreeMap::new();
        while let Some((m, c)) = rest.pop_last() {
            match m.div(&lm) {
                Some(qm) => {
                    let qc = &c / &lc;
                    for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                        let key = dm.mul(&qm);
                        let delta = dc * &qc;
                        match rest.get_mut(&key) {
                            Some(v) => {
                                *v -= delta;
                                if v.is_zero() {
                                    rest.remove(&key);
                                }
                            }
                            None => {
                                rest.insert(key, -delta);
                            }
                        }
                    }
                    quotient.push((qm, qc));
                }
                None => {
                    remainder.insert(m, c);
                }
            }
        }
        Ok((
            Polynomial { terms: quotient.into_iter().collect() },
            Polynomial { terms: remainder },
        ))
    }

    /// `Some(q)` with `self = q·divisor` when the division is exact.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>, ArithError> {
        if let Some(c) = divisor.constant_value() {
            if c.is_zero() {
                return Err(ArithError::ZeroPolynomial("div_exact divisor"));
            }
            return Ok(Some(self.scale(&c.recip())));
        }
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Splits off the rational content: `self = content · primitive`, where
    /// `primitive` has coprime integer coefficients and a positive leading
    /// coefficient.
    pub fn integer_primitive(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::zero(), Polynomial::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self.leading_coefficient().is_negative() {
            content = -content;
        }
        (content.clone(), self.scale(&content.recip()))
    }

    /// Positive-leading, coprime integer normalization used for gcds.
    pub fn primitive(&self) -> Polynomial {
        self.integer_primitive().1
    }

    pub fn monic(&self) -> Polynomial {
        let lc = self.leading_coefficient();
        if lc.is_zero() {
            return Polynomial::zero();
        }
        self.scale(&lc.recip())
    }

    /// Substitutes `sym ↦ sym + shift`.
    pub fn shift(&self, sym: &Symbol, shift: &Rational) -> Polynomial {
        let mut b = BTreeMap::new();
        b.insert(
            sym.clone(),
            &Polynomial::var(sym.clone()) + &Polynomial::constant(shift.clone()),
        );
        self.substitute(&b)
    }

    /// The unique symbol of a univariate polynomial (`None` for constants).
    pub fn univariate_symbol(&self) -> Result<Option<Symbol>, ArithError> {
        let syms = self.symbols();
        if syms.len() > 1 {
            return Err(ArithError::NotUnivariate(self.to_string()));
        }
        Ok(syms.into_iter().next())
    }
}

pub(crate) fn sum_all(mut parts: Vec<Polynomial>) -> Polynomial {
    if parts.len() == 1 {
        return parts.pop().unwrap();
    }
    let mut acc: HashMap<Monomial, Rational> = HashMap::new();
    for p in parts {
        for (m, c) in p.terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
    }
    Polynomial {
        terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Polynomial { terms }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v -= c;
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), -c.clone());
                }
            }
        }
        Polynomial { terms }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<Symbol> for Polynomial {
    fn from(s: Symbol) -> Self {
        Polynomial::var(s)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::integer(n)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

pub(crate) fn fmt_rational_abs(c: &Rational) -> String {
    let a = c.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Canonical text: terms in descending monomial order, `−` for negative
/// signs, `·` between factors.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("−")?,
                (0, false) => {}
                (_, true) => f.write_str("−")?,
                (_, false) => f.write_str("+")?,
            }
            let abs = fmt_rational_abs(c);
            if m.is_one() {
                f.write_str(&abs)?;
            } else if abs == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}·{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(Symbol::parameter("x"))
    }
    fn y() -> Polynomial {
        Polynomial::var(Symbol::parameter("y"))
    }

    #[test]
    fn difference_of_squares_divides() {
        let p = &(&x() * &x()) - &Polynomial::one();
        let d = &x() + &Polynomial::one();
        let q = p.div_exact(&d).unwrap().unwrap();
        assert_eq!(q, &x() - &Polynomial::one());
        assert!(p.div_exact(&(&x() + &y())).unwrap().is_none());
    }

    #[test]
    fn display_is_descending() {
        let p = &(&(&y() * &y()) - &x()) + &Polynomial::integer(-3);
        assert_eq!(p.to_string(), "y^2−x−3");
        let half = Polynomial::constant(Rational::new(1.into(), 2.into()));
        assert_eq!((&half * &x()).to_string(), "1/2·x");
    }

    #[test]
    fn substitution_is_simultaneous() {
        let sx = Symbol::parameter("x");
        let sy = Symbol::parameter("y");
        let p = &x() - &y();
        let mut b = BTreeMap::new();
        b.insert(sx, y());
        b.insert(sy, x());
        assert_eq!(p.substitute(&b), &y() - &x());
    }

    #[test]
    fn primitive_normalization() {
        let p = &x().scale(&Rational::new((-4).into(), 3.into())) + &Polynomial::integer(2);
        let (c, pp) = p.integer_primitive();
        assert_eq!(c, Rational::new((-2).into(), 3.into()));
        assert_eq!(pp.to_string(), "2·x−3");
    }
}
