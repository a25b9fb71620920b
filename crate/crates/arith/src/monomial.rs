use std::cmp::Ordering;
use std::fmt;

use crate::symbol::Symbol;

/// A power product of symbols.
///
/// Factors are kept sorted with the most significant (greatest) symbol first
/// and carry strictly positive exponents. The `Ord` instance is graded
/// lexicographic: total degree first, then the exponent of the most
/// significant symbol, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(sym: Symbol) -> Self {
        Monomial(vec![(sym, 1)])
    }

    pub fn power(sym: Symbol, exp: u32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Monomial(vec![(sym, exp)])
        }
    }

    pub fn from_factors(mut factors: Vec<(Symbol, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(factors.len());
        for (s, e) in factors {
            match out.last_mut() {
                Some((last, le)) if *last == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, sym: &Symbol) -> u32 {
        self.0
            .iter()
            .find(|(s, _)| s == sym)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Splits off the power of `sym`: returns `(exponent, remaining monomial)`.
    pub fn split(&self, sym: &Symbol) -> (u32, Monomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut exp = 0;
        for (s, e) in &self.0 {
            if s == sym {
                exp = *e;
            } else {
                rest.push((s.clone(), *e));
            }
        }
        (exp, Monomial(rest))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (s, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == *s {
                let oe = other.0[j].1;
                if oe > *e {
                    return None;
                }
                if oe < *e {
                    out.push((s.clone(), e - oe));
                }
                j += 1;
            } else {
                out.push((s.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.0.iter().map(|(s, _)| s)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(other.0.iter()) {
                match x.0.cmp(&y.0) {
                    Ordering::Equal => match x.1.cmp(&y.1) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                    // `self` has a positive power of a more significant symbol.
                    ord => return ord,
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Symbol {
        Symbol::parameter("x")
    }
    fn y() -> Symbol {
        Symbol::parameter("y")
    }

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial::power(x(), 2);
        let xy = Monomial::var(x()).mul(&Monomial::var(y()));
        let y2 = Monomial::power(y(), 2);
        let x1 = Monomial::var(x());
        // y is the more significant symbol.
        assert!(y2 > xy && xy > x2 && x2 > x1 && x1 > Monomial::one());
    }

    #[test]
    fn mul_and_div_are_inverse() {
        let a = Monomial::from_factors(vec![(x(), 2), (y(), 1)]);
        let b = Monomial::from_factors(vec![(y(), 3)]);
        let ab = a.mul(&b);
        assert_eq!(ab.degree_in(&y()), 4);
        assert_eq!(ab.div(&b).unwrap(), a);
        assert!(a.div(&b).is_none());
    }
}
