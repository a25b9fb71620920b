//! Multivariate polynomial gcd over ℚ.
//!
//! Recursive primitive pseudo-remainder sequences: a symbol present in only
//! one argument is eliminated by taking the gcd with all of its coefficients,
//! otherwise the polynomials are viewed as univariate in the cheapest shared
//! symbol over the remaining ones.

use std::collections::BTreeSet;

use num_traits::One;

use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::symbol::Symbol;
use crate::Rational;

/// The gcd, normalized to coprime integer coefficients with a positive
/// leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    gcd_primitive(&a.primitive(), &b.primitive())
}

fn monomial_content(p: &Polynomial) -> Monomial {
    // Smallest power of each symbol occurring in every term.
    let mut iter = p.terms();
    let Some((first, _)) = iter.next() else {
        return Monomial::one();
    };
    let mut factors: Vec<(Symbol, u32)> = first.factors().to_vec();
    for (m, _) in iter {
        factors = factors
            .into_iter()
            .filter_map(|(s, e)| {
                let d = m.degree_in(&s).min(e);
                (d > 0).then_some((s, d))
            })
            .collect();
        if factors.is_empty() {
            break;
        }
    }
    Monomial::from_factors(factors)
}

fn gcd_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial::from_factors(
        a.factors()
            .iter()
            .filter_map(|(s, e)| {
                let d = b.degree_in(s).min(*e);
                (d > 0).then(|| (s.clone(), d))
            })
            .collect(),
    )
}

fn gcd_primitive(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a == b {
        return a.primitive();
    }
    // Pull out common monomial factors first; cheap and common.
    let ma = monomial_content(a);
    let mb = monomial_content(b);
    if !ma.is_one() || !mb.is_one() {
        let g = gcd_monomials(&ma, &mb);
        let a1 = a.div_exact(&Polynomial::term(ma, Rational::one())).unwrap().unwrap();
        let b1 = b.div_exact(&Polynomial::term(mb, Rational::one())).unwrap().unwrap();
        let rest = gcd_primitive(&a1, &b1);
        return rest.mul_monomial(&g, &Rational::one()).primitive();
    }
    if a.len() == 1 || b.len() == 1 {
        // A monomial without monomial content is a constant.
        return Polynomial::one();
    }

    let sa = a.symbols();
    let sb = b.symbols();
    if let Some(x) = sa.difference(&sb).next() {
        return gcd_with_coefficients(a, x, b);
    }
    if let Some(x) = sb.difference(&sa).next() {
        return gcd_with_coefficients(b, x, a);
    }

    let x = pick_main_symbol(a, b, &sa);
    let (ca, pa) = split_content(a, &x);
    let (cb, pb) = split_content(b, &x);
    let g_content = gcd_primitive(&ca, &cb);
    let g_prim = prs(pa, pb, &x);
    (&g_content * &g_prim).primitive()
}

/// gcd(p, q) where `x` occurs in `p` but not in `q`.
fn gcd_with_coefficients(p: &Polynomial, x: &Symbol, q: &Polynomial) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = p.coefficients_in(x).into_values().collect();
    // Small coefficients first: they drive the gcd to 1 quickly.
    coeffs.sort_by_key(|c| c.len());
    let mut g = q.primitive();
    for c in coeffs {
        g = gcd_primitive(&c.primitive(), &g);
        if g.is_constant() {
            return Polynomial::one();
        }
    }
    g
}

fn pick_main_symbol(a: &Polynomial, b: &Polynomial, syms: &BTreeSet<Symbol>) -> Symbol {
    syms.iter()
        .min_by_key(|s| {
            let (da, db) = (a.degree_in(s), b.degree_in(s));
            (da.max(db), da.min(db))
        })
        .cloned()
        .expect("nonconstant polynomial has a symbol")
}

/// Content with respect to `x` (gcd of coefficients) and the primitive part.
fn split_content(p: &Polynomial, x: &Symbol) -> (Polynomial, Polynomial) {
    let mut coeffs: Vec<Polynomial> = p.coefficients_in(x).into_values().collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = Polynomial::zero();
    for c in &coeffs {
        g = if g.is_zero() { c.primitive() } else { gcd_primitive(&g, &c.primitive()) };
        if g.is_constant() {
            return (Polynomial::one(), p.primitive());
        }
    }
    let prim = p.div_exact(&g).unwrap().expect("content divides");
    (g, prim.primitive())
}

fn primitive_part(p: &Polynomial, x: &Symbol) -> Polynomial {
    split_content(p, x).1
}

/// Pseudo-remainder of `a` by `b` as polynomials in `x`.
pub(crate) fn pseudo_remainder(a: &Polynomial, b: &Polynomial, x: &Symbol) -> Polynomial {
    let db = b.degree_in(x);
    let lcb = b.coefficient(x, db);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let dr = r.degree_in(x);
        if dr < db {
            return r;
        }
        let lcr = r.coefficient(x, dr);
        let shift = Polynomial::term(Monomial::power(x.clone(), dr - db), Rational::one());
        r = &(&lcb * &r) - &(&(&lcr * &shift) * b);
    }
}

fn prs(a: Polynomial, b: Polynomial, x: &Symbol) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(x) >= b.degree_in(x) { (a, b) } else { (b, a) };
    loop {
        if b.is_zero() {
            return primitive_part(&a, x);
        }
        if b.degree_in(x) == 0 {
            return Polynomial::one();
        }
        let r = pseudo_remainder(&a, &b, x);
        if r.is_zero() {
            return primitive_part(&b, x);
        }
        if r.degree_in(x) == 0 {
            return Polynomial::one();
        }
        a = b;
        b = primitive_part(&r, x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Polynomial {
        Polynomial::var(Symbol::parameter(n))
    }

    #[test]
    fn gcd_of_products() {
        let x = v("x");
        let y = v("y");
        let z = v("z");
        let f = &(&x + &y) * &(&y - &z);
        let g1 = &(&x + &y) * &(&x + &z);
        assert_eq!(gcd(&f, &g1), (&x + &y).primitive());
        let h = &(&(&x * &y) + &Polynomial::one()) * &(&z - &Polynomial::integer(2));
        assert_eq!(gcd(&f, &h), Polynomial::one());
    }

    #[test]
    fn gcd_with_monomial_factors() {
        let x = v("x");
        let y = v("y");
        let f = &(&x * &x) * &(&y + &Polynomial::one());
        let g = &(&x * &y) * &(&y + &Polynomial::one());
        assert_eq!(gcd(&f, &g), (&x * &(&y + &Polynomial::one())).primitive());
    }

    #[test]
    fn rational_content_is_ignored() {
        let x = v("x");
        let f = (&x - &Polynomial::one()).scale(&Rational::new(3.into(), 7.into()));
        let g = (&(&x * &x) - &Polynomial::one()).scale(&Rational::from_integer((-2).into()));
        assert_eq!(gcd(&f, &g), &x - &Polynomial::one());
    }
}
