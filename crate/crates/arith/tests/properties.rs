use std::collections::BTreeMap;

use hvir_arith::{gcd, poly_divides, resultant, Monomial, Polynomial, Rational, Scalar, Symbol};
use proptest::prelude::*;

const NAMES: [&str; 4] = ["w", "x", "y", "z"];

fn symbols() -> Vec<Symbol> {
    NAMES.iter().map(|n| Symbol::parameter(n)).collect()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Exponent vectors over four symbols with total degree at most `max_deg`.
fn monomial(max_deg: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..=max_deg, 4).prop_map(move |mut exps| {
        let mut budget = max_deg;
        for e in exps.iter_mut() {
            *e = (*e).min(budget);
            budget -= *e;
        }
        Monomial::from_factors(symbols().into_iter().zip(exps).collect())
    })
}

fn polynomial(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(max_deg), rational()), 0..=max_terms)
        .prop_map(Polynomial::from_terms)
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    polynomial(2, 3)
}

fn nonzero_small_poly() -> impl Strategy<Value = Polynomial> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in polynomial(6, 5), b in polynomial(6, 5), c in polynomial(6, 5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
    }

    #[test]
    fn no_zero_coefficients_are_stored(a in polynomial(6, 5), b in polynomial(6, 5)) {
        let s = &(&a * &b) - &(&b * &a);
        prop_assert!(s.is_zero());
        prop_assert!((&a - &b).terms().all(|(_, c)| *c != Rational::from_integer(0.into())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalar_equality_is_a_congruence(
        p in small_poly(), q in nonzero_small_poly(), k in nonzero_small_poly(),
        r in small_poly(), s in nonzero_small_poly(),
    ) {
        // a = p/q and b = (p·k)/(q·k) are equal; likewise c and d.
        let a = Scalar::new(p.clone(), q.clone()).unwrap();
        let b = Scalar::new(&p * &k, &q * &k).unwrap();
        prop_assert_eq!(&a, &b);
        let c = Scalar::new(r.clone(), s.clone()).unwrap();
        let d = Scalar::new(&r * &k, &s * &k).unwrap();
        prop_assert_eq!(&a + &c, &b + &d);
        prop_assert_eq!(&a - &c, &b - &d);
        prop_assert_eq!(&a * &c, &b * &d);
        if !c.is_zero() {
            prop_assert_eq!(a.div(&c).unwrap(), b.div(&d).unwrap());
        }
    }

    #[test]
    fn scalar_field_identities(p in small_poly(), q in nonzero_small_poly()) {
        let a = Scalar::new(p, q).unwrap();
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.recip().unwrap()), Scalar::one());
        }
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(
        p in small_poly(), q in small_poly(),
        bx in small_poly(), by in nonzero_small_poly(),
    ) {
        let syms = symbols();
        let mut bind = BTreeMap::new();
        bind.insert(syms[1].clone(), Scalar::from_poly(bx));
        bind.insert(syms[2].clone(), Scalar::one().div(&Scalar::from_poly(by)).unwrap());
        let sp = Scalar::from_poly(p);
        let sq = Scalar::from_poly(q);
        let lhs = sp.mul(&sq).substitute(&bind).unwrap();
        let rhs = sp.substitute(&bind).unwrap().mul(&sq.substitute(&bind).unwrap());
        prop_assert_eq!(&lhs, &rhs);
        let lhs = sp.add(&sq).substitute(&bind).unwrap();
        let rhs = sp.substitute(&bind).unwrap().add(&sq.substitute(&bind).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divides_implies_exact_quotient(p in nonzero_small_poly(), q in small_poly(), noise in small_poly()) {
        let product = &p * &q;
        let quotient = poly_divides(&p, &product).unwrap();
        prop_assert_eq!(quotient.clone(), Some(q));
        let candidate = &product + &noise;
        if let Some(quo) = poly_divides(&p, &candidate).unwrap() {
            prop_assert_eq!(&p * &quo, candidate);
        }
    }

    #[test]
    fn gcd_divides_both(p in nonzero_small_poly(), q in nonzero_small_poly(), f in nonzero_small_poly()) {
        let a = &p * &f;
        let b = &q * &f;
        let g = gcd(&a, &b);
        prop_assert!(poly_divides(&g, &a).unwrap().is_some());
        prop_assert!(poly_divides(&g, &b).unwrap().is_some());
        prop_assert!(poly_divides(&f.primitive(), &g).unwrap().is_some());
    }
}

fn linear_in_x() -> impl Strategy<Value = Polynomial> {
    // (α·x + β·y + γ) with α ≠ 0
    (1i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c)| {
        let x = Polynomial::var(Symbol::parameter("x"));
        let y = Polynomial::var(Symbol::parameter("y"));
        &(&x.scale(&Rational::from_integer(a.into())) + &y.scale(&Rational::from_integer(b.into())))
            + &Polynomial::integer(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn resultant_vanishes_iff_common_factor(
        f in linear_in_x(), g in linear_in_x(), h in linear_in_x(), k in linear_in_x(),
    ) {
        let x = Symbol::parameter("x");
        let p = &f * &g;
        let q = &h * &k;
        let r = resultant(&p, &q, &x).unwrap();
        let shared = gcd(&p, &q).degree_in(&x) > 0;
        prop_assert_eq!(r.is_zero(), shared);
        let forced = resultant(&(&f * &g), &(&f * &h), &x).unwrap();
        prop_assert!(forced.is_zero());
    }
}
