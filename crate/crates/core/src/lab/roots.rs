//! Common rational zeros of a system of bivariate polynomials, modulo their
//! common factor.

use std::collections::BTreeMap;

use hvir_arith::{deflate, gcd, resultant, Polynomial, Rational, Symbol};

use crate::error::Result;

#[derive(Clone, Debug)]
pub struct CommonRoots {
    /// Gcd of the system; its zero locus is a common curve.
    pub common_factor: Polynomial,
    /// Rational points where every cofactor vanishes, each verified by
    /// substitution.
    pub points: Vec<(Rational, Rational)>,
    /// Parts of the eliminants without rational roots; nonconstant entries
    /// may hide irrational common zeros.
    pub leftovers: Vec<Polynomial>,
}

fn at(p: &Polynomial, s: &Symbol, v: &Rational) -> Polynomial {
    p.evaluate(&BTreeMap::from([(s.clone(), v.clone())]))
}

fn gcd_all<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    ps.into_iter().fold(Polynomial::zero(), |g, p| gcd(&g, p))
}

/// Solves polys = 0 in (x, y) off the curve of their gcd: eliminates y by
/// pairwise resultants, takes rational roots in x, then rational roots in y
/// of the specialized cofactors.
pub fn common_rational_roots(polys: &[Polynomial], x: &Symbol, y: &Symbol) -> Result<CommonRoots> {
    let nonzero: Vec<Polynomial> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    let common_factor = gcd_all(&nonzero);
    let mut cofactors = Vec::new();
    for p in &nonzero {
        let q = p.div_exact(&common_factor)?.expect("gcd divides every member");
        cofactors.push(q);
    }
    let mut leftovers = Vec::new();
    if cofactors.iter().any(|p| p.is_constant()) {
        return Ok(CommonRoots {
            common_factor,
            points: Vec::new(),
            leftovers,
        });
    }
    let mut eliminant = Polynomial::zero();
    for p in cofactors.iter().filter(|p| p.degree_in(y) == 0) {
        eliminant = gcd(&eliminant, p);
    }
    for i in 0..cofactors.len() {
        for j in i + 1..cofactors.len() {
            let (a, b) = (&cofactors[i], &cofactors[j]);
            if a.degree_in(y) > 0 && b.degree_in(y) > 0 {
                eliminant = gcd(&eliminant, &resultant(a, b, y)?);
            }
        }
    }
    if cofactors.len() == 1 {
        eliminant = cofactors[0].coefficients_in(y).values().fold(Polynomial::zero(), |g, c| gcd(&g, c));
    }
    let mut xs: Vec<Rational> = Vec::new();
    if !eliminant.is_zero() {
        let (roots, rest) = deflate(&eliminant)?;
        xs.extend(roots.into_iter().map(|(r, _)| r));
        if !rest.is_constant() {
            leftovers.push(rest);
        }
    }
    let mut points = Vec::new();
    for x0 in xs {
        let special: Vec<Polynomial> = cofactors.iter().map(|p| at(p, x, &x0)).collect();
        let g = gcd_all(&special);
        if g.is_zero() {
            leftovers.push(Polynomial::var(y.clone()));
            continue;
        }
        let (roots, rest) = deflate(&g)?;
        if !rest.is_constant() {
            leftovers.push(rest);
        }
        for (y0, _) in roots {
            if special.iter().all(|p| at(p, y, &y0).is_zero()) {
                points.push((x0.clone(), y0));
            }
        }
    }
    points.sort();
    points.dedup();
    Ok(CommonRoots {
        common_factor,
        points,
        leftovers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Polynomial {
        let mut table = hvir_arith::SymbolTable::new();
        table.declare_parameter("x").unwrap();
        table.declare_parameter("y").unwrap();
        hvir_arith::parse_scalar(text, &table).unwrap().to_polynomial().unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn isolated_points_off_a_common_line() {
        let (x, y) = (Symbol::parameter("x"), Symbol::parameter("y"));
        let sys = [p("(x-y)*(x-1)"), p("(x-y)*(y+2)"), p("(x-y)*(x+y+1)")];
        let roots = common_rational_roots(&sys, &x, &y).unwrap();
        assert_eq!(roots.common_factor.primitive(), p("x-y").primitive());
        assert_eq!(roots.points, vec![(r(1), r(-2))]);
        assert!(roots.leftovers.is_empty());
    }

    #[test]
    fn irrational_points_are_left_over() {
        let (x, y) = (Symbol::parameter("x"), Symbol::parameter("y"));
        let sys = [p("x^2-2"), p("y-x")];
        let roots = common_rational_roots(&sys, &x, &y).unwrap();
        assert!(roots.points.is_empty());
        assert!(!roots.leftovers.is_empty());
    }
}
