//! Sylvester resultants and exact determinants of polynomial matrices.

use crate::error::ArithError;
use crate::poly::Polynomial;
use crate::symbol::Symbol;

/// Resultant of `p` and `q` with respect to `elim`.
///
/// Sign convention: the determinant of the Sylvester matrix whose first
/// `deg q` rows hold the coefficients of `p` (highest power first) and whose
/// last `deg p` rows hold those of `q`. This equals
/// `lc(p)^deg q · Π q(r)` over the roots `r` of `p`, so
/// `res(x−a, x−b) = a−b`.
pub fn resultant(p: &Polynomial, q: &Polynomial, elim: &Symbol) -> Result<Polynomial, ArithError> {
    let m = p.degree_in(elim) as usize;
    let n = q.degree_in(elim) as usize;
    if m == 0 {
        return Err(ArithError::ZeroDegree(format!("{p} in {elim}")));
    }
    if n == 0 {
        return Err(ArithError::ZeroDegree(format!("{q} in {elim}")));
    }
    let pc = p.coefficients_in(elim);
    let qc = q.coefficients_in(elim);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        rows.push(sylvester_row(&pc, m, shift, size));
    }
    for shift in 0..m {
        rows.push(sylvester_row(&qc, n, shift, size));
    }
    Ok(determinant(rows))
}

fn sylvester_row(
    coeffs: &std::collections::BTreeMap<u32, Polynomial>,
    deg: usize,
    shift: usize,
    size: usize,
) -> Vec<Polynomial> {
    let mut row = vec![Polynomial::zero(); size];
    for k in 0..=deg {
        if let Some(c) = coeffs.get(&((deg - k) as u32)) {
            row[shift + k] = c.clone();
        }
    }
    row
}

/// Determinant of a square matrix of polynomials by fraction-free Bareiss
/// elimination. Every division is exact.
pub fn determinant(mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return Polynomial::one();
    }
    let mut sign = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // Prefer the sparsest available pivot.
            let pivot = (k + 1..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| a[i][k].len());
            match pivot {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("pivot is nonzero")
                    .expect("Bareiss division is exact");
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Polynomial {
        Polynomial::var(Symbol::parameter(n))
    }

    #[test]
    fn common_root_gives_zero() {
        let x = Symbol::parameter("x");
        let p = &v("x") - &Polynomial::one();
        assert!(resultant(&p, &p, &x).unwrap().is_zero());
    }

    #[test]
    fn linear_sign_convention() {
        let x = Symbol::parameter("x");
        let p = &v("x") - &v("a");
        let q = &v("x") - &v("b");
        assert_eq!(resultant(&p, &q, &x).unwrap(), &v("a") - &v("b"));
    }

    #[test]
    fn degree_zero_is_an_error() {
        let x = Symbol::parameter("x");
        assert!(resultant(&v("y"), &v("x"), &x).is_err());
    }

    #[test]
    fn quadratic_against_linear() {
        // res(x²−1, x−c) = c²−1 in this convention.
        let x = Symbol::parameter("x");
        let p = &(&v("x") * &v("x")) - &Polynomial::one();
        let q = &v("x") - &v("c");
        let r = resultant(&p, &q, &x).unwrap();
        assert_eq!(r, &(&v("c") * &v("c")) - &Polynomial::one());
    }

    #[test]
    fn determinant_with_row_swap() {
        let m = vec![
            vec![Polynomial::zero(), Polynomial::one()],
            vec![Polynomial::one(), Polynomial::zero()],
        ];
        assert_eq!(determinant(m), Polynomial::integer(-1));
    }
}
