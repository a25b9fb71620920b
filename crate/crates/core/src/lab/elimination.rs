//! Elimination of c_{ν−1}, c_{ν−2}, c_{ν−3} from a three-term and a
//! four-term recurrence, leaving p(ν̄)·c_ν = 0.

use std::collections::BTreeMap;

use hvir_arith::{gcd, Scalar, Symbol};

use crate::error::{CoreError, Result};
use crate::lattice::{LatticeBasis, LatticeVector};
use crate::layered::LinearForm;

fn nubar() -> Symbol {
    Symbol::parameter("ν̄")
}

/// p(ν̄) ↦ p(ν̄ + k).
pub fn shift_nubar(s: &Scalar, k: i64) -> Result<Scalar> {
    let v = Scalar::var(nubar()).add(&Scalar::integer(k));
    Ok(s.substitute(&BTreeMap::from([(nubar(), v)]))?)
}

/// Σᵢ coefficient(i)·c_{ν−i} = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub coefficients: BTreeMap<i64, Scalar>,
}

impl Recurrence {
    pub fn new(coefficients: Vec<Scalar>) -> Self {
        Recurrence {
            coefficients: coefficients.into_iter().enumerate().map(|(i, c)| (i as i64, c)).collect(),
        }
    }

    /// Reads a relation linear in the unknowns `family[op; ν−i·1]`.
    pub fn from_relation(basis: &LatticeBasis, relation: &Scalar, family: &str, op: &LatticeVector) -> Result<Self> {
        let nu = basis.gen("ν")?;
        let unit = basis
            .unit_index()
            .ok_or_else(|| CoreError::Precondition("basis has no unit".into()))?;
        let form = LinearForm::from_scalar(relation)?;
        if !form.constant.is_zero() {
            return Err(CoreError::Precondition(format!("relation has a constant term {}", form.constant)));
        }
        let mut coefficients = BTreeMap::new();
        for (s, c) in &form.coefficients {
            let idx = s.index();
            let offset = LatticeVector::new(idx.last().cloned().unwrap_or_default());
            let delta = &nu - &offset;
            let pure = delta.coords().iter().enumerate().all(|(i, x)| *x == 0 || i == unit);
            if s.name() != family || idx.len() != 2 || idx[0] != op.coords() || !pure {
                return Err(CoreError::Precondition(format!("unknown {s} is outside the family")));
            }
            coefficients.insert(delta.coords()[unit], c.clone());
        }
        Ok(Recurrence { coefficients })
    }

    pub fn coefficient(&self, i: i64) -> Scalar {
        self.coefficients.get(&i).cloned().unwrap_or_default()
    }

    pub fn offsets(&self) -> Vec<i64> {
        self.coefficients
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| *i)
            .collect()
    }

    /// Every coefficient times k.
    pub fn scale(&self, k: &Scalar) -> Recurrence {
        Recurrence {
            coefficients: self.coefficients.iter().map(|(i, c)| (*i, c.mul(k))).collect(),
        }
    }

    /// The relation at ν−j written in terms of c_{ν−i}: coefficient of
    /// c_{ν−i} is coefficient(i−j)(ν̄−j).
    pub fn at_offset(&self, j: i64) -> Result<Recurrence> {
        let mut coefficients = BTreeMap::new();
        for (i, c) in &self.coefficients {
            coefficients.insert(i + j, shift_nubar(c, -j)?);
        }
        Ok(Recurrence { coefficients })
    }

    pub fn combine(&self, k: &Scalar, other: &Recurrence, l: &Scalar) -> Recurrence {
        let mut coefficients: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (i, c) in &self.coefficients {
            coefficients.insert(*i, c.mul(k));
        }
        for (i, c) in &other.coefficients {
            let e = coefficients.entry(*i).or_default();
            *e = e.add(&c.mul(l));
        }
        coefficients.retain(|_, c| !c.is_zero());
        Recurrence { coefficients }
    }
}

/// How the two elimination steps are weighted:
/// uᵢ = first_s·sᵢ − first_t·tᵢ and vᵢ = second_u·uᵢ + second_s·s_{i−1}(ν̄−1).
#[derive(Clone, Debug)]
pub struct Multipliers {
    pub first_s: Scalar,
    pub first_t: Scalar,
    pub second_u: Scalar,
    pub second_s: Scalar,
}

impl Multipliers {
    /// First-stage weights d(ν̄−1+2b), (ν̄+b) and second-stage weights
    /// `second_u`, d(ν̄−2+d+2b″)(ν̄+b).
    pub fn explicit(second_u: Scalar) -> Result<Multipliers> {
        let p = |t: &str| Scalar::var(Symbol::parameter(t));
        let (nb, b, d, b2) = (p("ν̄"), p("b"), p("d"), p("b″"));
        let one = Scalar::one();
        let two = Scalar::integer(2);
        Ok(Multipliers {
            first_s: d.mul(&nb.sub(&one).add(&two.mul(&b))),
            first_t: nb.add(&b),
            second_u,
            second_s: d.mul(&nb.sub(&two).add(&d).add(&two.mul(&b2))).mul(&nb.add(&b)),
        })
    }

    /// Smallest polynomial weights: cofactors of gcd(s₀, t₀) and of
    /// gcd(u₃, s₂(ν̄−1)).
    pub fn from_gcd(s: &Recurrence, t: &Recurrence) -> Result<Multipliers> {
        let (s0, t0) = (s.coefficient(0).to_polynomial()?, t.coefficient(0).to_polynomial()?);
        let g = gcd(&s0, &t0);
        let first_s = Scalar::from_poly(t0).div(&Scalar::from_poly(g.clone()))?;
        let first_t = Scalar::from_poly(s0).div(&Scalar::from_poly(g))?;
        let u3 = s.coefficient(3).mul(&first_s).sub(&t.coefficient(3).mul(&first_t));
        let s2 = shift_nubar(&s.coefficient(2), -1)?;
        let (u3p, s2p) = (u3.to_polynomial()?, s2.to_polynomial()?);
        let h = Scalar::from_poly(gcd(&u3p, &s2p));
        Ok(Multipliers {
            first_s,
            first_t,
            second_u: s2.div(&h)?,
            second_s: u3.neg().div(&h)?,
        })
    }
}

/// Every stage of the elimination with the residuals of its checks.
#[derive(Clone, Debug)]
pub struct EliminationTrace {
    /// u₀..u₃; u₀ vanishes by construction.
    pub u: Vec<Scalar>,
    /// v₁..v₃; v₃ is what the second stage must cancel.
    pub v: Vec<Scalar>,
    pub w0: Scalar,
    pub w1: Scalar,
    pub p: Scalar,
    /// (stage, residual) pairs; all vanish for an exact pipeline.
    pub residuals: Vec<(String, Scalar)>,
}

impl EliminationTrace {
    pub fn eliminated(&self) -> bool {
        self.u[0].is_zero() && self.v[2].is_zero()
    }

    pub fn failed_residuals(&self) -> Vec<&(String, Scalar)> {
        self.residuals.iter().filter(|(_, r)| !r.is_zero()).collect()
    }
}

/// First nonzero coefficient difference, or zero.
fn diff(a: &Recurrence, b: &Recurrence) -> Scalar {
    let keys: std::collections::BTreeSet<i64> = a.coefficients.keys().chain(b.coefficients.keys()).copied().collect();
    keys.into_iter()
        .map(|i| a.coefficient(i).sub(&b.coefficient(i)))
        .find(|x| !x.is_zero())
        .unwrap_or_default()
}

/// Runs the four stages with the given weights; each stage is re-expanded
/// from its defining combination of shifted relations and compared.
pub fn eliminate(s: &Recurrence, t: &Recurrence, m: &Multipliers) -> Result<EliminationTrace> {
    let mut residuals = Vec::new();
    let u: Vec<Scalar> = (0..4)
        .map(|i| s.coefficient(i).mul(&m.first_s).sub(&t.coefficient(i).mul(&m.first_t)))
        .collect();
    let u_rel = s.combine(&m.first_s, t, &m.first_t.neg());
    residuals.push(("first stage".to_string(), diff(&u_rel, &Recurrence::new(u.clone()))));

    let s_prev = s.at_offset(1)?;
    let v: Vec<Scalar> = (1..4)
        .map(|i| u[i as usize].mul(&m.second_u).add(&s_prev.coefficient(i).mul(&m.second_s)))
        .collect();
    let v_rel = u_rel.combine(&m.second_u, &s_prev, &m.second_s);
    let v_expected = Recurrence {
        coefficients: (1..4).map(|i| (i, v[i as usize - 1].clone())).collect(),
    };
    residuals.push(("second stage".to_string(), diff(&v_rel, &v_expected)));

    let w0 = s.coefficient(0).mul(&v[1]);
    let w1 = s.coefficient(1).mul(&v[1]).sub(&s.coefficient(2).mul(&v[0]));
    let v_pair = Recurrence {
        coefficients: BTreeMap::from([(1, v[0].clone()), (2, v[1].clone())]),
    };
    let w_rel = s.combine(&v[1], &v_pair, &s.coefficient(2).neg());
    let w_expected = Recurrence {
        coefficients: BTreeMap::from([(0, w0.clone()), (1, w1.clone())]),
    };
    residuals.push(("third stage".to_string(), diff(&w_rel, &w_expected)));

    let v_next = v_pair.at_offset(-1)?;
    let p = shift_nubar(&v[0], 1)?.mul(&w1).sub(&shift_nubar(&v[1], 1)?.mul(&w0));
    let p_rel = v_next.combine(&w1, &w_expected, &shift_nubar(&v[1], 1)?.neg());
    let p_expected = Recurrence {
        coefficients: BTreeMap::from([(0, p.clone())]),
    };
    residuals.push(("fourth stage".to_string(), diff(&p_rel, &p_expected)));

    Ok(EliminationTrace { u, v, w0, w1, p, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Scalar {
        Scalar::var(nubar())
    }

    #[test]
    fn constant_recurrences_eliminate_to_zero() {
        // c_ν = c_{ν−1} satisfies both; p must vanish.
        let one = Scalar::one();
        let s = Recurrence::new(vec![one.clone(), Scalar::integer(-2), one.clone()]);
        let t = Recurrence::new(vec![one.clone(), Scalar::integer(-1), Scalar::integer(-1), one.clone()]);
        let m = Multipliers::from_gcd(&s, &t).unwrap();
        let trace = eliminate(&s, &t, &m).unwrap();
        assert!(trace.eliminated());
        assert!(trace.failed_residuals().is_empty());
        assert!(trace.p.is_zero());
    }

    #[test]
    fn shifted_rows_follow_the_index() {
        let s = Recurrence::new(vec![x(), Scalar::one()]);
        let prev = s.at_offset(1).unwrap();
        assert_eq!(prev.coefficient(1), x().sub(&Scalar::one()));
        assert_eq!(prev.coefficient(2), Scalar::one());
        assert!(prev.coefficient(0).is_zero());
    }
}
