//! The Lie algebra Vir[M] with bracket
//! `[L_μ, L_ν] = (ν−μ)L_{μ+ν} − (μ³−μ)/12·δ_{μ,−ν}·c`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use hvir_arith::{Rational, Scalar};

use crate::error::{CoreError, Result};
use crate::lattice::{Delta, LatticeBasis, LatticeVector};

/// Σ coeff·L_μ + central·c.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<LatticeVector, Scalar>,
    central: Scalar,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(mu: LatticeVector) -> Self {
        Self::term(mu, Scalar::one())
    }

    pub fn term(mu: LatticeVector, coeff: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(mu, coeff);
        e
    }

    pub fn central(coeff: Scalar) -> Self {
        LieElement {
            terms: BTreeMap::new(),
            central: coeff,
        }
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVector, Scalar> {
        &self.terms
    }

    pub fn central_part(&self) -> &Scalar {
        &self.central
    }

    pub fn coefficient(&self, mu: &LatticeVector) -> Scalar {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn add_term(&mut self, mu: LatticeVector, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&coeff);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out.central = out.central.add(&other.central);
        out
    }

    pub fn scale(&self, k: &Scalar) -> LieElement {
        if k.is_zero() {
            return LieElement::zero();
        }
        LieElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul(k))).collect(),
            central: self.central.mul(k),
        }
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&Scalar::integer(-1))
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.neg())
    }

    /// Projection onto Vir_μ; the central part belongs to degree zero.
    pub fn graded_component(&self, mu: &LatticeVector) -> LieElement {
        let mut out = LieElement::zero();
        if let Some(c) = self.terms.get(mu) {
            out.add_term(mu.clone(), c.clone());
        }
        if mu.is_zero() {
            out.central = self.central.clone();
        }
        out
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        match self.terms.keys().find(|m| m.rank() != rank) {
            Some(m) => Err(CoreError::RankMismatch {
                expected: rank,
                found: m.rank(),
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (mu, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})·L{mu}")?;
        }
        if !self.central.is_zero() {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "({})·c", self.central)?;
        }
        Ok(())
    }
}

/// Vir[M] over a lattice basis. Counts the δ decisions that relied on
/// generic position so reports can record them.
#[derive(Clone, Debug)]
pub struct Virasoro {
    basis: LatticeBasis,
    generic_decisions: Arc<AtomicU64>,
}

impl Virasoro {
    pub fn new(basis: LatticeBasis) -> Self {
        Virasoro {
            basis,
            generic_decisions: Arc::new(AtomicU64::new(0)),
        }
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn generic_decisions(&self) -> u64 {
        self.generic_decisions.load(Ordering::Relaxed)
    }

    pub fn generator(&self, name_or_coords: &str) -> Result<LieElement> {
        Ok(LieElement::generator(self.basis.parse_vector(name_or_coords)?))
    }

    /// [L_μ, L_ν].
    pub fn bracket_generators(&self, mu: &LatticeVector, nu: &LatticeVector) -> LieElement {
        let em = self.basis.embed(mu);
        let en = self.basis.embed(nu);
        let mut out = LieElement::term(mu + nu, en.sub(&em));
        match self.basis.delta_opposite(mu, nu) {
            Delta::Fires => {
                // −(μ³−μ)/12
                let cubic = em.pow(3).sub(&em);
                out.central = cubic.scale(&Rational::new((-1).into(), 12.into()));
            }
            Delta::GenericDistinct => {
                self.generic_decisions.fetch_add(1, Ordering::Relaxed);
            }
            Delta::Distinct => {}
        }
        out
    }

    /// Bilinear extension; c is central.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        x.check_rank(self.basis.rank())?;
        y.check_rank(self.basis.rank())?;
        let mut out = LieElement::zero();
        for (mu, a) in &x.terms {
            for (nu, b) in &y.terms {
                let br = self.bracket_generators(mu, nu);
                out = out.add(&br.scale(&a.mul(b)));
            }
        }
        Ok(out)
    }

    /// [[x,y],z] + [[y,z],x] + [[z,x],y].
    pub fn jacobiator(&self, x: &LieElement, y: &LieElement, z: &LieElement) -> Result<LieElement> {
        let a = self.bracket(&self.bracket(x, y)?, z)?;
        let b = self.bracket(&self.bracket(y, z)?, x)?;
        let c = self.bracket(&self.bracket(z, x)?, y)?;
        Ok(a.add(&b).add(&c))
    }

    /// Coefficient of the single L-term of [L_μ,[L_μ,…,[L_μ, L_ν]…]] with
    /// `copies` copies of L_μ. A central contribution is an error.
    pub fn nested_bracket_coefficient(
        &self,
        mu: &LatticeVector,
        nu: &LatticeVector,
        copies: usize,
    ) -> Result<Scalar> {
        if copies == 0 {
            return Err(CoreError::Precondition("copies must be at least 1".into()));
        }
        let lm = LieElement::generator(mu.clone());
        let mut acc = LieElement::generator(nu.clone());
        for _ in 0..copies {
            acc = self.bracket(&lm, &acc)?;
            if !acc.central.is_zero() {
                return Err(CoreError::Precondition(format!(
                    "central term {} appears in the nested bracket",
                    acc.central
                )));
            }
        }
        let target = &mu.scale(copies as i64) + nu;
        Ok(acc.coefficient(&target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hvir_arith::Symbol;

    #[test]
    fn standard_rank_two_bracket() {
        let v = Virasoro::new(LatticeBasis::standard(2).unwrap());
        let x = v.generator("1,0").unwrap();
        let y = v.generator("0,1").unwrap();
        let b = v.bracket(&x, &y).unwrap();
        assert_eq!(b.to_string(), "(β₂−β₁)·L[1,1]");
        assert!(v.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn rank_one_central_term() {
        let basis = LatticeBasis::standard(1).unwrap().bind(0, Scalar::one());
        let v = Virasoro::new(basis);
        let b = v
            .bracket(&v.generator("2").unwrap(), &v.generator("-2").unwrap())
            .unwrap();
        assert_eq!(b.coefficient(&LatticeVector::new(vec![0])), Scalar::integer(-4));
        assert_eq!(b.central_part(), &Scalar::rational(-1, 2));
    }

    #[test]
    fn nested_bracket_product_formula() {
        // ν = μ + b₁ with generic μ
        let basis = LatticeBasis::generic(&["μ", "b₁"], false).unwrap();
        let v = Virasoro::new(basis.clone());
        let mu = basis.gen("μ").unwrap();
        let nu = basis.parse_vector("μ+b₁").unwrap();
        let m = Scalar::var(Symbol::parameter("μ"));
        let b1 = Scalar::var(Symbol::parameter("b₁"));
        assert_eq!(v.nested_bracket_coefficient(&mu, &nu, 1).unwrap(), b1);
        let expect = b1
            .mul(&m.add(&b1))
            .mul(&m.scale(&Rational::from_integer(2.into())).add(&b1));
        assert_eq!(v.nested_bracket_coefficient(&mu, &nu, 3).unwrap(), expect);
        assert!(v.nested_bracket_coefficient(&mu, &mu, 1).unwrap().is_zero());
    }

    #[test]
    fn mixed_rank_is_an_error() {
        let v = Virasoro::new(LatticeBasis::standard(2).unwrap());
        let x = LieElement::generator(LatticeVector::new(vec![1, 0, 0]));
        assert!(v.bracket(&x, &x).is_err());
    }
}
