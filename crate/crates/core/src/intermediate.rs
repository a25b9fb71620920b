//! Modules of the intermediate series: A_{a,b}, A(a′), B(a′).

use std::collections::BTreeMap;

use hvir_arith::{Rational, Scalar, Symbol};
use rayon::prelude::*;
use serde::Deserialize;

use crate::algebra::{LieElement, Virasoro};
use crate::error::{CoreError, Result};
use crate::lattice::{LatticeBasis, LatticeVector};

/// The parameter a′ of A(a′) and B(a′); at infinity the factor 1+(μ+1)a′
/// reads μ+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum APrime {
    Finite(Scalar),
    Infinity,
}

impl APrime {
    fn factor(&self, mu: &Scalar) -> Scalar {
        match self {
            APrime::Finite(a) => Scalar::one().add(&mu.add(&Scalar::one()).mul(a)),
            APrime::Infinity => mu.add(&Scalar::one()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Aab { a: Scalar, b: Scalar },
    Aprime(APrime),
    Bprime(APrime),
}

/// Sparse vector over the basis {x_ν}.
pub type SeriesVector = BTreeMap<LatticeVector, Scalar>;

fn add_into(v: &mut SeriesVector, key: LatticeVector, k: Scalar) {
    if k.is_zero() {
        return;
    }
    let s = match v.remove(&key) {
        Some(old) => old.add(&k),
        None => k,
    };
    if !s.is_zero() {
        v.insert(key, s);
    }
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Aab { .. } => "Aab",
            FamilySpec::Aprime(_) => "Aprime",
            FamilySpec::Bprime(_) => "Bprime",
        }
    }

    /// Coefficient of x_{μ+ν} in L_μ x_ν, given the embedded values of μ, ν.
    fn coefficient(&self, basis: &LatticeBasis, mu: &LatticeVector, nu: &LatticeVector, em: &Scalar, en: &Scalar) -> Scalar {
        match self {
            FamilySpec::Aab { a, b } => a.add(en).add(&em.mul(b)),
            FamilySpec::Aprime(ap) => {
                if nu.is_zero() {
                    em.mul(&ap.factor(em))
                } else {
                    en.add(em)
                }
            }
            FamilySpec::Bprime(ap) => {
                let _ = basis;
                if (mu + nu).is_zero() {
                    em.mul(&ap.factor(em)).neg()
                } else {
                    en.clone()
                }
            }
        }
    }

    /// L_μ acting on v; the central element acts as zero.
    pub fn act(&self, basis: &LatticeBasis, mu: &LatticeVector, v: &SeriesVector) -> Result<SeriesVector> {
        basis.check(mu)?;
        let em = basis.embed(mu);
        let mut out = SeriesVector::new();
        for (nu, k) in v {
            basis.check(nu)?;
            let en = basis.embed(nu);
            let c = self.coefficient(basis, mu, nu, &em, &en);
            add_into(&mut out, mu + nu, c.mul(k));
        }
        Ok(out)
    }

    pub fn act_element(&self, basis: &LatticeBasis, x: &LieElement, v: &SeriesVector) -> Result<SeriesVector> {
        let mut out = SeriesVector::new();
        for (mu, k) in x.terms() {
            for (key, c) in self.act(basis, mu, v)? {
                add_into(&mut out, key, c.mul(k));
            }
        }
        Ok(out)
    }
}

/// Residual of L_μ L_ν x_λ − L_ν L_μ x_λ − [L_μ,L_ν] x_λ.
pub fn axiom_residual(
    spec: &FamilySpec,
    vir: &Virasoro,
    mu: &LatticeVector,
    nu: &LatticeVector,
    lambda: &LatticeVector,
) -> Result<SeriesVector> {
    let basis = vir.basis();
    let x = SeriesVector::from([(lambda.clone(), Scalar::one())]);
    let mn = spec.act(basis, mu, &spec.act(basis, nu, &x)?)?;
    let nm = spec.act(basis, nu, &spec.act(basis, mu, &x)?)?;
    let br = vir.bracket_generators(mu, nu);
    let bx = spec.act_element(basis, &br, &x)?;
    let mut out = mn;
    for (k, c) in nm {
        add_into(&mut out, k, c.neg());
    }
    for (k, c) in bx {
        add_into(&mut out, k, c.neg());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub cases: usize,
    /// First failing triple with its residual, if any.
    pub failure: Option<(LatticeVector, LatticeVector, LatticeVector, Scalar)>,
}

/// The representation axiom for generic μ, ν, λ (A_{a,b} only).
pub fn verify_axiom_symbolic(spec: &FamilySpec) -> Result<AxiomOutcome> {
    if !matches!(spec, FamilySpec::Aab { .. }) {
        return Err(CoreError::Precondition(
            "the symbolic check applies to A_{a,b}; use the box check for A(a′), B(a′)".into(),
        ));
    }
    let basis = LatticeBasis::generic(&["μ", "ν", "λ"], false)?;
    let vir = Virasoro::new(basis.clone());
    let (mu, nu, la) = (basis.unit(0), basis.unit(1), basis.unit(2));
    let res = axiom_residual(spec, &vir, &mu, &nu, &la)?;
    let failure = res
        .into_values()
        .next()
        .map(|r| (mu.clone(), nu.clone(), la.clone(), r));
    Ok(AxiomOutcome { cases: 1, failure })
}

/// All vectors of the box [−r, r]^n.
pub fn box_vectors(rank: usize, radius: i64) -> Vec<LatticeVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-radius..=radius).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(LatticeVector::new).collect()
}

/// Exhaustive check over all (μ, ν, λ) in the box. Deterministic: the
/// reported failure is the first in lexicographic order.
pub fn verify_axiom_box(spec: &FamilySpec, basis: &LatticeBasis, radius: i64) -> Result<AxiomOutcome> {
    let vir = Virasoro::new(basis.clone());
    let pts = box_vectors(basis.rank(), radius);
    let pairs: Vec<(usize, usize)> = (0..pts.len())
        .flat_map(|i| (0..pts.len()).map(move |j| (i, j)))
        .collect();
    let failures: Vec<Option<(LatticeVector, LatticeVector, LatticeVector, Scalar)>> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<_> {
            for la in &pts {
                let res = axiom_residual(spec, &vir, &pts[i], &pts[j], la)?;
                if let Some(r) = res.into_values().next() {
                    return Ok(Some((pts[i].clone(), pts[j].clone(), la.clone(), r)));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(AxiomOutcome {
        cases: pts.len().pow(3),
        failure: failures.into_iter().flatten().next(),
    })
}

/// How the parameter a relates to M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// a is the lattice element with these coordinates.
    InM(LatticeVector),
    /// a is declared to lie outside M.
    NotInM,
    Undeclared,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple(String),
    NotSimple(String),
    Undecidable(String),
}

/// A_{a,b} is simple iff a ∉ M, or a ∈ M and b ∉ {0, 1}.
pub fn is_simple(spec: &FamilySpec, membership: &Membership) -> Simplicity {
    let FamilySpec::Aab { b, .. } = spec else {
        return Simplicity::Undecidable("the criterion covers A_{a,b} only".into());
    };
    match membership {
        Membership::NotInM => Simplicity::Simple("a ∉ M".into()),
        Membership::Undeclared => Simplicity::Undecidable("membership of a in M not declared".into()),
        Membership::InM(_) => match b.constant_value() {
            Some(v) if v == Rational::from_integer(0.into()) || v == Rational::from_integer(1.into()) => {
                Simplicity::NotSimple(format!("a ∈ M and b = {v}"))
            }
            Some(v) => Simplicity::Simple(format!("a ∈ M and b = {v} ∉ {{0,1}}")),
            None => Simplicity::Undecidable(format!("a ∈ M and b = {b} is symbolic")),
        },
    }
}

/// Residual of φ∘L_μ − L_μ∘φ on x′_ν for φ: A_{a,0} → A_{a,1},
/// x′_ν ↦ (a+ν)x_ν.
pub fn intertwiner_residual(
    a: &Scalar,
    basis: &LatticeBasis,
    mu: &LatticeVector,
    nu: &LatticeVector,
) -> Result<SeriesVector> {
    let src = FamilySpec::Aab { a: a.clone(), b: Scalar::zero() };
    let dst = FamilySpec::Aab { a: a.clone(), b: Scalar::one() };
    let phi = |v: &SeriesVector| -> SeriesVector {
        v.iter()
            .map(|(k, c)| (k.clone(), c.mul(&a.add(&basis.embed(k)))))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    };
    let x = SeriesVector::from([(nu.clone(), Scalar::one())]);
    let lhs = phi(&src.act(basis, mu, &x)?);
    let rhs = dst.act(basis, mu, &phi(&x))?;
    let mut out = lhs;
    for (k, c) in rhs {
        add_into(&mut out, k, c.neg());
    }
    Ok(out)
}

/// Symbolic intertwiner check with generic μ, ν; fails the precondition
/// when a is declared to lie in M.
pub fn iso_witness(a: &Scalar, membership: &Membership) -> Result<SeriesVector> {
    if !matches!(membership, Membership::NotInM) {
        return Err(CoreError::Precondition(format!("a = {a} must be declared outside M")));
    }
    let basis = LatticeBasis::generic(&["μ", "ν"], false)?;
    intertwiner_residual(a, &basis, &basis.unit(0), &basis.unit(1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rescale {
    Isomorphic,
    /// A generator whose image does not lie in the other lattice.
    NotIsomorphic(String),
}

/// Checks a·M′ = M for lattices given by generator values. Distinct
/// monomials in the values are treated as ℚ-linearly independent.
pub fn rescale_criterion(m: &[Scalar], m_prime: &[Scalar], a: &Scalar) -> Result<Rescale> {
    if a.is_zero() {
        return Err(CoreError::Precondition("a must be nonzero".into()));
    }
    let ainv = a.recip()?;
    for g in m_prime {
        let img = a.mul(g);
        if !in_lattice(&img, m)? {
            return Ok(Rescale::NotIsomorphic(format!("a·{g} = {img} ∉ M")));
        }
    }
    for g in m {
        let img = ainv.mul(g);
        if !in_lattice(&img, m_prime)? {
            return Ok(Rescale::NotIsomorphic(format!("a⁻¹·{g} = {img} ∉ M′")));
        }
    }
    Ok(Rescale::Isomorphic)
}

/// Whether `v` is an integer combination of `gens`, by exact elimination
/// over ℚ on monomial coordinates.
fn in_lattice(v: &Scalar, gens: &[Scalar]) -> Result<bool> {
    let Some(vp) = v.as_polynomial() else {
        return Ok(false);
    };
    let mut monos: Vec<hvir_arith::Monomial> = Vec::new();
    let coords = |p: &hvir_arith::Polynomial, monos: &mut Vec<hvir_arith::Monomial>| {
        let mut out = BTreeMap::new();
        for (m, c) in p.terms() {
            if !monos.contains(m) {
                monos.push(m.clone());
            }
            out.insert(m.clone(), c.clone());
        }
        out
    };
    let target = coords(vp, &mut monos);
    let mut cols = Vec::new();
    for g in gens {
        let gp = g
            .as_polynomial()
            .ok_or_else(|| CoreError::Precondition(format!("generator {g} is not a polynomial")))?;
        cols.push(coords(gp, &mut monos));
    }
    // Augmented matrix: rows are monomials, columns generators then target.
    let zero = Rational::from_integer(0.into());
    let n = gens.len();
    let mut a: Vec<Vec<Rational>> = monos
        .iter()
        .map(|m| {
            let mut row: Vec<Rational> = cols
                .iter()
                .map(|c| c.get(m).cloned().unwrap_or_else(|| zero.clone()))
                .collect();
            row.push(target.get(m).cloned().unwrap_or_else(|| zero.clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..a.len()).find(|&i| a[i][col] != zero) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && a[i][col] != zero {
                let f = a[i][col].clone();
                for j in 0..=n {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| row[n] != zero) {
        return Ok(false);
    }
    if pivots.len() < n {
        return Err(CoreError::Precondition("lattice generators are linearly dependent".into()));
    }
    Ok(a[..r].iter().all(|row| row[n].is_integer()))
}

/// Declarative family description, as read from configuration files.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub family: String,
    #[serde(default)]
    pub a: Option<String>,
    #[serde(default)]
    pub b: Option<String>,
    #[serde(default)]
    pub a_prime: Option<String>,
}

impl FamilyConfig {
    pub fn build(&self, basis: &LatticeBasis) -> Result<FamilySpec> {
        let parse = |t: &str| -> Result<Scalar> {
            Ok(hvir_arith::parse_scalar(t, &crate::pbw::BasisResolver { basis })?)
        };
        let ap = || -> Result<APrime> {
            match self.a_prime.as_deref() {
                None => Ok(APrime::Finite(Scalar::var(Symbol::parameter("a′")))),
                Some("inf") | Some("∞") | Some("infinity") => Ok(APrime::Infinity),
                Some(t) => Ok(APrime::Finite(parse(t)?)),
            }
        };
        match self.family.as_str() {
            "Aab" => Ok(FamilySpec::Aab {
                a: parse(self.a.as_deref().unwrap_or("a"))?,
                b: parse(self.b.as_deref().unwrap_or("b"))?,
            }),
            "Aprime" => Ok(FamilySpec::Aprime(ap()?)),
            "Bprime" => Ok(FamilySpec::Bprime(ap()?)),
            other => Err(CoreError::Config(format!("unknown family `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank2() -> LatticeBasis {
        LatticeBasis::standard(2).unwrap()
    }

    #[test]
    fn aab_action() {
        let b = rank2();
        let spec = FamilySpec::Aab { a: Scalar::zero(), b: Scalar::zero() };
        let v = SeriesVector::from([(LatticeVector::new(vec![0, 1]), Scalar::one())]);
        let out = spec.act(&b, &LatticeVector::new(vec![1, 0]), &v).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[&LatticeVector::new(vec![1, 1])].to_string(), "β₂");
    }

    #[test]
    fn special_cases_at_infinity() {
        let b = rank2();
        let mu = LatticeVector::new(vec![1, 0]);
        let x0 = SeriesVector::from([(b.zero(), Scalar::one())]);
        let out = FamilySpec::Aprime(APrime::Infinity).act(&b, &mu, &x0).unwrap();
        let m = b.embed(&mu);
        assert_eq!(out[&mu], m.mul(&m.add(&Scalar::one())));

        let ap = Scalar::var(Symbol::parameter("a′"));
        let xm = SeriesVector::from([(-&mu, Scalar::one())]);
        let out = FamilySpec::Bprime(APrime::Finite(ap.clone())).act(&b, &mu, &xm).unwrap();
        let expect = m.mul(&Scalar::one().add(&m.add(&Scalar::one()).mul(&ap))).neg();
        assert_eq!(out[&b.zero()], expect);
    }

    #[test]
    fn simplicity_criterion() {
        let aab = |b: i64| FamilySpec::Aab { a: Scalar::zero(), b: Scalar::integer(b) };
        let zero = Membership::InM(LatticeVector::new(vec![0, 0]));
        assert!(matches!(is_simple(&aab(5), &Membership::NotInM), Simplicity::Simple(_)));
        assert!(matches!(is_simple(&aab(0), &zero), Simplicity::NotSimple(_)));
        assert!(matches!(is_simple(&aab(2), &zero), Simplicity::Simple(_)));
        assert!(matches!(is_simple(&aab(2), &Membership::Undeclared), Simplicity::Undecidable(_)));
    }

    #[test]
    fn rescale_examples() {
        let one = Scalar::one();
        let two = Scalar::integer(2);
        assert_eq!(rescale_criterion(&[one.clone()], &[two.clone()], &Scalar::rational(1, 2)).unwrap(), Rescale::Isomorphic);
        assert_eq!(rescale_criterion(&[one.clone()], &[one.clone()], &one).unwrap(), Rescale::Isomorphic);
        let r2 = Scalar::var(Symbol::parameter("√2"));
        let r3 = Scalar::var(Symbol::parameter("√3"));
        for a in [one.clone(), Scalar::rational(1, 2), r2.clone(), r3.clone()] {
            let out = rescale_criterion(&[one.clone(), r2.clone()], &[one.clone(), r3.clone()], &a).unwrap();
            assert!(matches!(out, Rescale::NotIsomorphic(_)), "a = {a}");
        }
    }
}
