//! The weight lattice: generators, coordinate vectors, basis changes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use hvir_arith::{Rational, Scalar, Symbol};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// A basis element of M with scalar value β_i (or a bound constant).
    Concrete,
    /// A formal element in generic position, such as μ or d.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    /// Value of the generator inside ℂ.
    pub value: Scalar,
}

/// An ordered list of lattice generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    gens: Arc<Vec<Generator>>,
}

impl LatticeBasis {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        if gens.is_empty() {
            return Err(CoreError::RankTooSmall { needed: 1, rank: 0 });
        }
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(CoreError::Config(format!("duplicate generator `{}`", g.name)));
            }
        }
        Ok(LatticeBasis { gens: Arc::new(gens) })
    }

    /// Generators b₁..bₙ with symbolic values β₁..βₙ.
    pub fn standard(rank: usize) -> Result<Self> {
        let gens = (1..=rank)
            .map(|i| {
                let name = format!("β{}", subscript(i));
                Generator {
                    value: Scalar::var(Symbol::basis_value(&name)),
                    name: format!("b{}", subscript(i)),
                    kind: GeneratorKind::Concrete,
                }
            })
            .collect();
        Self::new(gens)
    }

    /// Replaces the value of generator `i` (for example β₁ ↦ 1).
    pub fn bind(&self, i: usize, value: Scalar) -> Self {
        let mut gens = (*self.gens).clone();
        gens[i].value = value;
        LatticeBasis { gens: Arc::new(gens) }
    }

    /// A basis of formal generic generators; `unit` adds a concrete
    /// generator of value 1 named "1".
    pub fn generic(names: &[&str], unit: bool) -> Result<Self> {
        let mut gens: Vec<Generator> = names
            .iter()
            .map(|n| Generator {
                name: n.to_string(),
                kind: GeneratorKind::Generic,
                value: Scalar::var(Symbol::parameter(n)),
            })
            .collect();
        if unit {
            gens.push(Generator {
                name: "1".into(),
                kind: GeneratorKind::Concrete,
                value: Scalar::one(),
            });
        }
        Self::new(gens)
    }

    pub fn with_value(&self, name: &str, value: Scalar) -> Result<Self> {
        let i = self.index_of(name)?;
        Ok(self.bind(i, value))
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| CoreError::Parse(format!("unknown generator `{name}`")))
    }

    /// Index of the generator whose value is exactly 1, if any.
    pub fn unit_index(&self) -> Option<usize> {
        self.gens.iter().position(|g| g.value == Scalar::one())
    }

    pub fn zero(&self) -> LatticeVector {
        LatticeVector::zero(self.rank())
    }

    pub fn unit(&self, i: usize) -> LatticeVector {
        LatticeVector::unit(self.rank(), i)
    }

    pub fn gen(&self, name: &str) -> Result<LatticeVector> {
        Ok(self.unit(self.index_of(name)?))
    }

    pub fn check(&self, v: &LatticeVector) -> Result<()> {
        if v.rank() != self.rank() {
            return Err(CoreError::RankMismatch {
                expected: self.rank(),
                found: v.rank(),
            });
        }
        Ok(())
    }

    /// Σ mᵢ·βᵢ.
    pub fn embed(&self, v: &LatticeVector) -> Scalar {
        let mut acc = Scalar::zero();
        for (g, m) in self.gens.iter().zip(v.coords()) {
            if *m != 0 {
                acc = acc.add(&g.value.scale(&Rational::from_integer((*m).into())));
            }
        }
        acc
    }

    /// Decides δ_{μ,−ν} on coordinates.
    pub fn delta_opposite(&self, mu: &LatticeVector, nu: &LatticeVector) -> Delta {
        let sum = mu + nu;
        if sum.is_zero() {
            Delta::Fires
        } else if sum
            .coords()
            .iter()
            .zip(self.gens.iter())
            .any(|(m, g)| *m != 0 && g.kind == GeneratorKind::Generic)
        {
            Delta::GenericDistinct
        } else {
            Delta::Distinct
        }
    }

    /// Parses either a comma separated coordinate list ("1,-2,3") or an
    /// integer combination of generator names ("ν+2μ−1"); a bare integer
    /// in a combination is a multiple of the unit generator.
    pub fn parse_vector(&self, text: &str) -> Result<LatticeVector> {
        let t = text.trim();
        if t.contains(',') || t.parse::<i64>().is_ok() && self.unit_index().is_none() {
            return self.parse_coords(t);
        }
        self.parse_combination(t)
    }

    pub fn parse_coords(&self, text: &str) -> Result<LatticeVector> {
        let coords = text
            .split(',')
            .map(|s| {
                let s = s.trim().replace('−', "-");
                s.parse::<i64>()
                    .map_err(|_| CoreError::Parse(format!("bad coordinate `{s}` in `{text}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let v = LatticeVector::new(coords);
        self.check(&v)?;
        Ok(v)
    }

    pub fn parse_combination(&self, text: &str) -> Result<LatticeVector> {
        let mut v = self.zero();
        let text = text.replace('−', "-");
        let mut rest = text.trim();
        if rest.is_empty() || rest == "0" {
            return Ok(v);
        }
        while !rest.is_empty() {
            let mut sign = 1i64;
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r.trim_start();
            }
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            rest = &rest[digits.len()..];
            let coeff: i64 = if digits.is_empty() {
                1
            } else {
                digits
                    .parse()
                    .map_err(|_| CoreError::Parse(format!("bad integer in `{text}`")))?
            };
            rest = rest.trim_start().strip_prefix('*').unwrap_or(rest).trim_start();
            let name: String = rest
                .chars()
                .take_while(|c| !matches!(c, '+' | '-' | ' '))
                .collect();
            rest = &rest[name.len()..];
            let idx = if name.is_empty() {
                if digits.is_empty() {
                    return Err(CoreError::Parse(format!("empty term in `{text}`")));
                }
                self.unit_index().ok_or_else(|| {
                    CoreError::Parse(format!("`{text}` has a constant but the basis has no unit"))
                })?
            } else {
                self.index_of(&name)?
            };
            v.0[idx] += sign * coeff;
        }
        Ok(v)
    }

    /// Human readable combination of generator names.
    pub fn format_vector(&self, v: &LatticeVector) -> String {
        let mut out = String::new();
        for (g, m) in self.gens.iter().zip(v.coords()) {
            if *m == 0 {
                continue;
            }
            let sign = if *m < 0 { "−" } else if out.is_empty() { "" } else { "+" };
            out.push_str(sign);
            let a = m.abs();
            if g.name == "1" {
                out.push_str(&a.to_string());
            } else if a == 1 {
                out.push_str(&g.name);
            } else {
                out.push_str(&format!("{a}{}", g.name));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Outcome of a coordinate comparison behind δ_{μ,−ν}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Delta {
    Fires,
    Distinct,
    /// Distinct only because generic generators are assumed independent.
    GenericDistinct,
}

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

/// Integer coordinates relative to a [`LatticeBasis`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// deg_B: the sum of the coordinates.
    pub fn deg(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Order used for PBW words: degree first, then coordinates read from
    /// the last generator backwards.
    pub fn pbw_key(&self) -> (i64, Vec<i64>) {
        (self.deg(), self.0.iter().rev().copied().collect())
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// New generators written in old coordinates, one row per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    rows: Vec<Vec<i64>>,
}

impl BasisChange {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(CoreError::Config("basis change must be a nonempty square matrix".into()));
        }
        Ok(BasisChange { rows })
    }

    pub fn identity(n: usize) -> Self {
        BasisChange {
            rows: (0..n).map(|i| LatticeVector::unit(n, i).0).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector(self.rows[i].clone())
    }

    /// Exact integer determinant (fraction-free elimination).
    pub fn determinant(&self) -> BigInt {
        let n = self.rank();
        let mut a: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// Old coordinates of the vector with new coordinates `v`.
    pub fn to_old(&self, v: &LatticeVector) -> LatticeVector {
        let n = self.rank();
        let mut out = vec![0i64; n];
        for (vi, row) in v.coords().iter().zip(&self.rows) {
            for j in 0..n {
                out[j] += vi * row[j];
            }
        }
        LatticeVector(out)
    }
}

impl fmt::Display for BasisChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", LatticeVector(r.clone()))?;
        }
        Ok(())
    }
}

/// The generators b′ᵢ = Σ_{j≤i}(k+i−j+1)bⱼ + k·Σ_{j>i}bⱼ.
pub fn basis_lemma21(rank: usize, k: u32) -> Result<BasisChange> {
    if rank == 0 {
        return Err(CoreError::RankTooSmall { needed: 1, rank });
    }
    let k = k as i64;
    let rows = (1..=rank as i64)
        .map(|i| {
            (1..=rank as i64)
                .map(|j| if j <= i { k + i - j + 1 } else { k })
                .collect()
        })
        .collect();
    BasisChange::new(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma23Case {
    /// m₁ ≠ 0 and m₂ ≠ 0.
    BothLeading,
    /// Some coordinate vanishes; the lowest such index is recorded.
    ZeroAt(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma23 {
    /// New generators in the sign-normalized old basis.
    pub change: BasisChange,
    pub case: Lemma23Case,
    /// Indices i with bᵢ replaced by −bᵢ before the construction.
    pub flips: Vec<usize>,
    /// μ in the sign-normalized basis.
    pub normalized: LatticeVector,
}

impl Lemma23 {
    /// New generators in the original (unflipped) basis.
    pub fn change_in_original(&self) -> BasisChange {
        let rows = self
            .change
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(j, &x)| if self.flips.contains(&j) { -x } else { x })
                    .collect()
            })
            .collect();
        BasisChange { rows }
    }
}

/// The basis adapted to a nonzero μ: after sign normalization, either
/// b′₁ = m₂μ+b₁, b′₂ = m₁μ−b₂, b′ᵢ = b′₁+bᵢ (i ≥ 3), or, when m_{i₀} = 0
/// for a lowest index i₀, b′_{i₀} = μ+b_{i₀} and b′ⱼ = b′_{i₀}+bⱼ otherwise.
pub fn basis_lemma23(mu: &LatticeVector) -> Result<Lemma23> {
    let n = mu.rank();
    if n < 2 {
        return Err(CoreError::RankTooSmall { needed: 2, rank: n });
    }
    if mu.is_zero() {
        return Err(CoreError::ZeroVector);
    }
    let flips: Vec<usize> = (0..n).filter(|&i| mu.coords()[i] < 0).collect();
    let m: Vec<i64> = mu.coords().iter().map(|c| c.abs()).collect();
    let e = |i: usize| LatticeVector::unit(n, i);
    let mv = LatticeVector(m.clone());
    let (rows, case) = if m[0] != 0 && m[1] != 0 {
        let b1 = &mv.scale(m[1]) + &e(0);
        let b2 = &mv.scale(m[0]) - &e(1);
        let mut rows = vec![b1.0.clone(), b2.0];
        for i in 2..n {
            rows.push((&b1 + &e(i)).0);
        }
        (rows, Lemma23Case::BothLeading)
    } else {
        let i0 = m.iter().position(|&x| x == 0).expect("some coordinate vanishes");
        let lead = &mv + &e(i0);
        let rows = (0..n)
            .map(|j| if j == i0 { lead.0.clone() } else { (&lead + &e(j)).0 })
            .collect();
        (rows, Lemma23Case::ZeroAt(i0))
    };
    Ok(Lemma23 {
        change: BasisChange::new(rows)?,
        case,
        flips,
        normalized: mv,
    })
}

/// True iff the vector with coordinates `mu` in the new basis has all old
/// coordinates ≥ k.
pub fn cone_membership(mu: &LatticeVector, change: &BasisChange, k: i64) -> bool {
    change.to_old(mu).coords().iter().all(|&c| c >= k)
}

/// Simultaneous replacement of generators by lattice vectors, acting on
/// vectors, on scalars (through generator values) and on the indices of
/// unknown symbols.
#[derive(Clone, Debug)]
pub struct LatticeSubstitution {
    basis: LatticeBasis,
    images: BTreeMap<usize, LatticeVector>,
}

impl LatticeSubstitution {
    pub fn new(basis: &LatticeBasis) -> Self {
        LatticeSubstitution {
            basis: basis.clone(),
            images: BTreeMap::new(),
        }
    }

    /// `name ↦ image`; the image may be a combination string.
    pub fn map(mut self, name: &str, image: &str) -> Result<Self> {
        let i = self.basis.index_of(name)?;
        let v = self.basis.parse_vector(image)?;
        self.images.insert(i, v);
        Ok(self)
    }

    pub fn map_vector(mut self, i: usize, image: LatticeVector) -> Self {
        self.images.insert(i, image);
        self
    }

    /// ν ↦ ν + shift for the named generator.
    pub fn shift(basis: &LatticeBasis, name: &str, by: &LatticeVector) -> Result<Self> {
        let i = basis.index_of(name)?;
        let image = &basis.unit(i) + by;
        Ok(Self::new(basis).map_vector(i, image))
    }

    pub fn apply_vector(&self, v: &LatticeVector) -> LatticeVector {
        let mut out = v.clone();
        for (&i, image) in &self.images {
            let m = v.coords()[i];
            if m != 0 {
                out.0[i] -= m;
                out = &out + &image.scale(m);
            }
        }
        out
    }

    fn scalar_bindings(&self) -> Result<BTreeMap<Symbol, Scalar>> {
        let mut bind = BTreeMap::new();
        for (&i, image) in &self.images {
            let g = &self.basis.generators()[i];
            let target = self.basis.embed(image);
            if target == g.value {
                continue;
            }
            let sym = g
                .value
                .as_polynomial()
                .and_then(|p| p.univariate_symbol().ok().flatten().filter(|_| p.len() == 1))
                .filter(|s| g.value == Scalar::var(s.clone()))
                .ok_or_else(|| {
                    CoreError::Precondition(format!(
                        "generator `{}` has value {} which is not a plain symbol",
                        g.name, g.value
                    ))
                })?;
            bind.insert(sym, target);
        }
        Ok(bind)
    }

    /// Rewrites generator values and unknown indices inside a scalar.
    pub fn apply_scalar(&self, s: &Scalar) -> Result<Scalar> {
        let mut bind = self.scalar_bindings()?;
        let rank = self.basis.rank();
        for sym in s.symbols() {
            if !sym.is_unknown() || sym.index().iter().any(|c| c.len() != rank) {
                continue;
            }
            let index: Vec<Vec<i64>> = sym
                .index()
                .iter()
                .map(|c| self.apply_vector(&LatticeVector(c.clone())).0)
                .collect();
            if index != sym.index() {
                bind.insert(sym.clone(), Scalar::var(sym.with_index(index)));
            }
        }
        if bind.is_empty() {
            return Ok(s.clone());
        }
        Ok(s.substitute(&bind)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma21_small_cases() {
        let c = basis_lemma21(2, 1).unwrap();
        assert_eq!(c.rows(), &[vec![2, 1], vec![3, 2]]);
        assert_eq!(c.determinant(), BigInt::one());
        assert_eq!(basis_lemma21(1, 0).unwrap().rows(), &[vec![1]]);
        assert_eq!(basis_lemma21(3, 2).unwrap().determinant(), BigInt::one());
    }

    #[test]
    fn lemma23_examples() {
        let l = basis_lemma23(&LatticeVector::new(vec![1, 1])).unwrap();
        assert_eq!(l.case, Lemma23Case::BothLeading);
        assert_eq!(l.change.rows(), &[vec![2, 1], vec![1, 0]]);
        assert_eq!(l.change.determinant(), BigInt::from(-1));

        let l = basis_lemma23(&LatticeVector::new(vec![0, 3])).unwrap();
        assert_eq!(l.case, Lemma23Case::ZeroAt(0));
        assert_eq!(l.change.rows(), &[vec![1, 3], vec![1, 4]]);
        assert_eq!(l.change.determinant(), BigInt::one());

        let l = basis_lemma23(&LatticeVector::new(vec![-1, -1])).unwrap();
        assert_eq!(l.flips, vec![0, 1]);
        assert_eq!(l.change.rows(), &[vec![2, 1], vec![1, 0]]);
        assert_eq!(l.change_in_original().rows(), &[vec![-2, -1], vec![-1, 0]]);

        assert!(matches!(
            basis_lemma23(&LatticeVector::new(vec![3])),
            Err(CoreError::RankTooSmall { .. })
        ));
    }

    #[test]
    fn cone_examples() {
        let id = BasisChange::identity(2);
        assert!(cone_membership(&LatticeVector::new(vec![1, 1]), &id, 1));
        assert!(!cone_membership(&LatticeVector::new(vec![1, 0]), &id, 1));
    }

    #[test]
    fn parse_and_embed() {
        let b = LatticeBasis::standard(2).unwrap();
        let v = b.parse_vector("1,0").unwrap();
        assert_eq!(b.embed(&v).to_string(), "β₁");
        let b = b.bind(0, Scalar::one()).with_value("b₂", Scalar::var(Symbol::parameter("d"))).unwrap();
        assert_eq!(b.embed(&LatticeVector::new(vec![1, 1])).to_string(), "d+1");
        assert!(b.parse_vector("1,2,3").is_err());

        let g = LatticeBasis::generic(&["ν", "μ", "μ′", "d"], true).unwrap();
        let v = g.parse_vector("ν+2μ′−1").unwrap();
        assert_eq!(v.coords(), &[1, 0, 2, 0, -1]);
        assert_eq!(g.format_vector(&v), "ν+2μ′−1");
    }

    #[test]
    fn generic_delta() {
        let g = LatticeBasis::generic(&["μ", "d"], true).unwrap();
        let mu = g.gen("μ").unwrap();
        let d = g.gen("d").unwrap();
        assert_eq!(g.delta_opposite(&mu, &(-&mu)), Delta::Fires);
        assert_eq!(g.delta_opposite(&mu, &d), Delta::GenericDistinct);
        let one = g.gen("1").unwrap();
        assert_eq!(g.delta_opposite(&one, &one), Delta::Distinct);
    }

    #[test]
    fn substitution_moves_values_and_indices() {
        let g = LatticeBasis::generic(&["ν", "μ"], true).unwrap();
        let sub = LatticeSubstitution::new(&g).map("ν", "ν−μ").unwrap();
        let a = Symbol::unknown("a", vec![g.parse_vector("ν+μ").unwrap().coords().to_vec()]);
        let s = Scalar::var(Symbol::parameter("ν")).mul(&Scalar::var(a));
        let out = sub.apply_scalar(&s).unwrap();
        let a_nu = Symbol::unknown("a", vec![g.parse_vector("ν").unwrap().coords().to_vec()]);
        let expect = Scalar::var(Symbol::parameter("ν"))
            .sub(&Scalar::var(Symbol::parameter("μ")))
            .mul(&Scalar::var(a_nu));
        assert_eq!(out, expect);
    }
}
