//! Shared plumbing for the identity checks: the generic basis, module
//! configurations, text transcriptions of printed relations and the
//! comparison helpers.

use std::collections::BTreeMap;

use hvir_arith::{parse_scalar, Rational, Scalar, Symbol, SymbolResolver};

use crate::error::{CoreError, Result};
use crate::lattice::{LatticeBasis, LatticeSubstitution, LatticeVector};
use crate::layered::{LayeredModule, LinearForm, ModuleVector, Relation};
use crate::pbw::{normalize_names, BasisResolver, OperatorExpr};

pub const FOUR_TERM: &str = include_str!("../../configs/four_term.toml");
pub const LEAKY: &str = include_str!("../../configs/leaky.toml");
pub const LEAKY_EQUAL_SLOPE: &str = include_str!("../../configs/leaky_equal_slope.toml");
pub const EXCEPTIONAL: &str = include_str!("../../configs/exceptional.toml");
pub const MATRIX: &str = include_str!("../../configs/matrix.toml");

/// Generic generators ν, μ, μ′, d plus the unit, with ν valued at ν̄.
pub fn generic_basis() -> Result<LatticeBasis> {
    LatticeBasis::generic(&["ν", "μ", "μ′", "d"], true)?.with_value("ν", var("ν̄"))
}

pub fn var(name: &str) -> Scalar {
    Scalar::var(Symbol::parameter(name))
}

pub fn int(n: i64) -> Scalar {
    Scalar::integer(n)
}

pub fn sym(name: &str) -> Symbol {
    Symbol::parameter(name)
}

/// Parameter bindings from (name, value) pairs.
pub fn bindings(pairs: &[(&str, Scalar)]) -> BTreeMap<Symbol, Scalar> {
    pairs.iter().map(|(n, v)| (sym(n), v.clone())).collect()
}

/// Numeric bindings from (name, integer) pairs.
pub fn point(pairs: &[(&str, i64)]) -> BTreeMap<Symbol, Rational> {
    pairs
        .iter()
        .map(|(n, v)| (sym(n), Rational::from_integer((*v).into())))
        .collect()
}

/// Resolves printed relations: `a[ν+μ]` and `c[-1;ν]` are unknowns indexed
/// by lattice combinations, `c[ν-1]` abbreviates `c[1;ν-1]`, generator names
/// are their values and any other identifier is a parameter.
pub struct TranscriptionResolver<'a> {
    pub basis: &'a LatticeBasis,
}

impl SymbolResolver for TranscriptionResolver<'_> {
    fn resolve(&self, name: &str, index: Option<&str>) -> std::result::Result<Scalar, String> {
        let Some(raw) = index else {
            return BasisResolver { basis: self.basis }.resolve(name, None);
        };
        let mut parts: Vec<&str> = raw.split(';').collect();
        if name == "c" && parts.len() == 1 {
            parts.insert(0, "1");
        }
        let index = parts
            .iter()
            .map(|p| {
                self.basis
                    .parse_combination(&normalize_names(p.trim()))
                    .map(|v| v.coords().to_vec())
                    .map_err(|e| e.to_string())
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Scalar::var(Symbol::unknown(name, index)))
    }
}

pub fn transcribe(basis: &LatticeBasis, text: &str) -> Result<Scalar> {
    Ok(parse_scalar(text, &TranscriptionResolver { basis })?)
}

pub fn unknown(basis: &LatticeBasis, text: &str) -> Result<Symbol> {
    let s = transcribe(basis, text)?;
    s.symbols()
        .into_iter()
        .find(Symbol::is_unknown)
        .ok_or_else(|| CoreError::Parse(format!("`{text}` is not an unknown")))
}

pub fn load(config: &str) -> Result<LayeredModule> {
    LayeredModule::from_toml(config)
}

pub fn expr(m: &LayeredModule, text: &str) -> Result<OperatorExpr> {
    OperatorExpr::parse(text, m.basis())
}

pub fn vector(m: &LayeredModule, layer: &str, index: &str) -> Result<ModuleVector> {
    Ok(ModuleVector::basis_vector(
        m.layer_index(layer)?,
        m.basis().parse_vector(index)?,
    ))
}

/// The relation `e1·v = e2·v` read off at one (layer, index).
pub fn relation_at(
    m: &LayeredModule,
    e1: &str,
    e2: &str,
    source: (&str, &str),
    target: (&str, &str),
) -> Result<Scalar> {
    let v = vector(m, source.0, source.1)?;
    let rels = m.extract_relation(&expr(m, e1)?, &expr(m, e2)?, &v)?;
    let index = m.basis().parse_vector(target.1)?;
    Ok(pick(&rels, target.0, &index))
}

pub fn pick(rels: &[Relation], layer: &str, index: &LatticeVector) -> Scalar {
    rels.iter()
        .find(|r| r.layer == layer && &r.index == index)
        .map(|r| r.linear.to_scalar())
        .unwrap_or_default()
}

/// Finds r with derived = r·printed, comparing on an unknown whose printed
/// coefficient is nonzero. None when no such multiple exists.
pub fn proportionality(derived: &Scalar, printed: &Scalar) -> Result<Option<Scalar>> {
    let d = LinearForm::from_scalar(derived)?;
    let p = LinearForm::from_scalar(printed)?;
    let Some((s, pc)) = p.coefficients.iter().next() else {
        return Ok(derived.is_zero().then(Scalar::one));
    };
    let r = d.coefficient(s).div(pc)?;
    Ok(derived.sub(&r.mul(printed)).is_zero().then_some(r))
}

/// Substitutes `family` unknowns by the solved expression, shifted in the
/// named generator so that it applies at every index with the same offset
/// pattern. `solved_at` is the index the expression was solved for.
pub fn substitute_family(
    basis: &LatticeBasis,
    target: &Scalar,
    solved_at: &Symbol,
    expression: &Scalar,
    shift_generator: &str,
) -> Result<Scalar> {
    let g = basis.index_of(shift_generator)?;
    let mut bind = BTreeMap::new();
    for s in target.symbols() {
        if !s.is_unknown() || s.name() != solved_at.name() || s.index().len() != solved_at.index().len() {
            continue;
        }
        let (a, b) = (s.index(), solved_at.index());
        let offsets: Vec<Vec<i64>> = a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect();
        let last = offsets.len() - 1;
        let same_op = offsets[..last].iter().all(|o| o.iter().all(|x| *x == 0));
        let delta = LatticeVector::new(offsets[last].clone());
        let along = delta
            .coords()
            .iter()
            .enumerate()
            .all(|(i, x)| *x == 0 || basis.unit_index() == Some(i) || i == g);
        if !same_op || !along || delta.coords()[g] != 0 {
            continue;
        }
        let sub = LatticeSubstitution::shift(basis, shift_generator, &delta)?;
        bind.insert(s.clone(), sub.apply_scalar(expression)?);
    }
    Ok(target.substitute(&bind)?)
}

/// Shifts a scalar (values and unknown indices) by `by` in the generator.
pub fn shift(basis: &LatticeBasis, s: &Scalar, generator: &str, by: &str) -> Result<Scalar> {
    let v = basis.parse_vector(by)?;
    LatticeSubstitution::shift(basis, generator, &v)?.apply_scalar(s)
}

/// The cubic enveloping-algebra combination built from L_μ, L_μ′, L_d:
/// k₁(L_μL_μ′L_d − L_μL_dL_μ′ − L_μ′L_dL_μ + L_dL_μ′L_μ) − k₂(L_{μ+μ′}L_d − L_dL_{μ+μ′})
/// with k₁ = d−μ−μ′ and k₂ = (d−μ′)(d+μ′−μ).
pub fn cubic_identity(
    basis: &LatticeBasis,
    mu: &LatticeVector,
    mup: &LatticeVector,
    d: &LatticeVector,
) -> OperatorExpr {
    let (em, emp, ed) = (basis.embed(mu), basis.embed(mup), basis.embed(d));
    let k1 = ed.sub(&em).sub(&emp);
    let k2 = ed.sub(&emp).mul(&ed.add(&emp).sub(&em));
    let l = |v: &LatticeVector| OperatorExpr::gen(v.clone());
    let p = |parts: Vec<OperatorExpr>| OperatorExpr::product(parts);
    let sum = mu + mup;
    let cubic = OperatorExpr::sum(vec![
        p(vec![l(mu), l(mup), l(d)]),
        OperatorExpr::scale(int(-1), p(vec![l(mu), l(d), l(mup)])),
        OperatorExpr::scale(int(-1), p(vec![l(mup), l(d), l(mu)])),
        p(vec![l(d), l(mup), l(mu)]),
    ]);
    let quadratic = OperatorExpr::sub(p(vec![l(&sum), l(d)]), p(vec![l(d), l(&sum)]));
    OperatorExpr::sub(OperatorExpr::scale(k1, cubic), OperatorExpr::scale(k2, quadratic))
}

/// Numerator of a scalar as a scalar (drops a nonzero denominator).
pub fn numerator(s: &Scalar) -> Scalar {
    Scalar::from_poly(s.numerator().clone())
}
