//! Layered extension modules: finitely many layers of weight vectors indexed
//! by a sublattice, each acted on diagonally by the sublattice, with
//! triangular leakage into later layers and explicit rules for the
//! remaining generators.
//!
//! Coefficient templates are scalars in two placeholder symbols: `wt`, the
//! weight of the source index (the embedded index, without layer offset),
//! and `op`, the embedded operator.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use hvir_arith::{parse_scalar, Scalar, Symbol, SymbolResolver};
use serde::Deserialize;

use crate::error::{CoreError, Result};
use crate::lattice::{LatticeBasis, LatticeVector};
use crate::pbw::{normalize_names, BasisResolver, OperatorExpr};

/// Finite map (layer, index) → coefficient, without stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleVector {
    terms: BTreeMap<(usize, LatticeVector), Scalar>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis_vector(layer: usize, index: LatticeVector) -> Self {
        let mut v = Self::zero();
        v.add_term(layer, index, Scalar::one());
        v
    }

    pub fn terms(&self) -> &BTreeMap<(usize, LatticeVector), Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, layer: usize, index: &LatticeVector) -> Scalar {
        self.terms
            .get(&(layer, index.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, layer: usize, index: LatticeVector, k: Scalar) {
        if k.is_zero() {
            return;
        }
        let key = (layer, index);
        let s = match self.terms.remove(&key) {
            Some(old) => old.add(&k),
            None => k,
        };
        if !s.is_zero() {
            self.terms.insert(key, s);
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, k: &Scalar) {
        for ((l, i), c) in &other.terms {
            self.add_term(*l, i.clone(), c.mul(k));
        }
    }

    pub fn scale(&self, k: &Scalar) -> ModuleVector {
        let mut out = ModuleVector::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::integer(-1));
        out
    }
}

#[derive(Clone, Debug)]
pub struct Layer {
    pub name: String,
    /// Weight offset: the weight of index ν is embed(ν + offset).
    pub offset: LatticeVector,
    /// L_μ v_ν = (weight + slope·μ) v_{μ+ν} for μ in the sublattice.
    pub slope: Scalar,
    /// Coefficients landing here are discarded and counted.
    pub truncated: bool,
}

/// L_μ from_ν gains family[μ; ν]·to_{μ+ν} for μ in the sublattice; the
/// unknown vanishes at μ = 0.
#[derive(Clone, Debug)]
pub struct Leak {
    pub from: usize,
    pub to: usize,
    pub family: String,
}

#[derive(Clone, Debug)]
pub enum RuleCoefficient {
    Template(Scalar),
    /// family[ν] at source index ν.
    Unknown(String),
}

/// L_op from_ν gains coefficient·to_{ν+shift}; restricted to one source
/// index when `at` is set.
#[derive(Clone, Debug)]
pub struct ExactRule {
    pub op: LatticeVector,
    pub from: usize,
    pub to: usize,
    pub shift: LatticeVector,
    pub coefficient: RuleCoefficient,
    pub at: Option<LatticeVector>,
}

#[derive(Clone, Debug)]
pub struct LayeredModule {
    basis: LatticeBasis,
    in_sublattice: Vec<bool>,
    layers: Vec<Layer>,
    leaks: Vec<Leak>,
    rules: Vec<ExactRule>,
    overrides: BTreeMap<Symbol, Scalar>,
    discarded: Arc<AtomicU64>,
}

fn placeholder(name: &str) -> Symbol {
    Symbol::parameter(name)
}

/// Resolves `wt` and `op` to placeholders, generator names to their values
/// and other identifiers to parameters.
struct TemplateResolver<'a> {
    basis: &'a LatticeBasis,
}

impl SymbolResolver for TemplateResolver<'_> {
    fn resolve(&self, name: &str, index: Option<&str>) -> std::result::Result<Scalar, String> {
        match normalize_names(name).as_str() {
            "wt" => Ok(Scalar::var(placeholder("wt"))),
            "op" => Ok(Scalar::var(placeholder("op"))),
            _ => BasisResolver { basis: self.basis }.resolve(name, index),
        }
    }
}

impl LayeredModule {
    /// `sublattice` names the generators spanning the index lattice.
    pub fn new(basis: LatticeBasis, sublattice: &[&str]) -> Result<Self> {
        let mut in_sublattice = vec![false; basis.rank()];
        for name in sublattice {
            in_sublattice[basis.index_of(name)?] = true;
        }
        Ok(LayeredModule {
            basis,
            in_sublattice,
            layers: Vec::new(),
            leaks: Vec::new(),
            rules: Vec::new(),
            overrides: BTreeMap::new(),
            discarded: Arc::new(AtomicU64::new(0)),
        })
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer_index(&self, name: &str) -> Result<usize> {
        self.layers
            .iter()
            .position(|l| l.name == name)
            .ok_or_else(|| CoreError::UnknownLayer(name.to_string()))
    }

    /// Number of coefficients dropped into truncated layers so far.
    pub fn discarded(&self) -> u64 {
        self.discarded.load(Ordering::Relaxed)
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        Ok(parse_scalar(text, &TemplateResolver { basis: &self.basis })?)
    }

    pub fn add_layer(&mut self, name: &str, offset: &str, slope: &str, truncated: bool) -> Result<usize> {
        let offset = self.basis.parse_vector(offset)?;
        let slope = self.parse_scalar(slope)?;
        self.layers.push(Layer {
            name: name.to_string(),
            offset,
            slope,
            truncated,
        });
        Ok(self.layers.len() - 1)
    }

    pub fn add_leak(&mut self, from: &str, to: &str, family: &str) -> Result<()> {
        let (from, to) = (self.layer_index(from)?, self.layer_index(to)?);
        if to <= from {
            return Err(CoreError::Config(format!(
                "leak from `{}` to `{}` is not triangular",
                self.layers[from].name, self.layers[to].name
            )));
        }
        self.leaks.push(Leak {
            from,
            to,
            family: family.to_string(),
        });
        Ok(())
    }

    /// Rule with a template coefficient; `at` restricts it to one index.
    pub fn add_rule(
        &mut self,
        op: &str,
        from: &str,
        to: &str,
        shift: &str,
        template: &str,
        at: Option<&str>,
    ) -> Result<()> {
        let coefficient = RuleCoefficient::Template(self.parse_scalar(template)?);
        self.push_rule(op, from, to, shift, coefficient, at)
    }

    /// Rule whose coefficient is the unknown family[ν].
    pub fn add_unknown_rule(&mut self, op: &str, from: &str, to: &str, shift: &str, family: &str) -> Result<()> {
        self.push_rule(op, from, to, shift, RuleCoefficient::Unknown(family.to_string()), None)
    }

    fn push_rule(
        &mut self,
        op: &str,
        from: &str,
        to: &str,
        shift: &str,
        coefficient: RuleCoefficient,
        at: Option<&str>,
    ) -> Result<()> {
        let op = self.basis.parse_vector(op)?;
        if self.in_sublattice(&op) {
            return Err(CoreError::Config(format!(
                "rule operator {} lies in the index lattice",
                self.basis.format_vector(&op)
            )));
        }
        let (from, to) = (self.layer_index(from)?, self.layer_index(to)?);
        let shift = self.basis.parse_vector(shift)?;
        let at = at.map(|a| self.basis.parse_vector(a)).transpose()?;
        self.rules.push(ExactRule {
            op,
            from,
            to,
            shift,
            coefficient,
            at,
        });
        Ok(())
    }

    /// Replaces one unknown by a fixed value wherever it is produced.
    pub fn override_unknown(&mut self, unknown: Symbol, value: Scalar) {
        self.overrides.insert(unknown, value);
    }

    pub fn in_sublattice(&self, v: &LatticeVector) -> bool {
        v.coords()
            .iter()
            .zip(&self.in_sublattice)
            .all(|(m, inside)| *m == 0 || *inside)
    }

    fn unknown(&self, family: &str, index: Vec<Vec<i64>>) -> Scalar {
        let sym = Symbol::unknown(family, index);
        match self.overrides.get(&sym) {
            Some(v) => v.clone(),
            None => Scalar::var(sym),
        }
    }

    fn emit(&self, out: &mut ModuleVector, layer: usize, index: LatticeVector, k: Scalar) {
        if k.is_zero() {
            return;
        }
        if self.layers[layer].truncated {
            self.discarded.fetch_add(1, Ordering::Relaxed);
        } else {
            out.add_term(layer, index, k);
        }
    }

    /// L_op on a single basis vector.
    fn act_basis(&self, op: &LatticeVector, layer: usize, index: &LatticeVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        let target = op + index;
        let wt = self.basis.embed(index);
        let eop = self.basis.embed(op);
        if self.in_sublattice(op) {
            let l = &self.layers[layer];
            let k = wt.add(&self.basis.embed(&l.offset)).add(&eop.mul(&l.slope));
            self.emit(&mut out, layer, target.clone(), k);
            if !op.is_zero() {
                for leak in self.leaks.iter().filter(|lk| lk.from == layer) {
                    let k = self.unknown(&leak.family, vec![op.coords().to_vec(), index.coords().to_vec()]);
                    self.emit(&mut out, leak.to, target.clone(), k);
                }
            }
            return Ok(out);
        }
        let mut defined = false;
        for rule in self.rules.iter().filter(|r| &r.op == op && r.from == layer) {
            defined = true;
            if rule.at.as_ref().is_some_and(|a| a != index) {
                continue;
            }
            let k = match &rule.coefficient {
                RuleCoefficient::Template(t) => {
                    let bind = BTreeMap::from([(placeholder("wt"), wt.clone()), (placeholder("op"), eop.clone())]);
                    t.substitute(&bind)?
                }
                RuleCoefficient::Unknown(f) => self.unknown(f, vec![index.coords().to_vec()]),
            };
            self.emit(&mut out, rule.to, index + &rule.shift, k);
        }
        if !defined {
            return Err(CoreError::UndefinedGenerator(format!(
                "{} on layer `{}`",
                self.basis.format_vector(op),
                self.layers[layer].name
            )));
        }
        Ok(out)
    }

    pub fn act(&self, op: &LatticeVector, v: &ModuleVector) -> Result<ModuleVector> {
        self.basis.check(op)?;
        let mut out = ModuleVector::zero();
        for ((layer, index), k) in v.terms() {
            out.add_scaled(&self.act_basis(op, *layer, index)?, k);
        }
        Ok(out)
    }

    /// Evaluates an operator expression; c acts as zero.
    pub fn apply_operator(&self, e: &OperatorExpr, v: &ModuleVector) -> Result<ModuleVector> {
        Ok(match e {
            OperatorExpr::Gen(op) => self.act(op, v)?,
            OperatorExpr::Central => ModuleVector::zero(),
            OperatorExpr::Sum(parts) => {
                let mut out = ModuleVector::zero();
                for p in parts {
                    out.add_scaled(&self.apply_operator(p, v)?, &Scalar::one());
                }
                out
            }
            OperatorExpr::Scale(k, inner) => self.apply_operator(inner, v)?.scale(k),
            OperatorExpr::Product(parts) => {
                let mut acc = v.clone();
                for p in parts.iter().rev() {
                    acc = self.apply_operator(p, &acc)?;
                }
                acc
            }
            OperatorExpr::Comm(a, b) => {
                let ab = self.apply_operator(a, &self.apply_operator(b, v)?)?;
                let ba = self.apply_operator(b, &self.apply_operator(a, v)?)?;
                ab.sub(&ba)
            }
        })
    }

    /// Applies both expressions to v and returns one linear relation per
    /// (layer, index) where they differ.
    pub fn extract_relation(&self, e1: &OperatorExpr, e2: &OperatorExpr, v: &ModuleVector) -> Result<Vec<Relation>> {
        let diff = self.apply_operator(e1, v)?.sub(&self.apply_operator(e2, v)?);
        diff.terms()
            .iter()
            .map(|((layer, index), k)| {
                Ok(Relation {
                    layer: self.layers[*layer].name.clone(),
                    index: index.clone(),
                    linear: LinearForm::from_scalar(k)?,
                })
            })
            .collect()
    }

    pub fn from_config(cfg: &ModuleConfig) -> Result<Self> {
        let names: Vec<&str> = cfg.generators.iter().map(String::as_str).collect();
        let mut basis = LatticeBasis::generic(&names, cfg.unit)?;
        for (name, value) in &cfg.values {
            let v = parse_scalar(value, &BasisResolver { basis: &basis })?;
            basis = basis.with_value(name, v)?;
        }
        let sub: Vec<&str> = cfg.sublattice.iter().map(String::as_str).collect();
        let mut m = LayeredModule::new(basis, &sub)?;
        for l in &cfg.layer {
            m.add_layer(&l.name, &l.offset, &l.slope, l.truncated)?;
        }
        for lk in &cfg.leak {
            m.add_leak(&lk.from, &lk.to, &lk.family)?;
        }
        for r in &cfg.rule {
            match (&r.template, &r.unknown) {
                (Some(t), None) => m.add_rule(&r.op, &r.from, &r.to, &r.shift, t, r.at.as_deref())?,
                (None, Some(f)) if r.at.is_none() => m.add_unknown_rule(&r.op, &r.from, &r.to, &r.shift, f)?,
                _ => {
                    return Err(CoreError::Config(format!(
                        "rule for {} needs exactly one of `template`, `unknown` (and no `at` with `unknown`)",
                        r.op
                    )))
                }
            }
        }
        for o in &cfg.r#override {
            let index = o
                .index
                .iter()
                .map(|t| Ok(m.basis.parse_vector(t)?.coords().to_vec()))
                .collect::<Result<Vec<_>>>()?;
            let value = m.parse_scalar(&o.value)?;
            m.override_unknown(Symbol::unknown(&o.family, index), value);
        }
        Ok(m)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ModuleConfig = toml::from_str(text).map_err(|e| CoreError::Config(e.to_string()))?;
        Self::from_config(&cfg)
    }
}

/// Σ coefficient·unknown + constant, with the unknowns the indexed symbols
/// occurring in the source scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coefficients: BTreeMap<Symbol, Scalar>,
    pub constant: Scalar,
}

impl LinearForm {
    pub fn from_scalar(k: &Scalar) -> Result<Self> {
        let unknowns: Vec<Symbol> = k.symbols().into_iter().filter(Symbol::is_unknown).collect();
        let (coefficients, constant) = k
            .linear_coefficients(&unknowns)
            .map_err(|_| CoreError::NonLinear(k.to_string()))?;
        let coefficients = coefficients.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LinearForm { coefficients, constant })
    }

    pub fn to_scalar(&self) -> Scalar {
        self.coefficients
            .iter()
            .fold(self.constant.clone(), |acc, (s, c)| acc.add(&c.mul(&Scalar::var(s.clone()))))
    }

    pub fn coefficient(&self, s: &Symbol) -> Scalar {
        self.coefficients.get(s).cloned().unwrap_or_default()
    }

    /// Solves the relation `self = 0` for `s`.
    pub fn solve_for(&self, s: &Symbol) -> Result<Scalar> {
        let c = self.coefficient(s);
        if c.is_zero() {
            return Err(CoreError::Precondition(format!("{s} does not occur in the relation")));
        }
        let mut rest = self.clone();
        rest.coefficients.remove(s);
        Ok(rest.to_scalar().neg().div(&c)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub layer: String,
    pub index: LatticeVector,
    pub linear: LinearForm,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}: {} = 0", self.layer, self.index, self.linear.to_scalar())
    }
}

/// Declarative module description.
///
/// ```toml
/// generators = ["ν", "d"]
/// unit = true
/// sublattice = ["ν", "1"]
/// values = { "ν" = "ν̄" }
///
/// [[layer]]
/// name = "x"
/// slope = "b"
///
/// [[layer]]
/// name = "y"
/// offset = "d"
/// slope = "b-1"
///
/// [[rule]]
/// op = "d"
/// from = "x"
/// to = "y"
/// template = "1"
/// ```
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleConfig {
    pub generators: Vec<String>,
    #[serde(default)]
    pub unit: bool,
    pub sublattice: Vec<String>,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    pub layer: Vec<LayerConfig>,
    #[serde(default)]
    pub leak: Vec<LeakConfig>,
    #[serde(default)]
    pub rule: Vec<RuleConfig>,
    #[serde(default)]
    pub r#override: Vec<OverrideConfig>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerConfig {
    pub name: String,
    #[serde(default = "zero_text")]
    pub offset: String,
    pub slope: String,
    #[serde(default)]
    pub truncated: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeakConfig {
    pub from: String,
    pub to: String,
    pub family: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleConfig {
    pub op: String,
    pub from: String,
    pub to: String,
    #[serde(default = "zero_text")]
    pub shift: String,
    pub template: Option<String>,
    pub unknown: Option<String>,
    pub at: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideConfig {
    pub family: String,
    pub index: Vec<String>,
    pub value: String,
}

fn zero_text() -> String {
    "0".into()
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEAKY: &str = r#"
        generators = ["ν", "d"]
        unit = true
        sublattice = ["ν", "1"]
        values = { "ν" = "ν̄" }

        [[layer]]
        name = "x"
        slope = "b"

        [[layer]]
        name = "y"
        offset = "d"
        slope = "b-1"

        [[layer]]
        name = "z"
        offset = "d"
        slope = "b″"

        [[leak]]
        from = "y"
        to = "z"
        family = "c"

        [[rule]]
        op = "d"
        from = "x"
        to = "y"
        template = "1"
    "#;

    fn nu(m: &LayeredModule) -> LatticeVector {
        m.basis().gen("ν").unwrap()
    }

    #[test]
    fn diagonal_action_at_zero() {
        let m = LayeredModule::from_toml(LEAKY).unwrap();
        let x = ModuleVector::basis_vector(0, nu(&m));
        let out = m.act(&m.basis().zero(), &x).unwrap();
        assert_eq!(out.coefficient(0, &nu(&m)).to_string(), "ν̄");
    }

    #[test]
    fn commutator_leaks_into_the_last_layer() {
        let m = LayeredModule::from_toml(LEAKY).unwrap();
        let e = OperatorExpr::parse("(scale \"1/(d-1)\" (comm (L 1) (L d)))", m.basis()).unwrap();
        let out = m.apply_operator(&e, &ModuleVector::basis_vector(0, nu(&m))).unwrap();
        let target = m.basis().parse_vector("ν+1").unwrap();
        assert_eq!(out.coefficient(1, &target), Scalar::one());
        let c = Symbol::unknown("c", vec![vec![0, 0, 1], vec![1, 0, 0]]);
        let expect = Scalar::var(c).div(&m.parse_scalar("d-1").unwrap()).unwrap();
        assert_eq!(out.coefficient(2, &target), expect);
        assert_eq!(out.terms().len(), 2);
    }

    #[test]
    fn unknown_rule_and_truncation() {
        let mut m = LayeredModule::new(LatticeBasis::generic(&["ν", "d"], true).unwrap(), &["ν", "1"]).unwrap();
        m.add_layer("x", "0", "b", false).unwrap();
        m.add_layer("y", "d", "b′", false).unwrap();
        m.add_layer("u", "d", "0", true).unwrap();
        m.add_unknown_rule("d", "x", "y", "0", "a").unwrap();
        m.add_leak("y", "u", "e").unwrap();
        let x = ModuleVector::basis_vector(0, nu(&m));
        let y = m.act(&m.basis().gen("d").unwrap(), &x).unwrap();
        let a = Symbol::unknown("a", vec![vec![1, 0, 0]]);
        assert_eq!(y.coefficient(1, &nu(&m)), Scalar::var(a));
        let before = m.discarded();
        m.act(&m.basis().unit(2), &y).unwrap();
        assert_eq!(m.discarded(), before + 1);
    }

    #[test]
    fn configuration_errors() {
        let mut m = LayeredModule::new(LatticeBasis::generic(&["ν", "d"], true).unwrap(), &["ν", "1"]).unwrap();
        m.add_layer("x", "0", "b", false).unwrap();
        m.add_layer("y", "d", "b", false).unwrap();
        assert!(m.add_leak("y", "x", "c").is_err());
        assert!(m.add_rule("1", "x", "y", "0", "1", None).is_err());
        assert!(matches!(m.layer_index("w"), Err(CoreError::UnknownLayer(_))));
        let x = ModuleVector::basis_vector(0, nu(&m));
        assert!(matches!(
            m.act(&m.basis().gen("d").unwrap(), &x),
            Err(CoreError::UndefinedGenerator(_))
        ));
    }

    #[test]
    fn identical_expressions_give_no_relation() {
        let m = LayeredModule::from_toml(LEAKY).unwrap();
        let e = OperatorExpr::parse("(comm (L 1) (L d))", m.basis()).unwrap();
        let rel = m.extract_relation(&e, &e, &ModuleVector::basis_vector(0, nu(&m))).unwrap();
        assert!(rel.is_empty());
    }
}
