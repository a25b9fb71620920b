//! The equal-slope variant: its auxiliary relations, the elimination to a
//! nonzero p, the exceptional index, and the matrix ansatz for L_{±d}.

use std::collections::BTreeMap;

use hvir_arith::Scalar;

use super::elimination::{eliminate, Multipliers, Recurrence};
use super::recurrences::{derive, L_ONE_PLUS_D};
use super::report::Outcome;
use super::support::{self, int, sym, transcribe, var};
use super::transcriptions as tx;
use super::LabConfig;
use crate::error::Result;
use crate::layered::{LayeredModule, ModuleConfig};

fn proportional(o: &mut Outcome, label: &str, derived: &Scalar, printed: &Scalar) -> Result<()> {
    match support::proportionality(derived, printed)? {
        Some(r) if !r.is_zero() => o.note(format!("{label}: derived = ({r})·printed")),
        _ => {
            o.require(false, || format!("{label}: derived {derived} is not a multiple of the printed relation"));
        }
    }
    Ok(())
}

pub(crate) fn lemma34(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let d = derive(support::LEAKY_EQUAL_SLOPE)?;
    let b = d.basis().clone();
    let cm1 = Scalar::var(support::unknown(&b, "c[-1;ν]")?);
    proportional(
        &mut o,
        "c[−1;ν] relation",
        &cm1.sub(&d.minus_one_rule),
        &transcribe(&b, tx::EQUAL_SLOPE_AUX_MINUS_ONE)?,
    )?;
    let c2 = Scalar::var(support::unknown(&b, "c[2;ν]")?);
    proportional(&mut o, "c[2;ν] relation", &c2.sub(&d.two_rule), &transcribe(&b, tx::EQUAL_SLOPE_AUX_TWO)?)?;

    let op = b.parse_vector("1")?;
    let s = Recurrence::from_relation(&b, &support::numerator(&d.s_row), "c", &op)?;
    let t = Recurrence::from_relation(&b, &support::numerator(&d.t_row), "c", &op)?;
    o.require(s.offsets() == vec![0, 1, 2], || format!("s offsets {:?}", s.offsets()));
    o.require(t.offsets() == vec![0, 1, 2, 3], || format!("t offsets {:?}", t.offsets()));
    let trace = eliminate(&s, &t, &Multipliers::from_gcd(&s, &t)?)?;
    o.zero("u₀", &trace.u[0]);
    o.zero("v₃", &trace.v[2]);
    for (stage, r) in &trace.residuals {
        o.zero(stage, r);
    }
    let p = trace.p.numerator().clone();
    match p.terms().next() {
        Some((m, c)) => o.note(format!("p ≢ 0: coefficient of {m} is {c}")),
        None => {
            o.require(false, || "p vanishes identically".into());
        }
    }
    let nb = sym("ν̄");
    o.note(format!("p has ν̄-degree {}", p.degree_in(&nb)));
    let candidates = [[("ν̄", 1), ("b", 2), ("d", 3), ("b″", 5)], [("ν̄", 3), ("b", -2), ("d", 5), ("b″", 7)]];
    let nonzero = candidates.iter().find_map(|pt| {
        let v = p.evaluate(&support::point(pt));
        (!v.is_zero()).then(|| (pt, v))
    });
    match nonzero {
        Some((pt, v)) => {
            let at: Vec<String> = pt.iter().map(|(n, x)| format!("{n} = {x}")).collect();
            o.note(format!("numeric witness: p = {v} at {}", at.join(", ")))
        }
        None => {
            o.require(false, || "p vanishes at every numeric witness point".into());
        }
    }

    exceptional(&mut o)?;
    Ok(o)
}

/// ν placed at weight −bd: L_d x_ν gains κ·z_ν, c[1;ν−1] = 0, and with
/// every c zero the first relation forces κ = 0.
fn exceptional(o: &mut Outcome) -> Result<()> {
    let m = support::load(support::EXCEPTIONAL)?;
    let b = m.basis().clone();
    let rel = support::relation_at(
        &m,
        "(L d)",
        &format!("(scale \"1/(d+2)\" (comm (L -1) {L_ONE_PLUS_D}))"),
        ("x", "ν"),
        ("z", "ν"),
    )?;
    let blocked = support::unknown(&b, "c[ν-1]")?;
    o.require(!rel.contains_symbol(&blocked), || format!("{blocked} survives the override"));
    let zeros: BTreeMap<_, _> = rel
        .symbols()
        .into_iter()
        .filter(|s| s.is_unknown())
        .map(|s| (s, Scalar::zero()))
        .collect();
    let reduced = rel.substitute(&zeros)?;
    let kappa = |v: i64| reduced.substitute(&support::bindings(&[("κ", int(v))]));
    let coefficient = kappa(1)?.sub(&kappa(0)?);
    o.zero("κ-free part", &kappa(0)?);
    o.require(!coefficient.is_zero(), || "κ drops out of the relation".into());
    o.note(format!("exceptional index: κ·({coefficient}) = 0 with every c zero"));
    let weight = transcribe(&b, "ν-1+d+b")?.sub(&transcribe(&b, "(d-1)*(1-b)")?);
    o.zero("ν̄₀−1+d+b − (d−1)(1−b)", &weight);
    Ok(())
}

fn matrix_module(values: &[(&str, &str)], slope: Option<&str>) -> Result<LayeredModule> {
    let mut cfg: ModuleConfig = toml::from_str(support::MATRIX).map_err(|e| crate::CoreError::Config(e.to_string()))?;
    for (k, v) in values {
        cfg.values.insert(k.to_string(), v.to_string());
    }
    if let Some(s) = slope {
        for layer in &mut cfg.layer {
            layer.slope = s.to_string();
        }
        for rule in &mut cfg.rule {
            rule.template = rule.template.as_ref().map(|t| t.replace('b', &format!("({s})")));
        }
    }
    LayeredModule::from_config(&cfg)
}

fn ansatz_residuals(o: &mut Outcome, m: &LayeredModule, label: &str) -> Result<()> {
    let basis = m.basis();
    let (mu, mup) = (basis.gen("μ")?, basis.gen("μ′")?);
    let d = basis.gen("d")?;
    let up = support::cubic_identity(basis, &mu, &mup, &d);
    let down = support::cubic_identity(basis, &mu, &mup, &(-&d));
    let x = m.apply_operator(&up, &support::vector(m, "X", "ν")?)?;
    let y = m.apply_operator(&down, &support::vector(m, "Y", "ν")?)?;
    o.require(x.is_zero(), || format!("{label}: identity with L_d on X_ν leaves {x:?}"));
    o.require(y.is_zero(), || format!("{label}: identity with L_{{−d}} on Y_ν leaves {y:?}"));
    Ok(())
}

pub(crate) fn matrix_ansatz(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let m = matrix_module(&[], None)?;
    ansatz_residuals(&mut o, &m, "generic")?;
    let composite = m.apply_operator(&support::expr(&m, "(* (L -d) (L d))")?, &support::vector(&m, "X", "ν")?)?;
    let nu = m.basis().gen("ν")?;
    let got = composite.coefficient(m.layer_index("X")?, &nu);
    let expected = transcribe(m.basis(), "(ν̄+b*d)*(ν̄+d-b*d)*A")?;
    o.zero("L_{−d}L_d X_ν minus (ν̄+bd)(ν̄+d−bd)A", &got.sub(&expected));
    o.require(composite.terms().len() <= 1, || "composite leaves other components".into());

    let numeric = matrix_module(&[("d", "1")], Some("0"))?;
    ansatz_residuals(&mut o, &numeric, "b = 0, d = 1")?;
    let composite = numeric.apply_operator(
        &support::expr(&numeric, "(* (L -d) (L d))")?,
        &support::vector(&numeric, "X", "ν")?,
    )?;
    let got = composite.coefficient(numeric.layer_index("X")?, &nu);
    let expected = var("ν̄").mul(&var("ν̄").add(&int(1))).mul(&var("A"));
    o.zero("b = 0, d = 1 composite", &got.sub(&expected));
    Ok(o)
}
