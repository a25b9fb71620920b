//! Mechanized replays of the operator identities, recurrences and
//! eliminations, plus property checks of the algebra, lattice and module
//! layers. Every check has a stable identifier and yields a [`Report`].

mod elimination;
mod foundations;
mod identities;
mod lemma34;
mod recurrences;
pub mod report;
mod roots;
pub mod support;
pub mod transcriptions;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CoreError, Result};
pub use elimination::{eliminate, EliminationTrace, Multipliers, Recurrence};
pub use report::{Outcome, Report, Status, SuiteReport, Summary, REPORT_SCHEMA};
pub use roots::{common_rational_roots, CommonRoots};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabConfig {
    /// Rank used by the randomized and box checks.
    pub rank: usize,
    /// Radius of the coordinate box for exhaustive module checks.
    pub radius: i64,
    /// Number of random samples per randomized property.
    pub samples: usize,
    pub seed: u64,
    /// Record wall-clock times in reports (breaks byte-identical output).
    #[serde(skip)]
    pub timings: bool,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            rank: 2,
            radius: 3,
            samples: 100,
            seed: 0,
            timings: false,
        }
    }
}

pub type CheckFn = fn(&LabConfig) -> Result<Outcome>;

pub struct CheckSpec {
    pub id: &'static str,
    pub anchor: &'static str,
    run: CheckFn,
}

impl CheckSpec {
    pub fn new(id: &'static str, anchor: &'static str, run: CheckFn) -> Self {
        CheckSpec { id, anchor, run }
    }
}

macro_rules! check {
    ($id:literal, $anchor:literal, $f:path) => {
        CheckSpec {
            id: $id,
            anchor: $anchor,
            run: $f,
        }
    };
}

/// All checks in declaration order.
pub fn registry() -> Vec<CheckSpec> {
    vec![
        check!("ALG-ANTISYM", "bracket antisymmetry, central terms included", foundations::antisymmetry),
        check!("ALG-GRADING", "graded components of brackets", foundations::grading),
        check!("ALG-JACOBI", "Jacobi identity, generic and random triples", foundations::jacobi),
        check!("ALG-NESTED", "iterated bracket coefficient product formula", foundations::nested),
        check!("ALG-PBW-CANON", "PBW normal form canonicity", foundations::pbw_canonical),
        check!("LAT-CONE", "non-negative cone of the shifted basis", foundations::cone),
        check!("LAT-DEG", "degree and scalar embedding additivity", foundations::degree),
        check!("LAT-L21", "shifted basis change, determinant one", foundations::lemma21),
        check!("LAT-L23", "basis adapted to a vector, unimodular", foundations::lemma23),
        check!("MOD-AXIOM-AAB", "module axiom for A_{a,b}", foundations::axiom_aab),
        check!("MOD-AXIOM-APRIME", "module axiom for A(a′) on a box", foundations::axiom_aprime),
        check!("MOD-AXIOM-BPRIME", "module axiom for B(a′) on a box", foundations::axiom_bprime),
        check!("MOD-ISO", "intertwiner A_{a,0} → A_{a,1}", foundations::iso),
        check!("MOD-RESCALE", "rescaling criterion M = aM′", foundations::rescale),
        check!("MOD-SIMPLE", "simplicity criterion for A_{a,b}", foundations::simple),
        check!("ID-310-ANSATZ", "solutions a_ν of the three-term system", identities::ansatz_310),
        check!("ID-311-PBW", "cubic operator identity in U(Vir)", identities::pbw_311),
        check!("ID-312-DERIVE", "four-term relation on x_ν", identities::derive_312),
        check!("ID-313-SPECIALIZE", "three specializations of the four-term relation", identities::specialize_313),
        check!("ID-316-DET", "determinant of the three-term system", identities::det_316),
        check!("ID-317-SOLVE", "vanishing locus of the determinant", identities::solve_317),
        check!("ID-322-DERIVE", "auxiliary c_{−1,ν} relation and s-recurrence", recurrences::derive_322),
        check!("ID-324-DERIVE", "auxiliary c_{2,ν} relation and t-recurrence", recurrences::derive_324),
        check!("ID-331-FACTOR", "elimination to p(ν̄) and its factorization", recurrences::factor_331),
        check!("ID-333-CLOSED", "closed forms of c_{i,ν} per case", recurrences::closed_forms),
        check!("ID-335-LEMMA34", "b′ = b variant and exceptional index", lemma34::lemma34),
        check!("ID-338-MATRIX", "matrix ansatz consistency for L_{±d}", lemma34::matrix_ansatz),
    ]
}

pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

fn run_one(spec: &CheckSpec, config: &LabConfig) -> Report {
    let start = Instant::now();
    let outcome = (spec.run)(config).unwrap_or_else(|e| {
        let mut o = Outcome::default();
        o.require(false, || format!("error: {e}"));
        o
    });
    Report {
        id: spec.id.to_string(),
        anchor: spec.anchor.to_string(),
        status: outcome.status(),
        witness: outcome.witness.clone(),
        elapsed_ms: config.timings.then(|| start.elapsed().as_millis() as u64),
        notes: outcome.notes,
    }
}

/// Runs the selected checks ("all" selects every check). Unknown ids are
/// rejected before anything runs.
pub fn run_suite(config: &LabConfig, selection: &[String]) -> Result<SuiteReport> {
    run_suite_with(&registry(), config, selection)
}

/// As [`run_suite`] over an explicit set of checks.
pub fn run_suite_with(all: &[CheckSpec], config: &LabConfig, selection: &[String]) -> Result<SuiteReport> {
    let chosen: Vec<&CheckSpec> = if selection.is_empty() || selection.iter().any(|s| s == "all") {
        all.iter().collect()
    } else {
        let mut chosen = Vec::new();
        for id in selection {
            let spec = all
                .iter()
                .find(|c| c.id == id)
                .ok_or_else(|| CoreError::UnknownCheck(id.clone()))?;
            if !chosen.iter().any(|c: &&CheckSpec| c.id == spec.id) {
                chosen.push(spec);
            }
        }
        chosen
    };
    let reports: Vec<Report> = chosen.par_iter().map(|c| run_one(c, config)).collect();
    Ok(SuiteReport::new(config.clone(), reports))
}

pub fn run_check(config: &LabConfig, id: &str) -> Result<Report> {
    let mut r = run_suite(config, &[id.to_string()])?;
    Ok(r.checks.remove(0))
}
