use serde::Serialize;

pub const REPORT_SCHEMA: &str = "hvir-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecidable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undecidable: usize,
}

/// The persisted document: schema tag, the configuration that produced it,
/// counts, and one entry per check sorted by id.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub config: super::LabConfig,
    pub summary: Summary,
    pub checks: Vec<Report>,
}

impl SuiteReport {
    pub fn new(config: super::LabConfig, mut checks: Vec<Report>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Undecidable => summary.undecidable += 1,
            }
        }
        SuiteReport {
            schema: REPORT_SCHEMA,
            config,
            summary,
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.undecidable == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Accumulates the result of one check. The first failed requirement
/// supplies the witness.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub notes: Vec<String>,
    pub witness: Option<String>,
    pub failed: bool,
    pub undecidable: bool,
}

impl Outcome {
    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        if !ok {
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
            self.failed = true;
        }
        ok
    }

    /// Requires `value` to vanish; its canonical text is the witness.
    pub fn zero(&mut self, what: &str, value: &hvir_arith::Scalar) -> bool {
        self.require(value.is_zero(), || format!("{what}: {value}"))
    }

    pub fn undecided(&mut self, why: impl Into<String>) {
        let why = why.into();
        if self.witness.is_none() {
            self.witness = Some(why.clone());
        }
        self.undecidable = true;
        self.notes.push(why);
    }

    pub fn status(&self) -> Status {
        if self.failed {
            Status::Fail
        } else if self.undecidable {
            Status::Undecidable
        } else {
            Status::Pass
        }
    }
}
