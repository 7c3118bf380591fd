//! Versioned JSON reports.

use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub algebra: String,
    pub subspace: String,
    pub r_spec: String,
    pub involution: String,
    pub seed: u64,
    pub command: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub terms: usize,
    /// Zero unless timings were requested, so that reports stay byte-identical.
    pub wall_ms: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

/// One row of a triple enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct TripleRow {
    pub triple: String,
    pub admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub has_symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub has_antisymmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twisted_symmetric: Option<bool>,
}

/// The folded pair in canonical form.
#[derive(Debug, Clone, Serialize)]
pub struct FoldOutput {
    pub r_plus: String,
    pub r_minus: String,
    pub kappa: String,
    /// True when coefficients are written in the doubled variables.
    pub half: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub meta: Meta,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triples: Option<Vec<TripleRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fold: Option<FoldOutput>,
    pub summary: Summary,
}

impl Report {
    pub fn new(meta: Meta, checks: Vec<CheckRecord>, triples: Option<Vec<TripleRow>>) -> Self {
        let mut summary = Summary { total: checks.len(), ..Summary::default() };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Error => summary.errors += 1,
            }
        }
        Report { schema: SCHEMA, meta, checks, triples, fold: None, summary }
    }

    pub fn with_fold(mut self, fold: FoldOutput) -> Self {
        self.fold = Some(fold);
        self
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
