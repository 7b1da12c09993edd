use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::io::StructureFile;
use crate::algebra::{Homomorphism, Semimodule};
use crate::classes::{DisKind, STRONG_READING};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// What a row was checked on, kept for writing witness files.
#[derive(Clone, Debug)]
pub enum Subject {
    Module(Arc<Semimodule>),
    Map(Homomorphism),
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim: &'static str,
    pub anchor: &'static str,
    pub structure: String,
    pub kind: Option<DisKind>,
    pub status: Status,
    /// Counterexample for failures, reason for skips.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Per-instance information reported regardless of status.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    /// Wall time; left out of the serialized report so reruns are
    /// byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub subject: Option<Subject>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Counts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skipped => self.skipped += 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    /// Reading notes for the classes that appear in the rows.
    pub notes: Vec<&'static str>,
    pub totals: Counts,
    pub by_claim: BTreeMap<&'static str, Counts>,
    pub rows: Vec<ClaimReport>,
}

impl SuiteReport {
    pub fn new(rows: Vec<ClaimReport>) -> SuiteReport {
        let mut totals = Counts::default();
        let mut by_claim: BTreeMap<&'static str, Counts> = BTreeMap::new();
        for r in &rows {
            totals.add(r.status);
            by_claim.entry(r.claim).or_default().add(r.status);
        }
        let notes = if rows.iter().any(|r| r.kind == Some(DisKind::Strong)) {
            vec![STRONG_READING]
        } else {
            Vec::new()
        };
        SuiteReport {
            notes,
            totals,
            by_claim,
            rows,
        }
    }

    /// No failures among the rows that ran.
    pub fn all_pass(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimReport> {
        self.rows.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn rows_for<'a>(&'a self, claim: &'a str) -> impl Iterator<Item = &'a ClaimReport> + 'a {
        self.rows.iter().filter(move |r| r.claim == claim)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn total_elapsed(&self) -> Duration {
        self.rows.iter().map(|r| r.elapsed).sum()
    }
}

/// A self-contained record that reproduces one failure.
pub fn witness_record(row: &ClaimReport) -> Value {
    let mut v = json!({
        "claim": row.claim,
        "anchor": row.anchor,
        "structure_id": row.structure,
        "kind": row.kind,
        "witness": row.witness,
    });
    match &row.subject {
        Some(Subject::Module(m)) => {
            v["structure"] = serde_json::to_value(StructureFile::from_module(m)).expect("json");
        }
        Some(Subject::Map(h)) => {
            v["structure"] = serde_json::to_value(StructureFile::from_module(h.source())).expect("json");
            v["target"] = serde_json::to_value(StructureFile::from_module(h.target())).expect("json");
            v["map"] = serde_json::to_value(h.label_pairs()).expect("json");
        }
        None => {}
    }
    v
}

/// Writes one witness file per failing row into `dir`, named by position
/// and claim id.
pub fn write_witness_files(report: &SuiteReport, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for (i, row) in report.failures().enumerate() {
        let path = dir.join(format!("{i:04}-{}.json", row.claim));
        std::fs::write(&path, serde_json::to_string_pretty(&witness_record(row))? + "\n")?;
        out.push(path);
    }
    Ok(out)
}
