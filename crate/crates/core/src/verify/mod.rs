//! Check orchestration: named checks, JSON-line reports, manifests.

mod checks;
pub mod manifest;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::Error;

pub use checks::{diffeo_group, dft_group, noth_group, symmetry_group, tensor_group, Group};
pub use manifest::{parse_manifest, Manifest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub status: Status,
    /// Canonical text of the residual, `"0"` when it vanishes.
    pub residual_summary: String,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// What a check computed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub residual: String,
    pub note: Option<String>,
}

impl Outcome {
    /// Passes iff the residual is `"0"`.
    pub fn zero(residual: impl ToString) -> Self {
        let residual = residual.to_string();
        Outcome { passed: residual == "0", residual, note: None }
    }

    /// Passes iff the residual is not `"0"`; used for printed typos kept as
    /// regression targets.
    pub fn nonzero(residual: impl ToString) -> Self {
        let residual = residual.to_string();
        Outcome {
            passed: residual != "0",
            residual,
            note: Some("printed variant, expected to fail".into()),
        }
    }

    pub fn from_bool(ok: bool, detail: impl ToString) -> Self {
        Outcome { passed: ok, residual: if ok { "0".into() } else { detail.to_string() }, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Runs `f` and turns its result into a report.
pub fn timed(id: impl Into<String>, f: impl FnOnce() -> Result<Outcome, Error>) -> CheckReport {
    let start = Instant::now();
    let r = f();
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let check_id = id.into();
    match r {
        Ok(o) => CheckReport {
            check_id,
            status: if o.passed { Status::Pass } else { Status::Fail },
            residual_summary: o.residual,
            elapsed_ms,
            note: o.note,
        },
        Err(e) => CheckReport { check_id, status: Status::Error, residual_summary: e.to_string(), elapsed_ms, note: None },
    }
}

/// Runs the groups in parallel and orders the reports by check id.
pub fn run_groups(groups: Vec<Group>) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = groups.into_par_iter().flat_map_iter(|g| g()).collect();
    out.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    out
}

/// Every built-in check.
pub fn all_groups() -> Vec<Group> {
    use crate::contact::CaseId;
    use crate::g2::TheoremId;
    let mut g = vec![noth_group()];
    g.extend(CaseId::ALL.iter().map(|c| tensor_group(*c)));
    g.extend(TheoremId::ALL.iter().map(|t| symmetry_group(*t)));
    g.extend([0u8, 1, 2].map(diffeo_group));
    g.push(dft_group());
    g
}

/// Groups by name: `all`, `noth`, `dft`, `tensors:<case>`,
/// `symmetry:<theorem>` or `diffeo:<0|1|2>`.
pub fn groups_by_name(name: &str) -> Result<Vec<Group>, Error> {
    let (head, arg) = name.split_once(':').map_or((name, None), |(h, a)| (h, Some(a)));
    let bad = || Error::parse(1, 1, format!("unknown check group '{name}'"));
    Ok(match (head, arg) {
        ("all", None) => all_groups(),
        ("noth", None) => vec![noth_group()],
        ("dft", None) => vec![dft_group()],
        ("tensors", Some(c)) => vec![tensor_group(c.parse()?)],
        ("symmetry", Some(t)) => vec![symmetry_group(t.parse()?)],
        ("diffeo", Some(i)) => match i.parse::<u8>() {
            Ok(i @ 0..=2) => vec![diffeo_group(i)],
            _ => return Err(bad()),
        },
        _ => return Err(bad()),
    })
}
