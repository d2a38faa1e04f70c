//! Check registry, runner and JSON reports.

mod checks;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::autos::SEARCH_CAP;
use crate::cohomology::COHOMOLOGY_CAP;
use crate::corpus::CorpusEntry;
use crate::error::{ForgeError, Result};
use crate::pc::{PcGroup, DEFAULT_ENUM_CAP};

pub use checks::REGISTRY;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// group order bound for automorphism searches
    pub search: u64,
    /// group order bound for subgroup enumeration
    pub enumeration: u64,
    /// bound on `|Q| * |A|` for cocycle enumeration
    pub cohomology: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { search: SEARCH_CAP, enumeration: DEFAULT_ENUM_CAP, cohomology: COHOMOLOGY_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Refused,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub group_id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub timing_ms: u64,
}

/// What a check concluded about one group.
#[derive(Clone, Debug)]
pub enum Verdict {
    Pass { detail: String, witness: Option<Value> },
    Fail { counterexample: String, witness: Option<Value> },
    Skip(String),
}

impl Verdict {
    pub(crate) fn pass(detail: impl Into<String>) -> Self {
        Verdict::Pass { detail: detail.into(), witness: None }
    }

    pub(crate) fn pass_with(detail: impl Into<String>, witness: impl Serialize) -> Self {
        Verdict::Pass { detail: detail.into(), witness: serde_json::to_value(witness).ok() }
    }

    pub(crate) fn fail(counterexample: impl Into<String>) -> Self {
        Verdict::Fail { counterexample: counterexample.into(), witness: None }
    }

    pub(crate) fn skip(reason: impl Into<String>) -> Self {
        Verdict::Skip(reason.into())
    }
}

pub struct CheckSpec {
    pub id: &'static str,
    pub summary: &'static str,
    pub run: fn(&PcGroup, &Caps) -> Result<Verdict>,
}

pub fn find_check(id: &str) -> Result<&'static CheckSpec> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| ForgeError::UnknownCheck(id.to_string()))
}

fn execute(spec: &CheckSpec, entry: &CorpusEntry, caps: &Caps) -> CheckResult {
    let start = Instant::now();
    let outcome = (spec.run)(&entry.group, caps);
    let mut r = CheckResult {
        check_id: spec.id.to_string(),
        group_id: entry.id.clone(),
        status: Status::Pass,
        detail: None,
        witness: None,
        counterexample: None,
        timing_ms: 0,
    };
    match outcome {
        Ok(Verdict::Pass { detail, witness }) => {
            r.detail = Some(detail);
            r.witness = witness;
        }
        Ok(Verdict::Fail { counterexample, witness }) => {
            r.status = Status::Fail;
            r.counterexample = Some(counterexample);
            r.witness = witness;
        }
        Ok(Verdict::Skip(reason)) | Err(ForgeError::HypothesesUnmet(reason)) => {
            r.status = Status::Skip;
            r.detail = Some(reason);
        }
        Err(e @ ForgeError::CapExceeded { .. }) => {
            r.status = Status::Refused;
            r.detail = Some(e.to_string());
        }
        Err(e) => {
            r.status = Status::Fail;
            r.counterexample = Some(e.to_string());
        }
    }
    r.timing_ms = start.elapsed().as_millis() as u64;
    r
}

/// Runs one registered check on each entry, in entry order.
pub fn run_check(id: &str, entries: &[CorpusEntry], caps: &Caps) -> Result<Vec<CheckResult>> {
    let spec = find_check(id)?;
    Ok(entries.par_iter().map(|e| execute(spec, e, caps)).collect())
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub refused: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub summary: Summary,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn new(results: Vec<CheckResult>) -> Self {
        let mut summary = Summary::default();
        for r in &results {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skip => summary.skip += 1,
                Status::Refused => summary.refused += 1,
            }
        }
        Report { summary, results }
    }

    /// Zeroes timings so reports compare byte for byte.
    pub fn without_timing(mut self) -> Self {
        for r in &mut self.results {
            r.timing_ms = 0;
        }
        self
    }

    /// 1 if any check failed, else 0; refusals are reported, not failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Every registered check on every entry, ordered by registry position and
/// then by entry order.
pub fn run_all(entries: &[CorpusEntry], caps: &Caps) -> Report {
    let grid: Vec<(&CheckSpec, &CorpusEntry)> =
        REGISTRY.iter().flat_map(|c| entries.iter().map(move |e| (c, e))).collect();
    Report::new(grid.par_iter().map(|(c, e)| execute(c, e, caps)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin_by_id;

    fn entry(id: &str) -> CorpusEntry {
        builtin_by_id(id).unwrap()
    }

    #[test]
    fn registry_ids_unique() {
        let mut ids: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
        assert!(matches!(find_check("lemma-9.9"), Err(ForgeError::UnknownCheck(_))));
    }

    #[test]
    fn coclass_one_dihedral() {
        let r = run_check("cor-2.4", &[entry("D8")], &Caps::default()).unwrap();
        assert_eq!(r[0].status, Status::Pass, "{r:?}");
        assert!(r[0].witness.is_some());
    }

    #[test]
    fn abelian_skips_coclass_bound() {
        let r = run_check("thm-2.5", &[entry("C4xC2")], &Caps::default()).unwrap();
        assert_eq!(r[0].status, Status::Skip);
        assert!(r[0].detail.is_some());
    }

    #[test]
    fn empty_corpus_report() {
        let rep = run_all(&[], &Caps::default());
        assert!(rep.results.is_empty());
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn two_group_checks_skip_odd_primes() {
        let es = [entry("ES27")];
        for id in ["lemma-3.3", "example-g64", "example-l128", "example-metacyclic"] {
            let r = run_check(id, &es, &Caps::default()).unwrap();
            assert_eq!(r[0].status, Status::Skip, "{id}");
        }
    }

    #[test]
    fn refusal_reported() {
        let caps = Caps { search: 8, ..Caps::default() };
        let r = run_check("cor-2.4", &[entry("D16")], &caps).unwrap();
        assert_eq!(r[0].status, Status::Refused);
    }
}
