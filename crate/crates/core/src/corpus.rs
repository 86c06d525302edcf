//! Regression corpus: one JSON object per line, each with expected values
//! tagged by where they come from.

use serde::{Deserialize, Serialize};

use crate::classify::{CohomologyProfile, TorsionDescriptor};
use crate::components::SplitConfig;
use crate::le::Interval;
use crate::report::{build_report, AnalysisReport};
use crate::seeds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    /// Stated in the source literature.
    Paper,
    /// Computed independently of this crate.
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub b_nm1: u64,
    pub b_n: u64,
    pub torsion: TorsionDescriptor,
}

impl From<&CohomologyProfile> for ProfileSummary {
    fn from(p: &CohomologyProfile) -> Self {
        ProfileSummary {
            b_nm1: p.b_nm1,
            b_n: p.b_n,
            torsion: p.torsion,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub status: Option<Tagged<String>>,
    pub lambda0: Option<Tagged<u64>>,
    pub lambda1: Option<Tagged<u64>>,
    pub m: Option<Tagged<u64>>,
    pub r: Option<Tagged<Interval>>,
    pub mu: Option<Tagged<Vec<u64>>>,
    pub profiles: Option<Tagged<Vec<ProfileSummary>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub polynomial: String,
    pub variables: Vec<String>,
    pub expected: Expected,
}

#[derive(Debug, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

/// Blank lines and lines starting with `#` are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| CorpusError {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub field: &'static str,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryOutcome {
    pub name: String,
    pub seed: u64,
    pub status: String,
    pub mismatches: Vec<Mismatch>,
    pub error: Option<String>,
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.error.is_none()
    }
}

/// Seed for one entry, independent of the order entries run in.
pub fn entry_seed(base: u64, name: &str) -> u64 {
    seeds::derive(base, &format!("corpus/{name}"))
}

fn compare<T: PartialEq + std::fmt::Debug>(
    out: &mut Vec<Mismatch>,
    field: &'static str,
    expected: &Option<Tagged<T>>,
    computed: Option<T>,
) {
    if let Some(e) = expected {
        if computed.as_ref() != Some(&e.value) {
            out.push(Mismatch {
                field,
                expected: format!("{:?}", e.value),
                computed: computed.map_or("missing".to_string(), |c| format!("{c:?}")),
            });
        }
    }
}

pub fn check_report(entry: &CorpusEntry, report: &AnalysisReport) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let exp = &entry.expected;
    let inv = report.invariants.as_ref();
    compare(
        &mut out,
        "status",
        &exp.status,
        Some(report.status.as_str().to_string()),
    );
    compare(&mut out, "lambda0", &exp.lambda0, inv.map(|i| i.lambda0));
    compare(&mut out, "lambda1", &exp.lambda1, inv.map(|i| i.lambda1));
    compare(&mut out, "m", &exp.m, inv.and_then(|i| i.m));
    compare(&mut out, "r", &exp.r, inv.map(|i| i.r));
    compare(&mut out, "mu", &exp.mu, inv.map(|i| i.mu.clone()));
    compare(
        &mut out,
        "profiles",
        &exp.profiles,
        Some(report.profiles.iter().map(ProfileSummary::from).collect()),
    );
    out
}

pub fn run_entry(entry: &CorpusEntry, base: &SplitConfig) -> (EntryOutcome, Option<AnalysisReport>) {
    let seed = entry_seed(base.seed, &entry.name);
    let config = SplitConfig { seed, ..*base };
    match build_report(&entry.polynomial, &entry.variables, &config) {
        Ok(report) => (
            EntryOutcome {
                name: entry.name.clone(),
                seed,
                status: report.status.as_str().to_string(),
                mismatches: check_report(entry, &report),
                error: None,
            },
            Some(report),
        ),
        Err(e) => (
            EntryOutcome {
                name: entry.name.clone(),
                seed,
                status: "ERROR".into(),
                mismatches: Vec::new(),
                error: Some(e.to_string()),
            },
            None,
        ),
    }
}

/// The corpus shipped with the crate.
pub const BUNDLED: &str = include_str!("../corpus/le_corpus.jsonl");
