//! Machine-readable outcomes: verification reports, certificates and the
//! top-level report document emitted by the command-line tool.
//!
//! Every struct here serializes with a fixed field order and no maps keyed by
//! unordered collections, so identical runs produce byte-identical JSON.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

/// A counterexample: the item that failed and the two evaluated sides.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub item: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one identity or property check. Failed checks always carry at
/// least one witness with both sides evaluated.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: String,
    pub status: Status,
    pub instance: String,
    /// Number of individual identities or degrees examined.
    pub checked: u64,
    pub witnesses: Vec<Witness>,
}

impl VerificationReport {
    pub fn pass(check: &str, instance: String, checked: u64) -> Self {
        VerificationReport {
            check: check.to_string(),
            status: Status::Pass,
            instance,
            checked,
            witnesses: Vec::new(),
        }
    }

    pub fn fail(check: &str, instance: String, checked: u64, witnesses: Vec<Witness>) -> Self {
        debug_assert!(!witnesses.is_empty(), "failure reports carry witnesses");
        VerificationReport {
            check: check.to_string(),
            status: Status::Fail,
            instance,
            checked,
            witnesses,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertStatus {
    #[serde(rename = "CERTIFIED")]
    Certified,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

/// Shape of a generic complete intersection: characteristic, variable count
/// and generator degrees.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ShapeDesc {
    pub p: u64,
    pub m: usize,
    pub degrees: Vec<u32>,
}

/// Result of a randomized certification run. `CERTIFIED` is only emitted when
/// one witness instance passed every rank check exactly; the `notes` field
/// records the reasoning and scope of the claim.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Certificate {
    pub property: String,
    pub shape: ShapeDesc,
    pub status: CertStatus,
    pub witness_seed: Option<u64>,
    pub trials_used: u32,
    pub extension_degree: usize,
    pub notes: String,
}

impl Certificate {
    pub fn certified(&self) -> bool {
        self.status == CertStatus::Certified
    }
}

/// One entry of a report document: either an identity check or a certificate.
#[derive(Debug, Clone, Serialize, PartialEq)]
#[serde(untagged)]
pub enum CheckRecord {
    Report(VerificationReport),
    Certificate(Certificate),
}

/// The top-level document printed by the command-line tool.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ReportDocument {
    pub tool_version: String,
    pub input: serde_json::Value,
    pub checks: Vec<CheckRecord>,
    pub overall: Status,
}

impl ReportDocument {
    pub fn new(input: serde_json::Value, checks: Vec<CheckRecord>) -> Self {
        let overall = if checks.iter().all(|c| match c {
            CheckRecord::Report(r) => r.passed(),
            CheckRecord::Certificate(c) => c.certified(),
        }) {
            Status::Pass
        } else {
            Status::Fail
        };
        ReportDocument {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input,
            checks,
            overall,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Human-readable rendering carrying the same information as the JSON.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "cires {}", self.tool_version);
        let _ = writeln!(out, "input: {}", self.input);
        for check in &self.checks {
            match check {
                CheckRecord::Report(r) => {
                    let status = match r.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                    };
                    let _ = writeln!(
                        out,
                        "check {}: {} ({} checked) on {}",
                        r.check, status, r.checked, r.instance
                    );
                    for w in &r.witnesses {
                        let _ = writeln!(out, "  witness {}: lhs = {}, rhs = {}", w.item, w.lhs, w.rhs);
                    }
                }
                CheckRecord::Certificate(c) => {
                    let status = match c.status {
                        CertStatus::Certified => "CERTIFIED",
                        CertStatus::Inconclusive => "INCONCLUSIVE",
                    };
                    let _ = writeln!(
                        out,
                        "certificate {} for p={}, m={}, degrees={:?}: {} (trials used: {}, extension degree: {}, witness seed: {})",
                        c.property,
                        c.shape.p,
                        c.shape.m,
                        c.shape.degrees,
                        status,
                        c.trials_used,
                        c.extension_degree,
                        c.witness_seed.map_or("none".to_string(), |s| s.to_string()),
                    );
                    let _ = writeln!(out, "  notes: {}", c.notes);
                }
            }
        }
        let overall = match self.overall {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let _ = writeln!(out, "overall: {overall}");
        out
    }
}
