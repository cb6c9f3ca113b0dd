//! Report schema shared by `count` and `verify`, with JSON and CSV writers.

use std::collections::BTreeMap;
use std::fmt;

use charvar_core::count::MonodromyReport;
use charvar_core::polyfit::FitReport;
use charvar_core::CountMethod;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grade {
    /// Failure sets exit code 1.
    MustMatch,
    /// Failure is reported and confirmed by the oracle, but does not fail
    /// the run.
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    QuasiPolynomial,
    Skipped { reason: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match => f.write_str("match"),
            Verdict::Mismatch => f.write_str("mismatch"),
            Verdict::QuasiPolynomial => f.write_str("quasi-polynomial"),
            Verdict::Skipped { reason } => write!(f, "skipped({reason})"),
        }
    }
}

/// One count at one prime. `count` is absent when the target could not be
/// evaluated there, with the reason in `skipped`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub p: u32,
    pub target: String,
    pub count: Option<u64>,
    pub method: Option<CountMethod>,
    pub ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skipped: Option<String>,
}

/// Brute-force confirmation of a fast count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub p: u32,
    pub target: String,
    pub fast: u64,
    pub brute: u64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub grade: Grade,
    pub records: Vec<Record>,
    pub fit: Option<FitReport>,
    pub reference: Option<String>,
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub oracle: Vec<OracleCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl TargetReport {
    pub fn new(id: impl Into<String>, grade: Grade) -> Self {
        TargetReport {
            id: id.into(),
            params: BTreeMap::new(),
            grade,
            records: Vec::new(),
            fit: None,
            reference: None,
            verdict: None,
            oracle: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub name: String,
    pub p: Option<u32>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub targets: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub quasi_polynomial: usize,
    pub skipped: usize,
    pub identities_passed: usize,
    pub identities_failed: usize,
    /// Must-match targets whose verdict is not `match`.
    pub must_match_failures: Vec<String>,
    /// Warning-grade targets whose verdict is not `match`.
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub targets: Vec<TargetReport>,
    pub identities: Vec<IdentityRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub probes: Vec<MonodromyReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, config: RunConfig) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            targets: Vec::new(),
            identities: Vec::new(),
            probes: Vec::new(),
            summary: Summary::default(),
        }
    }

    /// Tallies verdicts. Exit code 1 when a must-match target does not match
    /// or an identity fails.
    pub fn finish(&mut self) {
        let mut s = Summary {
            targets: self.targets.len(),
            ..Summary::default()
        };
        for t in &self.targets {
            let Some(v) = &t.verdict else { continue };
            match v {
                Verdict::Match => s.matched += 1,
                Verdict::Mismatch => s.mismatched += 1,
                Verdict::QuasiPolynomial => s.quasi_polynomial += 1,
                Verdict::Skipped { .. } => s.skipped += 1,
            }
            if *v != Verdict::Match {
                let line = format!("{}: {v}", t.id);
                match t.grade {
                    Grade::MustMatch => s.must_match_failures.push(line),
                    Grade::Warning => s.warnings.push(line),
                }
            }
        }
        s.identities_passed = self.identities.iter().filter(|i| i.pass).count();
        s.identities_failed = self.identities.len() - s.identities_passed;
        s.exit_code = if s.must_match_failures.is_empty() && s.identities_failed == 0 {
            0
        } else {
            1
        };
        self.summary = s;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One row per (target, prime, concrete target).
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "id", "grade", "p", "target", "count", "method", "ms", "skipped", "verdict",
        ])
        .expect("in-memory write");
        for t in &self.targets {
            let grade = match t.grade {
                Grade::MustMatch => "must-match",
                Grade::Warning => "warning",
            };
            let verdict = t
                .verdict
                .as_ref()
                .map(|v| v.to_string())
                .unwrap_or_default();
            if t.records.is_empty() {
                w.write_record([
                    t.id.as_str(),
                    grade,
                    "",
                    "",
                    "",
                    "",
                    "",
                    "",
                    verdict.as_str(),
                ])
                .expect("in-memory write");
            }
            for r in &t.records {
                w.write_record([
                    t.id.clone(),
                    grade.to_string(),
                    r.p.to_string(),
                    r.target.clone(),
                    r.count.map(|c| c.to_string()).unwrap_or_default(),
                    r.method.map(|m| m.to_string()).unwrap_or_default(),
                    r.ms.map(|m| m.to_string()).unwrap_or_default(),
                    r.skipped.clone().unwrap_or_default(),
                    verdict.clone(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for t in &self.targets {
            let verdict = t
                .verdict
                .as_ref()
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(
                out,
                "{:<28} {:<18} {}",
                t.id,
                verdict,
                t.reference.as_deref().unwrap_or("")
            );
            if t.verdict.is_none() {
                for r in &t.records {
                    match (r.count, &r.skipped) {
                        (Some(c), _) => {
                            let method = r.method.map(|m| m.to_string()).unwrap_or_default();
                            let _ =
                                writeln!(out, "    p={:<4} {:<22} {method:<6} {c}", r.p, r.target);
                        }
                        (None, Some(why)) => {
                            let _ =
                                writeln!(out, "    p={:<4} {:<22} skipped({why})", r.p, r.target);
                        }
                        _ => {}
                    }
                }
            }
            if let Some(poly) = t.fit.as_ref().and_then(|f| f.polynomial.as_ref()) {
                if t.verdict != Some(Verdict::Match) {
                    let _ = writeln!(out, "    fitted {poly}");
                }
            }
            for n in &t.notes {
                let _ = writeln!(out, "    note: {n}");
            }
            if !t.oracle.is_empty() {
                let bad: Vec<_> = t.oracle.iter().filter(|o| !o.agree).collect();
                let _ = writeln!(
                    out,
                    "    oracle: {} brute-force checks, {} disagree",
                    t.oracle.len(),
                    bad.len()
                );
                for o in bad {
                    let _ = writeln!(
                        out,
                        "    oracle DISAGREES p={} {}: fast {} brute {}",
                        o.p, o.target, o.fast, o.brute
                    );
                }
            }
        }
        let failed: Vec<_> = self.identities.iter().filter(|i| !i.pass).collect();
        if !self.identities.is_empty() {
            let _ = writeln!(
                out,
                "identities: {} passed, {} failed",
                self.summary.identities_passed,
                failed.len()
            );
        }
        for i in failed {
            let _ = writeln!(
                out,
                "    FAILED {} (p={:?}): {} != {}",
                i.name, i.p, i.lhs, i.rhs
            );
        }
        for pr in &self.probes {
            let _ = writeln!(
                out,
                "probe p={}: union {} vs e(X4_bar) {} and e(X4_bar/Z2) {}",
                pr.prime, pr.union_count, pr.x4bar_eval, pr.x4bar_mod_z2_eval
            );
        }
        let s = &self.summary;
        if s.targets > 0 && self.targets.iter().any(|t| t.verdict.is_some()) {
            let _ = writeln!(
                out,
                "summary: {} match, {} mismatch, {} quasi-polynomial, {} skipped; exit {}",
                s.matched, s.mismatched, s.quasi_polynomial, s.skipped, s.exit_code
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("verify", RunConfig::default());
        let mut t = TargetReport::new("a", Grade::MustMatch).param("lambda", 2);
        t.verdict = Some(Verdict::Match);
        t.records.push(Record {
            p: 5,
            target: "fiber:J+".into(),
            count: Some(60),
            method: Some(CountMethod::Fast),
            ms: None,
            skipped: None,
        });
        let mut w = TargetReport::new("b, with comma", Grade::Warning);
        w.verdict = Some(Verdict::Skipped {
            reason: "no data".into(),
        });
        r.targets = vec![t, w];
        r.finish();
        r
    }

    #[test]
    fn summary_and_exit_code() {
        let mut r = sample();
        assert_eq!(r.summary.exit_code, 0);
        assert_eq!(r.summary.warnings, ["b, with comma: skipped(no data)"]);
        r.targets[0].verdict = Some(Verdict::QuasiPolynomial);
        r.finish();
        assert_eq!(r.summary.exit_code, 1);
        r.targets[0].verdict = Some(Verdict::Match);
        r.identities.push(IdentityRecord {
            name: "x".into(),
            p: Some(5),
            lhs: "1".into(),
            rhs: "2".into(),
            pass: false,
        });
        r.finish();
        assert_eq!(r.summary.exit_code, 1);
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["config", "targets", "identities", "summary"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["targets"][0]["records"][0]["p"], 5);
        assert_eq!(v["targets"][0]["records"][0]["ms"], serde_json::Value::Null);
        assert_eq!(v["targets"][1]["verdict"]["status"], "skipped");
    }

    #[test]
    fn csv_rows() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "a,must-match,5,fiber:J+,60,fast,,,match");
        assert!(lines[2].starts_with("\"b, with comma\",warning"));
    }
}
