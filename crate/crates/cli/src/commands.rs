//! The non-verify subcommands and their renderings.

use std::fmt::Write;

use charvar_core::count::MonodromyReport;
use charvar_core::hodge::{
    compact_betti_from_poincare, describe, enumerate_tables, forced_entries, ForcedEntry,
};
use charvar_core::strata::{building_blocks, derive_case, CaseId, CaseResult, IdentityCheck};
use charvar_core::{BettiVector, CountEngine, CountMethod, EPolynomial, HodgeOptions};
use serde::Serialize;

use crate::config::{ConfigError, OutputFormat, RunConfig};
use crate::report::{Grade, OracleCheck, Record, Report, TargetReport};
use crate::targets::{check_template, expand};

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows<const N: usize>(
    header: [&str; N],
    rows: impl IntoIterator<Item = [String; N]>,
) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[derive(Debug, Serialize)]
pub struct BlocksReport {
    pub blocks: Vec<(String, EPolynomial)>,
    pub identities: Vec<IdentityCheck>,
}

impl BlocksReport {
    pub fn new() -> Self {
        let b = building_blocks();
        BlocksReport {
            blocks: b
                .entries()
                .into_iter()
                .map(|(n, p)| (n.to_string(), p.clone()))
                .collect(),
            identities: b.identity_checks(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => json(self),
            OutputFormat::Csv => csv_rows(
                ["name", "polynomial"],
                self.blocks.iter().map(|(n, p)| [n.clone(), p.to_string()]),
            ),
            OutputFormat::Text => {
                let mut out = String::new();
                for (n, p) in &self.blocks {
                    let _ = writeln!(out, "{n:<14} {p}");
                }
                for c in &self.identities {
                    let _ = writeln!(out, "{} {}", if c.pass { "ok  " } else { "FAIL" }, c.name);
                }
                out
            }
        }
    }
}

impl Default for BlocksReport {
    fn default() -> Self {
        Self::new()
    }
}

pub fn derive_output(case: CaseId, format: OutputFormat) -> charvar_core::Result<String> {
    let r = derive_case(case)?;
    Ok(match format {
        OutputFormat::Json => json(&r),
        OutputFormat::Csv => csv_rows(["name", "formula", "polynomial"], derive_rows(&r)),
        OutputFormat::Text => {
            let mut out = format!("case {case}\n");
            for [n, f, p] in derive_rows(&r) {
                if f.is_empty() {
                    let _ = writeln!(out, "{n:<12} {p}");
                } else {
                    let _ = writeln!(out, "  {n:<44} {f:<40} {p}");
                }
            }
            out
        }
    })
}

fn derive_rows(r: &CaseResult) -> Vec<[String; 3]> {
    let mut rows: Vec<[String; 3]> = r
        .strata
        .iter()
        .map(|s| [s.name.clone(), s.formula.clone(), s.polynomial.to_string()])
        .collect();
    let mut line =
        |n: &str, p: &EPolynomial| rows.push([n.to_string(), String::new(), p.to_string()]);
    line("zbar", &r.zbar);
    if let Some(l) = &r.reducible_locus {
        line("reducibles", l);
    }
    line("zbar*", &r.zbar_star);
    line("divisor", &r.divisor);
    if let Some(c) = &r.reducible_correction {
        line("add back", c);
    }
    if let Some(z) = &r.z_full {
        line("z_full", z);
    }
    line("e(R)", &r.r);
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodChoice {
    Fast,
    Brute,
    /// Both, with agreement recorded.
    Both,
}

/// One target report per template, one record per prime and concrete
/// target. Exit code 1 when fast and brute-force counts disagree.
pub fn count_report(
    cfg: &RunConfig,
    engine: &mut CountEngine,
    templates: &[String],
    method: MethodChoice,
) -> Result<Report, ConfigError> {
    if cfg.primes.is_empty() {
        return Err(ConfigError::EmptyPanel);
    }
    for t in templates {
        check_template(t)?;
    }
    let mut report = Report::new("count", cfg.clone());
    for template in templates {
        let mut t = TargetReport::new(template.clone(), Grade::Warning);
        for &p in &cfg.primes {
            let specs = expand(template, p)?;
            if specs.is_empty() {
                t.records.push(Record {
                    p,
                    target: template.clone(),
                    count: None,
                    method: None,
                    ms: None,
                    skipped: Some(format!("no admissible λ at p={p}")),
                });
            }
            for spec in specs {
                let mut run = |m: CountMethod| {
                    let start = std::time::Instant::now();
                    let res = engine.count(p, &spec, m);
                    let ms = cfg.timings.then(|| start.elapsed().as_millis() as u64);
                    match res {
                        Ok(r) => Record {
                            p,
                            target: spec.to_string(),
                            count: Some(r.count),
                            method: Some(m),
                            ms,
                            skipped: None,
                        },
                        Err(e) => Record {
                            p,
                            target: spec.to_string(),
                            count: None,
                            method: Some(m),
                            ms,
                            skipped: Some(e.to_string()),
                        },
                    }
                };
                match method {
                    MethodChoice::Fast => t.records.push(run(CountMethod::Fast)),
                    MethodChoice::Brute => t.records.push(run(CountMethod::Brute)),
                    MethodChoice::Both => {
                        let (f, b) = (run(CountMethod::Fast), run(CountMethod::Brute));
                        if let (Some(fast), Some(brute)) = (f.count, b.count) {
                            t.oracle.push(OracleCheck {
                                p,
                                target: f.target.clone(),
                                fast,
                                brute,
                                agree: fast == brute,
                            });
                        }
                        t.records.push(f);
                        t.records.push(b);
                    }
                }
            }
        }
        report.targets.push(t);
    }
    report.finish();
    if report
        .targets
        .iter()
        .flat_map(|t| &t.oracle)
        .any(|o| !o.agree)
    {
        report.summary.exit_code = 1;
    }
    Ok(report)
}

#[derive(Debug, Serialize)]
pub struct HodgeReport {
    pub e: EPolynomial,
    pub poincare: String,
    pub dim: usize,
    pub weight_bound: bool,
    pub betti: BettiVector,
    pub count: usize,
    pub forced: Vec<ForcedEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

pub fn hodge_report(
    e: &EPolynomial,
    poincare: &EPolynomial,
    dim: usize,
    weight_bound: bool,
    dump: bool,
) -> charvar_core::Result<HodgeReport> {
    let betti = compact_betti_from_poincare(poincare, dim)?;
    betti.check_against(e)?;
    let opts = HodgeOptions { weight_bound };
    let tables = enumerate_tables(e, &betti, opts);
    let forced = if tables.is_empty() {
        Vec::new()
    } else {
        forced_entries(&tables)?
    };
    let mut warnings = Vec::new();
    if !weight_bound {
        warnings.push("weight bound h[k][p] = 0 for 2p > k disabled".to_string());
    }
    if tables.is_empty() {
        warnings.push("no table satisfies the constraints".to_string());
    }
    Ok(HodgeReport {
        e: e.clone(),
        poincare: poincare.display_in("t"),
        dim,
        weight_bound,
        betti,
        count: tables.len(),
        forced,
        tables: dump.then(|| tables.iter().map(describe).collect()),
        warnings,
    })
}

impl HodgeReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => json(self),
            OutputFormat::Csv => csv_rows(
                ["k", "p", "value"],
                self.forced
                    .iter()
                    .map(|f| [f.k.to_string(), f.p.to_string(), f.value.to_string()]),
            ),
            OutputFormat::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "e(X) = {}", self.e);
                let _ = writeln!(out, "P(X) = {}", self.poincare);
                let _ = writeln!(out, "b_c  = {:?}", self.betti.values());
                let _ = writeln!(out, "tables: {}", self.count);
                let forced: Vec<String> = self
                    .forced
                    .iter()
                    .filter(|f| f.value != 0)
                    .map(|f| format!("h[{}][{}]={}", f.k, f.p, f.value))
                    .collect();
                let _ = writeln!(out, "forced nonzero: {}", forced.join(" "));
                for t in self.tables.iter().flatten() {
                    let _ = writeln!(out, "  {t}");
                }
                for w in &self.warnings {
                    let _ = writeln!(out, "warning: {w}");
                }
                out
            }
        }
    }
}

pub fn probe_reports(
    cfg: &RunConfig,
    engine: &mut CountEngine,
) -> charvar_core::Result<Vec<MonodromyReport>> {
    cfg.primes
        .iter()
        .map(|&p| engine.monodromy_probe(p))
        .collect()
}

pub fn render_probes(reports: &[MonodromyReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(&reports),
        OutputFormat::Csv => csv_rows(
            ["p", "union", "x4bar", "x4bar_mod_z2", "lambda_independent"],
            reports.iter().map(|r| {
                [
                    r.prime.to_string(),
                    r.union_count.to_string(),
                    r.x4bar_eval.to_string(),
                    r.x4bar_mod_z2_eval.to_string(),
                    r.lambda_independent.to_string(),
                ]
            }),
        ),
        OutputFormat::Text => {
            let mut out = String::new();
            for r in reports {
                let _ = writeln!(
                    out,
                    "p={}: union {} | e(X4_bar) {} | e(X4_bar/Z2) {} | per λ {:?}",
                    r.prime, r.union_count, r.x4bar_eval, r.x4bar_mod_z2_eval, r.per_lambda
                );
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use charvar_core::hodge::standard_instance;

    #[test]
    fn blocks_identities_hold() {
        let b = BlocksReport::new();
        assert!(b.all_pass());
        assert!(b
            .render(OutputFormat::Csv)
            .lines()
            .any(|l| l == "X2_bar,q^3 - 2q^2 - 3q" || l.starts_with("X2_bar,")));
    }

    #[test]
    fn derive_renders() {
        let t = derive_output(CaseId::JPlusJPlus, OutputFormat::Text).unwrap();
        assert!(t.contains("e(R)"));
        let j: serde_json::Value =
            serde_json::from_str(&derive_output(CaseId::XiXiEqual, OutputFormat::Json).unwrap())
                .unwrap();
        assert_eq!(j["has_reducibles"], true);
    }

    #[test]
    fn hodge_standard() {
        let (e, p, d) = standard_instance();
        let r = hodge_report(&e, &p, d, true, false).unwrap();
        assert_eq!(r.count, 18);
        assert!(r.warnings.is_empty());
        let loose = hodge_report(&e, &p, d, false, false).unwrap();
        assert!(loose.count >= 18);
        assert_eq!(loose.warnings.len(), 1);
    }

    #[test]
    fn count_skips_empty_expansions() {
        let cfg = RunConfig {
            primes: vec![3, 5],
            ..RunConfig::default()
        };
        let mut engine = CountEngine::default();
        let r = count_report(
            &cfg,
            &mut engine,
            &["xstratum:W4(all)".into()],
            MethodChoice::Fast,
        )
        .unwrap();
        let recs = &r.targets[0].records;
        assert_eq!(recs[0].skipped.as_deref(), Some("no admissible λ at p=3"));
        assert_eq!(recs.len(), 1 + 2);
        let both =
            count_report(&cfg, &mut engine, &["fiber:J+".into()], MethodChoice::Both).unwrap();
        assert!(both.targets[0].oracle.iter().all(|o| o.agree));
        assert_eq!(both.summary.exit_code, 0);
    }
}
