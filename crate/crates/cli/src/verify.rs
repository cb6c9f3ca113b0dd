//! The verification pipeline: count every in-scope target across the panel,
//! fit, hold out, compare against the reference polynomial and run the
//! identity suite.

use std::time::Instant;

use charvar_core::classes::GeometricClassSpec as W;
use charvar_core::count::{zbar44_regime, PrimeContext};
use charvar_core::polyfit::{compare, fit_and_check, FitStatus};
use charvar_core::strata::{building_blocks, derive_case, one_puncture_solution_sets, CaseId};
use charvar_core::{
    CountEngine, CountMethod, EPolynomial, Prime, TargetSpec, ZbarCase, ZbarRegime,
};

use crate::config::{ConfigError, RunConfig};
use crate::references;
use crate::report::{Grade, IdentityRecord, OracleCheck, Record, Report, TargetReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Blocks,
    Zbar,
    Zfull,
    All,
}

impl Scope {
    fn has(self, part: Scope) -> bool {
        self == Scope::All || self == part
    }

    /// Highest reference degree in scope.
    pub fn max_degree(self) -> usize {
        match self {
            Scope::Blocks => 6,
            Scope::Zbar => 5,
            Scope::Zfull | Scope::All => 7,
        }
    }

    /// Fit points plus at least one hold-out prime.
    pub fn min_primes(self) -> usize {
        self.max_degree() + 2
    }
}

/// A single evaluation at one prime.
#[derive(Debug, Clone, Copy)]
enum Job {
    Count(TargetSpec),
    /// `|W(F_p)|`.
    Size(W),
}

impl Job {
    fn label(&self) -> String {
        match self {
            Job::Count(t) => t.to_string(),
            Job::Size(w) => format!("size:{w}"),
        }
    }

    fn run(&self, ctx: &PrimeContext) -> charvar_core::Result<u64> {
        match self {
            Job::Count(t) => ctx.count_fast(t),
            Job::Size(w) => {
                w.validate(ctx.prime())?;
                Ok(ctx.group().iter().filter(|m| w.contains(m)).count() as u64)
            }
        }
    }
}

struct Pipeline<'a> {
    cfg: &'a RunConfig,
    engine: &'a mut CountEngine,
    report: Report,
}

fn timed<T>(on: bool, f: impl FnOnce() -> T) -> (T, Option<u64>) {
    let start = Instant::now();
    let v = f();
    (v, on.then(|| start.elapsed().as_millis() as u64))
}

/// `λ2` for each `λ1` under the regime rule: equal pairs `λ1` with itself,
/// special with `-λ1` when that is a different class, generic with the
/// smallest admissible partner in the generic regime.
fn regime_pairs(p: u32, lambdas: &[u32], regime: ZbarRegime) -> Vec<(u32, u32)> {
    let prime = Prime::new(p).expect("panel primes are validated");
    lambdas
        .iter()
        .filter_map(|&l1| match regime {
            ZbarRegime::Equal => Some((l1, l1)),
            ZbarRegime::Special => (zbar44_regime(l1, p - l1, prime).ok()
                == Some(ZbarRegime::Special))
            .then_some((l1, p - l1)),
            ZbarRegime::Generic => (2..p - 1)
                .find(|&l2| zbar44_regime(l1, l2, prime).ok() == Some(ZbarRegime::Generic))
                .map(|l2| (l1, l2)),
        })
        .collect()
}

impl Pipeline<'_> {
    fn lambdas(&self, p: u32) -> Vec<u32> {
        self.cfg.lambdas.at(p)
    }

    fn identity(&mut self, name: String, p: Option<u32>, lhs: impl ToString, rhs: impl ToString) {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let pass = lhs == rhs;
        self.report.identities.push(IdentityRecord {
            name,
            p,
            lhs,
            rhs,
            pass,
        });
    }

    fn fast(&mut self, p: u32, t: TargetSpec) -> Option<u64> {
        self.engine.context(p).ok()?.count_fast(&t).ok()
    }

    /// Counts, fits and judges one target.
    fn target(
        &mut self,
        mut t: TargetReport,
        reference: &EPolynomial,
        jobs: &dyn Fn(u32) -> Vec<Job>,
    ) {
        t.reference = Some(reference.to_string());
        let mut points = Vec::new();
        let mut dependent = Vec::new();
        for &p in &self.cfg.primes.clone() {
            let list = jobs(p);
            if list.is_empty() {
                t.records.push(Record {
                    p,
                    target: t.id.clone(),
                    count: None,
                    method: None,
                    ms: None,
                    skipped: Some(format!("no admissible parameter at p={p}")),
                });
                continue;
            }
            let ctx = match self.engine.context(p) {
                Ok(c) => c,
                Err(e) => {
                    t.records.push(Record {
                        p,
                        target: t.id.clone(),
                        count: None,
                        method: None,
                        ms: None,
                        skipped: Some(e.to_string()),
                    });
                    continue;
                }
            };
            let mut values = Vec::new();
            for job in list {
                let (res, ms) = timed(self.cfg.timings, || job.run(ctx));
                let (count, skipped) = match res {
                    Ok(c) => {
                        values.push(c);
                        (Some(c), None)
                    }
                    Err(e) => (None, Some(e.to_string())),
                };
                let method = count.map(|_| CountMethod::Fast);
                t.records.push(Record {
                    p,
                    target: job.label(),
                    count,
                    method,
                    ms,
                    skipped,
                });
            }
            if let Some(&first) = values.first() {
                if values.iter().any(|&v| v != first) {
                    let mut distinct = values.clone();
                    distinct.sort_unstable();
                    distinct.dedup();
                    dependent.push(format!("p={p}: {distinct:?}"));
                }
                points.push((p as u64, first as i128));
            }
        }
        if !dependent.is_empty() {
            t.notes.push(format!(
                "counts depend on the parameters at {}",
                dependent.join("; ")
            ));
        }
        let d = reference.degree().unwrap_or(0);
        let verdict = if points.len() < d + 2 {
            Verdict::Skipped {
                reason: format!(
                    "{} primes with data, degree {d} needs {}",
                    points.len(),
                    d + 2
                ),
            }
        } else {
            match fit_and_check(&points, d) {
                Ok(fit) => {
                    let v = match (&fit.status, &fit.polynomial) {
                        (FitStatus::ExactPolynomial, Some(poly)) => {
                            let cmp = compare(poly, reference);
                            if !cmp.equal {
                                let diffs: Vec<String> = cmp
                                    .diffs
                                    .iter()
                                    .map(|c| {
                                        format!("q^{}: {} vs {}", c.power, c.fitted, c.reference)
                                    })
                                    .collect();
                                t.notes
                                    .push(format!("coefficients differ: {}", diffs.join(", ")));
                                Verdict::Mismatch
                            } else if dependent.is_empty() {
                                Verdict::Match
                            } else {
                                Verdict::Mismatch
                            }
                        }
                        (FitStatus::QuasiPolynomial { modulus }, _) => {
                            for b in &fit.branches {
                                t.notes.push(format!(
                                    "p = {} mod {modulus}: {}",
                                    b.residue, b.polynomial
                                ));
                            }
                            Verdict::QuasiPolynomial
                        }
                        _ => {
                            let off: Vec<u64> = fit.nonzero_residuals().map(|r| r.prime).collect();
                            if off.is_empty() {
                                t.notes.push(format!(
                                    "no integral polynomial of degree <= {d} fits the panel"
                                ));
                            } else {
                                t.notes.push(format!(
                                    "fit on {:?} misses at {off:?}",
                                    fit.primes_used
                                ));
                            }
                            Verdict::Mismatch
                        }
                    };
                    if !fit.suspects.is_empty() {
                        t.notes
                            .push(format!("leave-one-out suspects: {:?}", fit.suspects));
                    }
                    t.fit = Some(fit);
                    v
                }
                Err(e) => {
                    t.notes.push(format!("fit failed: {e}"));
                    Verdict::Mismatch
                }
            }
        };
        if verdict != Verdict::Match && t.grade == Grade::Warning {
            self.confirm(&mut t);
        }
        t.verdict = Some(verdict);
        self.report.targets.push(t);
    }

    /// Re-counts with the brute-force oracle wherever its guards allow: the
    /// first record at each prime and the first one disagreeing with it.
    fn confirm(&mut self, t: &mut TargetReport) {
        let limits = *self.engine.limits();
        for &p in &self.cfg.primes.clone() {
            let recs: Vec<&Record> = t
                .records
                .iter()
                .filter(|r| r.p == p && r.count.is_some())
                .collect();
            let Some(first) = recs.first() else { continue };
            let mut picks = vec![*first];
            if let Some(other) = recs.iter().find(|r| r.count != first.count) {
                picks.push(other);
            }
            for r in picks {
                let Ok(spec) = crate::targets::parse_target(&r.target) else {
                    continue;
                };
                let limit = if spec.is_tuple_target() {
                    limits.brute_tuple_limit
                } else {
                    limits.brute_pair_limit
                };
                if p > limit {
                    continue;
                }
                if let Ok(brute) = self.engine.brute_force_count(p, &spec) {
                    let fast = r.count.expect("filtered above");
                    t.oracle.push(OracleCheck {
                        p,
                        target: r.target.clone(),
                        fast,
                        brute,
                        agree: fast == brute,
                    });
                }
            }
        }
        if t.oracle.is_empty() {
            t.notes
                .push("no prime in the panel is within the oracle guards".into());
        }
    }

    fn symbolic(&mut self) {
        let b = building_blocks();
        for check in b.identity_checks() {
            self.identity(
                format!("blocks: {}", check.name),
                None,
                &check.lhs,
                &check.rhs,
            );
        }
        let mut generic_strata = None;
        for (case, stated_zbar, stated_r, reducibles) in references::theorem_cases() {
            let mut t =
                TargetReport::new(format!("derive:{case}"), Grade::MustMatch).param("case", case);
            t.reference = Some(stated_r.to_string());
            let verdict = match derive_case(case) {
                Ok(res) => {
                    t.notes
                        .push(format!("zbar {} (stated {stated_zbar})", res.zbar));
                    t.notes.push(format!("e(R) {}", res.r));
                    let mut ok = res.r == stated_r
                        && res.zbar == stated_zbar
                        && res.has_reducibles == reducibles;
                    if case == CaseId::XiXiGeneric {
                        generic_strata = Some(res.strata.clone());
                    }
                    if case == CaseId::XiXiSpecial {
                        let differ = generic_strata.as_ref().is_some_and(|g| *g != res.strata);
                        t.notes.push(format!(
                            "stratum list differs from the generic one: {differ}"
                        ));
                        ok &= differ;
                    }
                    if ok {
                        Verdict::Match
                    } else {
                        Verdict::Mismatch
                    }
                }
                Err(e) => {
                    t.notes.push(e.to_string());
                    Verdict::Mismatch
                }
            };
            t.verdict = Some(verdict);
            self.report.targets.push(t);
        }
    }

    fn blocks(&mut self) {
        let b = building_blocks();
        let lam = self.cfg.lambdas.clone();
        let sizes: [(&str, W, &EPolynomial); 5] = [
            ("size:W0", W::W0, &b.w0),
            ("size:W1", W::W1, &b.w1),
            ("size:W2", W::W2, &b.w2),
            ("size:W3", W::W3, &b.w3),
            ("size:W4", W::W4Any, &b.w4),
        ];
        for (id, w, reference) in sizes {
            self.target(
                TargetReport::new(id, Grade::MustMatch),
                reference,
                &move |_| vec![Job::Size(w)],
            );
        }
        let l = lam.clone();
        self.target(
            TargetReport::new("size:W4(lambda)", Grade::MustMatch).param("lambda", &lam),
            &b.w4_lambda,
            &move |p| {
                l.at(p)
                    .into_iter()
                    .map(|lambda| Job::Size(W::W4 { lambda }))
                    .collect()
            },
        );
        let strata: [(&str, TargetSpec, &EPolynomial); 7] = [
            ("X0", TargetSpec::Xstratum(W::W0), &b.x0),
            ("X1", TargetSpec::Xstratum(W::W1), &b.x1),
            (
                "X2_bar",
                TargetSpec::CommFiber(charvar_core::FiberTarget::JPlus),
                &b.x2_bar,
            ),
            ("X2", TargetSpec::Xstratum(W::W2), &b.x2),
            (
                "X3_bar",
                TargetSpec::CommFiber(charvar_core::FiberTarget::JMinus),
                &b.x3_bar,
            ),
            ("X3", TargetSpec::Xstratum(W::W3), &b.x3),
            ("X4", TargetSpec::Xstratum(W::W4Any), &b.x4),
        ];
        for (id, spec, reference) in strata {
            let t = TargetReport::new(id, Grade::MustMatch).param("target", spec);
            self.target(t, reference, &move |_| vec![Job::Count(spec)]);
        }
        let l = lam.clone();
        self.target(
            TargetReport::new("X4_lambda_bar", Grade::MustMatch).param("lambda", &lam),
            &b.x4_lambda_bar,
            &move |p| {
                l.at(p)
                    .into_iter()
                    .map(|lambda| {
                        Job::Count(TargetSpec::CommFiber(charvar_core::FiberTarget::Xi {
                            lambda,
                        }))
                    })
                    .collect()
            },
        );
        let l = lam.clone();
        self.target(
            TargetReport::new("X4_lambda", Grade::MustMatch).param("lambda", &lam),
            &b.x4_lambda,
            &move |p| {
                l.at(p)
                    .into_iter()
                    .map(|lambda| Job::Count(TargetSpec::Xstratum(W::W4 { lambda })))
                    .collect()
            },
        );
        for &p in &self.cfg.primes.clone() {
            let total: Option<u64> = [W::W0, W::W1, W::W2, W::W3, W::W4Any]
                .into_iter()
                .map(|w| self.fast(p, TargetSpec::Xstratum(w)))
                .sum();
            let g = p as u64 * p as u64 * p as u64 - p as u64;
            let lhs = total.map_or_else(|| "error".to_string(), |v| v.to_string());
            self.identity(
                "X0 + X1 + X2 + X3 + X4 = |SL2|^2".into(),
                Some(p),
                lhs,
                g * g,
            );
        }
    }

    fn zbar(&mut self) {
        let lam = self.cfg.lambdas.clone();
        let zbar_of = |c: CaseId| derive_case(c).expect("derivations are exact").zbar;
        let fixed: [(&str, ZbarCase, CaseId); 2] = [
            ("zbar22", ZbarCase::Zbar22, CaseId::JPlusJPlus),
            ("zbar23", ZbarCase::Zbar23, CaseId::JPlusJMinus),
        ];
        for (id, case, from) in fixed {
            let t = TargetReport::new(id, Grade::Warning).param("case", from);
            self.target(t, &zbar_of(from), &move |_| {
                vec![Job::Count(TargetSpec::Zbar(case))]
            });
        }
        for (id, make) in [
            (
                "zbar24",
                (|lambda| ZbarCase::Zbar24 { lambda }) as fn(u32) -> ZbarCase,
            ),
            ("zbar34", |lambda| ZbarCase::Zbar34 { lambda }),
        ] {
            let l = lam.clone();
            let t = TargetReport::new(id, Grade::Warning)
                .param("case", CaseId::JPlusXi)
                .param("lambda", &lam);
            self.target(t, &zbar_of(CaseId::JPlusXi), &move |p| {
                l.at(p)
                    .into_iter()
                    .map(|x| Job::Count(TargetSpec::Zbar(make(x))))
                    .collect()
            });
        }
        for (regime, case) in [
            (ZbarRegime::Generic, CaseId::XiXiGeneric),
            (ZbarRegime::Special, CaseId::XiXiSpecial),
            (ZbarRegime::Equal, CaseId::XiXiEqual),
        ] {
            let l = lam.clone();
            let t = TargetReport::new(format!("zbar44-{regime}"), Grade::Warning)
                .param("case", case)
                .param("lambda1", &lam)
                .param("regime", regime);
            self.target(t, &zbar_of(case), &move |p| {
                regime_pairs(p, &l.at(p), regime)
                    .into_iter()
                    .map(|(lambda1, lambda2)| {
                        Job::Count(TargetSpec::Zbar(ZbarCase::Zbar44 { lambda1, lambda2 }))
                    })
                    .collect()
            });
        }
        for &p in &self.cfg.primes.clone() {
            for l in self.lambdas(p) {
                let a = self.fast(p, TargetSpec::Zbar(ZbarCase::Zbar34 { lambda: l }));
                let b = self.fast(p, TargetSpec::Zbar(ZbarCase::Zbar24 { lambda: p - l }));
                self.identity(
                    format!("zbar34:{l} = zbar24:{}", p - l),
                    Some(p),
                    fmt_opt(a),
                    fmt_opt(b),
                );
            }
            if let Ok(r) = self.engine.monodromy_probe(p) {
                self.report.probes.push(r);
            }
        }
    }

    fn zfull(&mut self) {
        let lam = self.cfg.lambdas.clone();
        let full_of = |c: CaseId| {
            derive_case(c)
                .expect("derivations are exact")
                .z_full
                .expect("fibred case")
        };
        let one = one_puncture_solution_sets();
        let named = |key: &str| {
            one.iter()
                .find(|(n, _)| n.starts_with(key))
                .expect("listed")
                .1
                .clone()
        };

        let fixed: Vec<(W, W, EPolynomial)> = vec![
            (W::W0, W::W0, named("Z00")),
            (W::W1, W::W1, named("Z00")),
            (W::W0, W::W1, named("Z01")),
            (W::W0, W::W2, named("Z02")),
            (W::W1, W::W3, named("Z02")),
            (W::W0, W::W3, named("Z03")),
            (W::W1, W::W2, named("Z03")),
            (W::W2, W::W3, full_of(CaseId::JPlusJMinus)),
        ];
        for (a, b, reference) in fixed {
            let spec = TargetSpec::ZFull(a, b);
            self.target(
                TargetReport::new(spec.to_string(), Grade::Warning),
                &reference,
                &move |_| vec![Job::Count(spec)],
            );
        }
        let with_lambda: [(W, EPolynomial); 4] = [
            (W::W0, named("Z04")),
            (W::W1, named("Z04")),
            (W::W2, full_of(CaseId::JPlusXi)),
            (W::W3, full_of(CaseId::JPlusXi)),
        ];
        for (a, reference) in with_lambda {
            let l = lam.clone();
            let t = TargetReport::new(format!("zfull:{a},W4(lambda)"), Grade::Warning)
                .param("lambda", &lam);
            self.target(t, &reference, &move |p| {
                l.at(p)
                    .into_iter()
                    .map(|lambda| Job::Count(TargetSpec::ZFull(a, W::W4 { lambda })))
                    .collect()
            });
        }
        for (regime, case) in [
            (ZbarRegime::Generic, CaseId::XiXiGeneric),
            (ZbarRegime::Special, CaseId::XiXiSpecial),
        ] {
            let l = lam.clone();
            let t = TargetReport::new(format!("zfull:W4,W4-{regime}"), Grade::Warning)
                .param("lambda1", &lam)
                .param("regime", regime);
            self.target(t, &full_of(case), &move |p| {
                regime_pairs(p, &l.at(p), regime)
                    .into_iter()
                    .map(|(x, y)| {
                        Job::Count(TargetSpec::ZFull(W::W4 { lambda: x }, W::W4 { lambda: y }))
                    })
                    .collect()
            });
        }

        for &p in &self.cfg.primes.clone() {
            let q = p as u64;
            let full = |this: &mut Self, a, b| this.fast(p, TargetSpec::ZFull(a, b));
            // symmetry
            let mut pairs = vec![
                (W::W0, W::W2),
                (W::W1, W::W3),
                (W::W0, W::W3),
                (W::W2, W::W3),
            ];
            for l in self.lambdas(p) {
                pairs.push((W::W2, W::W4 { lambda: l }));
                pairs.push((W::W3, W::W4 { lambda: l }));
            }
            for (x, y) in regime_pairs(p, &self.lambdas(p), ZbarRegime::Generic)
                .into_iter()
                .chain(regime_pairs(p, &self.lambdas(p), ZbarRegime::Special))
            {
                pairs.push((W::W4 { lambda: x }, W::W4 { lambda: y }));
            }
            for (a, b) in pairs {
                let (l, r) = (full(self, a, b), full(self, b, a));
                self.identity(
                    format!("Z({a},{b}) = Z({b},{a})"),
                    Some(p),
                    fmt_opt(l),
                    fmt_opt(r),
                );
            }
            // negation
            let (l, r) = (full(self, W::W3, W::W3), full(self, W::W2, W::W2));
            self.identity(
                "Z(W3,W3) = Z(W2,W2)".into(),
                Some(p),
                fmt_opt(l),
                fmt_opt(r),
            );
            for l in self.lambdas(p) {
                let (a, b) = (
                    full(self, W::W3, W::W4 { lambda: l }),
                    full(self, W::W2, W::W4 { lambda: p - l }),
                );
                self.identity(
                    format!("Z(W3,W4({l})) = Z(W2,W4({}))", p - l),
                    Some(p),
                    fmt_opt(a),
                    fmt_opt(b),
                );
            }
            // fibrations
            let scaled = |v: Option<u64>, k: u64| v.map(|v| v * k);
            let z22 = self.fast(p, TargetSpec::Zbar(ZbarCase::Zbar22));
            let l = full(self, W::W2, W::W2);
            self.identity(
                "Z(W2,W2) = (q^2-1) Zbar22".into(),
                Some(p),
                fmt_opt(l),
                fmt_opt(scaled(z22, q * q - 1)),
            );
            let z23 = self.fast(p, TargetSpec::Zbar(ZbarCase::Zbar23));
            let l = full(self, W::W2, W::W3);
            self.identity(
                "Z(W2,W3) = (q^2-1) Zbar23".into(),
                Some(p),
                fmt_opt(l),
                fmt_opt(scaled(z23, q * q - 1)),
            );
            for lambda in self.lambdas(p) {
                let z = self.fast(p, TargetSpec::Zbar(ZbarCase::Zbar24 { lambda }));
                let l = full(self, W::W2, W::W4 { lambda });
                self.identity(
                    format!("Z(W2,W4({lambda})) = (q^2+q) Zbar24({lambda})"),
                    Some(p),
                    fmt_opt(l),
                    fmt_opt(scaled(z, q * q + q)),
                );
            }
            for regime in [ZbarRegime::Generic, ZbarRegime::Special, ZbarRegime::Equal] {
                for (x, y) in regime_pairs(p, &self.lambdas(p), regime) {
                    let z = self.fast(
                        p,
                        TargetSpec::Zbar(ZbarCase::Zbar44 {
                            lambda1: x,
                            lambda2: y,
                        }),
                    );
                    let l = full(self, W::W4 { lambda: x }, W::W4 { lambda: y });
                    self.identity(
                        format!("Z(W4({x}),W4({y})) = (q^2+q) Zbar44({x},{y})"),
                        Some(p),
                        fmt_opt(l),
                        fmt_opt(scaled(z, q * q + q)),
                    );
                }
            }
        }
    }
}

fn fmt_opt(v: Option<u64>) -> String {
    v.map_or_else(|| "error".to_string(), |v| v.to_string())
}

/// Rejects panels that cannot support the scope before anything is counted.
pub fn check_panel(cfg: &RunConfig, scope: Scope) -> Result<(), ConfigError> {
    if cfg.primes.is_empty() {
        return Err(ConfigError::EmptyPanel);
    }
    if let Some(&p) = cfg.primes.iter().find(|&&p| p < 5) {
        return Err(ConfigError::Insufficient(format!(
            "verification needs primes >= 5, the panel has {p}"
        )));
    }
    if cfg.primes.len() < scope.min_primes() {
        return Err(ConfigError::Insufficient(format!(
            "scope {scope:?} fits degree {} and needs at least {} primes, the panel has {}",
            scope.max_degree(),
            scope.min_primes(),
            cfg.primes.len()
        )));
    }
    Ok(())
}

pub fn verify(
    cfg: &RunConfig,
    scope: Scope,
    engine: &mut CountEngine,
) -> Result<Report, ConfigError> {
    check_panel(cfg, scope)?;
    let mut pipe = Pipeline {
        cfg,
        engine,
        report: Report::new(&format!("verify {scope:?}").to_lowercase(), cfg.clone()),
    };
    pipe.symbolic();
    if scope.has(Scope::Blocks) {
        pipe.blocks();
    }
    if scope.has(Scope::Zbar) {
        pipe.zbar();
    }
    if scope.has(Scope::Zfull) {
        pipe.zfull();
    }
    let mut report = pipe.report;
    report.finish();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::LambdaPolicy;

    #[test]
    fn pairs_by_regime() {
        assert_eq!(
            regime_pairs(11, &[2, 3], ZbarRegime::Special),
            [(2, 9), (3, 8)]
        );
        assert_eq!(regime_pairs(11, &[2], ZbarRegime::Generic), [(2, 3)]);
        assert!(regime_pairs(7, &[2, 3], ZbarRegime::Generic).is_empty());
        assert_eq!(regime_pairs(7, &[2], ZbarRegime::Equal), [(2, 2)]);
        // -2 = 2^-1 mod 5: one class, not a special pair
        assert!(regime_pairs(5, &[2, 3], ZbarRegime::Special).is_empty());
    }

    #[test]
    fn panel_checks() {
        let cfg = |primes: Vec<u32>| RunConfig {
            primes,
            ..RunConfig::default()
        };
        assert!(matches!(
            check_panel(&cfg(vec![5, 7]), Scope::Blocks),
            Err(ConfigError::Insufficient(_))
        ));
        assert!(matches!(
            check_panel(&cfg(vec![3, 5, 7, 11, 13, 17, 19, 23, 29]), Scope::Blocks),
            Err(ConfigError::Insufficient(_))
        ));
        assert_eq!(
            check_panel(&cfg(vec![]), Scope::Zbar),
            Err(ConfigError::EmptyPanel)
        );
        assert!(check_panel(&cfg(crate::config::block_panel()), Scope::Blocks).is_ok());
        assert!(check_panel(&cfg(crate::config::block_panel()), Scope::All).is_ok());
    }

    #[test]
    fn symbolic_targets_match() {
        let cfg = RunConfig {
            primes: crate::config::block_panel(),
            lambdas: LambdaPolicy::Explicit(vec![2]),
            ..RunConfig::default()
        };
        let mut engine = CountEngine::default();
        let mut pipe = Pipeline {
            cfg: &cfg,
            engine: &mut engine,
            report: Report::new("t", cfg.clone()),
        };
        pipe.symbolic();
        assert_eq!(pipe.report.targets.len(), 6);
        assert!(
            pipe.report
                .targets
                .iter()
                .all(|t| t.verdict == Some(Verdict::Match)),
            "{:#?}",
            pipe.report.targets
        );
        assert!(pipe.report.identities.iter().all(|i| i.pass));
    }
}
