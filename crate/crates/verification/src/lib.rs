//! The acceptance criteria as plain functions. Each returns an [`Outcome`]
//! with a pass flag and the evidence behind it; `tests/acceptance.rs` prints
//! one line per criterion and fails if any of them does.
//!
//! Expected values are written as stated. Where the counts disagree, the
//! criterion fails and the details say by how much.

use std::time::{Duration, Instant};

use charvar::config::{block_panel, LambdaPolicy, RunConfig};
use charvar::references::theorem_cases;
use charvar::report::{Grade, Verdict};
use charvar::verify::{verify, Scope};
use charvar_core::classes::GeometricClassSpec as W;
use charvar_core::count::{zbar44_regime, PrimeContext};
use charvar_core::hodge::{
    brute_force_tables, enumerate_tables, forced_entries, standard_instance,
};
use charvar_core::polyfit::fit_and_check;
use charvar_core::strata::{building_blocks, derive_case, CaseId};
use charvar_core::{
    CountEngine, EPolynomial, FiberTarget, FitStatus, HodgeOptions, HodgeTable, Limits, Prime,
    TargetSpec, ZbarCase, ZbarRegime,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub criterion: u8,
    pub title: &'static str,
    pub pass: bool,
    /// Failed checks first, then a short account of what passed.
    pub details: Vec<String>,
    pub elapsed: Duration,
}

/// Collects checks for one criterion.
struct Checks {
    failures: Vec<String>,
    passed: usize,
    info: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks {
            failures: Vec::new(),
            passed: 0,
            info: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }

    fn finish(
        mut self,
        criterion: u8,
        title: &'static str,
        start: Instant,
        budget: Option<Duration>,
    ) -> Outcome {
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            self.check(elapsed < b, || format!("took {elapsed:.2?}, budget {b:?}"));
        }
        let pass = self.failures.is_empty();
        let mut details = self.failures;
        details.push(format!("{} checks passed", self.passed));
        details.extend(self.info);
        Outcome {
            criterion,
            title,
            pass,
            details,
            elapsed,
        }
    }
}

fn poly(s: &str) -> EPolynomial {
    EPolynomial::parse_in(s, 'q').expect("literal")
}

/// Symbolic reproduction of the five quotient polynomials and every barred
/// intermediate.
pub fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let finals = [
        "q^4+q^3-q+7",
        "q^4-3q^2-6q",
        "q^4+q^3+2q^2+q+1",
        "q^4+2q^3+6q^2+2q+1",
        "q^4+q^3+8q^2+q+1",
    ];
    let mut derived = Vec::new();
    for (case, zbar, r, reducibles) in theorem_cases() {
        match derive_case(case) {
            Ok(res) => {
                c.check(res.r == r, || {
                    format!("{case}: e(R) = {}, stated {r}", res.r)
                });
                c.check(res.zbar == zbar, || {
                    format!("{case}: Zbar = {}, stated {zbar}", res.zbar)
                });
                c.check(res.has_reducibles == reducibles, || {
                    format!("{case}: reducibles {}", res.has_reducibles)
                });
                derived.push(res);
            }
            Err(e) => c.check(false, || format!("{case}: {e}")),
        }
    }
    for f in finals {
        let f = poly(f);
        c.check(derived.iter().any(|d| d.r == f), || {
            format!("no case yields {f}")
        });
    }
    let find = |id: CaseId| derived.iter().find(|d| d.case == id);
    if let (Some(g), Some(s)) = (find(CaseId::XiXiGeneric), find(CaseId::XiXiSpecial)) {
        c.check(g.strata != s.strata, || {
            "generic and special share one stratum list".into()
        });
        c.check(g.zbar == s.zbar && g.r == s.r, || {
            "generic and special totals differ".into()
        });
        c.info.push(format!(
            "generic uses {} strata, special {}",
            g.strata.len(),
            s.strata.len()
        ));
    }
    c.finish(
        1,
        "symbolic reproduction",
        start,
        Some(Duration::from_secs(1)),
    )
}

/// Fitted building-block polynomials on the nine-prime panel.
pub fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let cfg = RunConfig {
        primes: block_panel(),
        lambdas: LambdaPolicy::All,
        ..RunConfig::default()
    };
    match verify(
        &cfg,
        Scope::Blocks,
        &mut CountEngine::new(Limits::default()),
    ) {
        Ok(report) => {
            let wanted = [
                ("size:W2", "e(W2)"),
                ("size:W4(lambda)", "e(W4_lambda)"),
                ("X0", "e(X0)"),
                ("X1", "e(X1)"),
                ("X2_bar", "e(X2_bar)"),
                ("X3_bar", "e(X3_bar)"),
                ("X4_lambda_bar", "e(X4_lambda_bar) for every lambda"),
                ("X2", "e(X2)"),
                ("X3", "e(X3)"),
                ("X4", "residual e(X4)"),
            ];
            for (id, label) in wanted {
                match report.targets.iter().find(|t| t.id == id) {
                    Some(t) => {
                        let v = t.verdict.clone().unwrap_or(Verdict::Skipped {
                            reason: "no verdict".into(),
                        });
                        c.check(v == Verdict::Match, || {
                            let fitted = t
                                .fit
                                .as_ref()
                                .and_then(|f| f.polynomial.as_ref())
                                .map_or_else(|| "none".to_string(), |p| p.to_string());
                            let mut line = format!(
                                "{label}: {v}, reference {}, fitted {fitted}",
                                t.reference.as_deref().unwrap_or("?")
                            );
                            if let Some(n) = t.notes.first() {
                                line.push_str(&format!(" ({})", truncate(n, 120)));
                            }
                            line
                        });
                    }
                    None => c.check(false, || format!("{label}: target missing")),
                }
            }
            let totals: Vec<_> = report
                .identities
                .iter()
                .filter(|i| i.name.starts_with("X0 + X1"))
                .collect();
            c.check(totals.len() == cfg.primes.len(), || {
                "total identity not evaluated at every prime".into()
            });
            for i in totals {
                c.check(i.pass, || {
                    format!("sum of strata at p={:?}: {} != {}", i.p, i.lhs, i.rhs)
                });
            }
        }
        Err(e) => c.check(false, || e.to_string()),
    }
    c.finish(
        2,
        "building-block counts",
        start,
        Some(Duration::from_secs(60)),
    )
}

fn truncate(s: &str, n: usize) -> String {
    if s.chars().count() <= n {
        s.to_string()
    } else {
        let head: String = s.chars().take(n).collect();
        format!("{head}...")
    }
}

fn fast_vs_brute(c: &mut Checks, engine: &mut CountEngine, p: u32, t: TargetSpec) -> Option<u64> {
    let fast = engine.context(p).and_then(|ctx| ctx.count_fast(&t));
    let brute = engine.brute_force_count(p, &t);
    match (fast, brute) {
        (Ok(f), Ok(b)) => {
            c.check(f == b, || format!("p={p} {t}: fast {f}, brute {b}"));
            Some(b)
        }
        (f, b) => {
            c.check(false, || format!("p={p} {t}: fast {f:?}, brute {b:?}"));
            None
        }
    }
}

fn generic_pairs(p: u32) -> Vec<(u32, u32)> {
    let prime = Prime::new(p).expect("prime");
    let mut out = Vec::new();
    for a in 2..p - 1 {
        for b in 2..p - 1 {
            if zbar44_regime(a, b, prime).ok() == Some(ZbarRegime::Generic) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Brute-force oracle against the fast path, and the stated spot values.
pub fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let mut engine = CountEngine::new(Limits::default());

    for p in [3, 5, 7] {
        let mut targets = vec![
            FiberTarget::Identity,
            FiberTarget::MinusIdentity,
            FiberTarget::JPlus,
            FiberTarget::JMinus,
        ];
        targets.extend((2..p - 1).map(|lambda| FiberTarget::Xi { lambda }));
        let reps: Vec<[u32; 4]> = match engine.context(p) {
            Ok(ctx) => ctx
                .table()
                .representatives()
                .iter()
                .map(|m| m.entries())
                .collect(),
            Err(_) => Vec::new(),
        };
        targets.extend(reps.into_iter().map(|e| FiberTarget::Matrix {
            entries: e.map(i64::from),
        }));
        for t in targets {
            fast_vs_brute(&mut c, &mut engine, p, TargetSpec::CommFiber(t));
        }
    }

    let mut zbar5 = vec![ZbarCase::Zbar22, ZbarCase::Zbar23];
    for l in [2, 3] {
        zbar5.push(ZbarCase::Zbar24 { lambda: l });
        zbar5.push(ZbarCase::Zbar34 { lambda: l });
        for m in [2, 3] {
            zbar5.push(ZbarCase::Zbar44 {
                lambda1: l,
                lambda2: m,
            });
        }
    }
    for z in zbar5 {
        fast_vs_brute(&mut c, &mut engine, 5, TargetSpec::Zbar(z));
    }
    let generic7 = generic_pairs(7);
    c.check(!generic7.is_empty(), || {
        "generic Zbar44 at p=7: no pair is generic, {λ, 1/λ, -λ, -1/λ} covers all of {2,3,4,5} for every λ".into()
    });
    for (a, b) in &generic7 {
        fast_vs_brute(
            &mut c,
            &mut engine,
            7,
            TargetSpec::Zbar(ZbarCase::Zbar44 {
                lambda1: *a,
                lambda2: *b,
            }),
        );
    }
    fast_vs_brute(&mut c, &mut engine, 5, TargetSpec::ZFull(W::W2, W::W3));

    let b = building_blocks();
    let zbar_of = |case| derive_case(case).expect("exact").zbar;
    let spots: [(&str, u32, Option<TargetSpec>, u64, EPolynomial); 7] = [
        (
            "X2_bar fiber",
            5,
            Some(TargetSpec::CommFiber(FiberTarget::JPlus)),
            60,
            b.x2_bar.clone(),
        ),
        (
            "X3_bar fiber",
            5,
            Some(TargetSpec::CommFiber(FiberTarget::JMinus)),
            200,
            b.x3_bar.clone(),
        ),
        (
            "xi_2 fiber",
            5,
            Some(TargetSpec::CommFiber(FiberTarget::Xi { lambda: 2 })),
            184,
            b.x4_lambda_bar.clone(),
        ),
        (
            "Zbar22",
            5,
            Some(TargetSpec::Zbar(ZbarCase::Zbar22)),
            3840,
            zbar_of(CaseId::JPlusJPlus),
        ),
        (
            "Zbar23",
            5,
            Some(TargetSpec::Zbar(ZbarCase::Zbar23)),
            2600,
            zbar_of(CaseId::JPlusJMinus),
        ),
        (
            "Zbar44 equal",
            5,
            Some(TargetSpec::Zbar(ZbarCase::Zbar44 {
                lambda1: 2,
                lambda2: 2,
            })),
            4544,
            zbar_of(CaseId::XiXiEqual),
        ),
        (
            "Zbar44 generic",
            7,
            generic7.first().map(|&(a, b)| {
                TargetSpec::Zbar(ZbarCase::Zbar44 {
                    lambda1: a,
                    lambda2: b,
                })
            }),
            20376,
            zbar_of(CaseId::XiXiGeneric),
        ),
    ];
    for (label, p, target, expected, reference) in spots {
        let eval = reference.eval(p as i128).ok();
        c.check(eval == Some(expected as i128), || {
            format!("{label}: reference evaluates to {eval:?}, not {expected}")
        });
        match target {
            Some(t) => {
                let got = fast_vs_brute(&mut c, &mut engine, p, t);
                c.check(got == Some(expected), || {
                    format!("{label} at p={p}: counted {got:?}, expected {expected}")
                });
            }
            None => c.check(false, || format!("{label} at p={p}: no such target exists")),
        }
    }
    // what the closest existing pair gives at p = 7
    if let Ok(v) = engine.context(7).and_then(|ctx| {
        ctx.count_fast(&TargetSpec::Zbar(ZbarCase::Zbar44 {
            lambda1: 2,
            lambda2: 3,
        }))
    }) {
        c.info.push(format!(
            "Zbar44(2,3) at p=7 (a special pair there) counts {v}"
        ));
    }
    c.finish(3, "oracle equivalence and spot values", start, None)
}

fn full(ctx: &PrimeContext, a: W, b: W) -> Option<u64> {
    ctx.count_z_full(a, b).ok()
}

/// Symmetry, negation and fibration identities at p = 5 and 7.
pub fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let mut engine = CountEngine::new(Limits::default());
    for p in [5, 7] {
        let ctx = match engine.context(p) {
            Ok(ctx) => ctx,
            Err(e) => {
                c.check(false, || format!("p={p}: {e}"));
                continue;
            }
        };
        let prime = ctx.prime();
        let mut classes = vec![W::W0, W::W1, W::W2, W::W3];
        classes.extend((2..p - 1).map(|lambda| W::W4 { lambda }));
        for (i, &a) in classes.iter().enumerate() {
            for &b in &classes[i..] {
                let (ab, ba) = (full(ctx, a, b), full(ctx, b, a));
                c.check(ab.is_some() && ab == ba, || {
                    format!("p={p}: Z({a},{b}) = {ab:?}, Z({b},{a}) = {ba:?}")
                });
                let neg = full(ctx, a.negated(prime), b.negated(prime));
                c.check(ab == neg, || {
                    format!("p={p}: Z({a},{b}) = {ab:?}, negated pair {neg:?}")
                });
            }
        }
        for l in 2..p - 1 {
            let z34 = ctx.count_zbar(ZbarCase::Zbar34 { lambda: l }).ok();
            let z24 = ctx.count_zbar(ZbarCase::Zbar24 { lambda: p - l }).ok();
            c.check(z34.is_some() && z34 == z24, || {
                format!("p={p}: zbar34({l}) = {z34:?}, zbar24({}) = {z24:?}", p - l)
            });
        }
        let q = p as u64;
        let z23 = ctx.count_zbar(ZbarCase::Zbar23).ok();
        let f23 = full(ctx, W::W2, W::W3);
        c.check(f23.is_some() && f23 == z23.map(|z| z * (q * q - 1)), || {
            format!("p={p}: Z23 {f23:?} vs Zbar23 {z23:?}")
        });
        for l1 in 2..p - 1 {
            for l2 in 2..p - 1 {
                let z = ctx
                    .count_zbar(ZbarCase::Zbar44 {
                        lambda1: l1,
                        lambda2: l2,
                    })
                    .ok();
                let f = full(ctx, W::W4 { lambda: l1 }, W::W4 { lambda: l2 });
                c.check(f.is_some() && f == z.map(|z| z * (q * q + q)), || {
                    format!("p={p}: Z44({l1},{l2}) {f:?} vs Zbar44 {z:?}")
                });
            }
        }
    }
    c.finish(4, "count identities", start, None)
}

/// Barred fit reports on the panel plus the monodromy probe. Non-matches
/// are acceptable here provided each one is confirmed by the oracle and
/// classified.
pub fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let cfg = RunConfig {
        primes: block_panel(),
        lambdas: LambdaPolicy::All,
        ..RunConfig::default()
    };
    let mut engine = CountEngine::new(Limits::default());
    match verify(&cfg, Scope::Zbar, &mut engine) {
        Ok(report) => {
            let zbar: Vec<_> = report
                .targets
                .iter()
                .filter(|t| t.id.starts_with("zbar"))
                .collect();
            for id in [
                "zbar22",
                "zbar23",
                "zbar24",
                "zbar34",
                "zbar44-generic",
                "zbar44-special",
                "zbar44-equal",
            ] {
                c.check(zbar.iter().any(|t| t.id == id), || {
                    format!("{id}: no report")
                });
            }
            for t in zbar {
                let v = t.verdict.clone();
                c.check(
                    matches!(
                        v,
                        Some(Verdict::Match | Verdict::Mismatch | Verdict::QuasiPolynomial)
                    ),
                    || format!("{}: verdict {v:?}", t.id),
                );
                if v == Some(Verdict::Match) {
                    c.info.push(format!("{}: match", t.id));
                    continue;
                }
                c.check(t.grade == Grade::Warning, || {
                    format!("{}: not warning-grade", t.id)
                });
                c.check(
                    !t.oracle.is_empty() && t.oracle.iter().all(|o| o.agree),
                    || format!("{}: oracle confirmation missing or disagreeing", t.id),
                );
                let class = t.fit.as_ref().map(|f| match f.status {
                    FitStatus::QuasiPolynomial { modulus } => {
                        format!("quasi-polynomial mod {modulus}")
                    }
                    FitStatus::Inconsistent => "inconsistent".to_string(),
                    FitStatus::ExactPolynomial => "polynomial, differs or depends on λ".to_string(),
                });
                c.check(class.is_some(), || format!("{}: not classified", t.id));
                c.info.push(format!(
                    "{}: {} ({} oracle checks)",
                    t.id,
                    class.unwrap_or_default(),
                    t.oracle.len()
                ));
            }
        }
        Err(e) => c.check(false, || e.to_string()),
    }
    match engine.monodromy_probe(5) {
        Ok(r) => {
            c.check(r.x4bar_eval == 128 && r.x4bar_mod_z2_eval == 316, || {
                format!("probe evaluations {r:?}")
            });
            c.info.push(format!(
                "probe p=5: union {} (expected 368), e(X4_bar) {}, e(X4_bar/Z2) {}",
                r.union_count, r.x4bar_eval, r.x4bar_mod_z2_eval
            ));
        }
        Err(e) => c.check(false, || format!("probe: {e}")),
    }
    c.finish(5, "barred fit reports and probe", start, None)
}

fn small_instances(n: usize) -> Vec<(HodgeTable, bool)> {
    let mut runner = TestRunner::deterministic();
    let strategy = (1usize..=2, proptest::bool::ANY).prop_flat_map(|(d, bound)| {
        let hi = if d == 1 { 2u64 } else { 1 };
        proptest::collection::vec(proptest::collection::vec(0..=hi, d + 1), 2 * d + 1)
            .prop_map(move |cells| (HodgeTable::from_cells(cells).expect("rectangular"), bound))
    });
    (0..n)
        .map(|_| strategy.new_tree(&mut runner).expect("strategy").current())
        .collect()
}

/// The Hodge table enumeration on the character variety instance.
pub fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let (e, p, d) = standard_instance();
    let b = match charvar_core::hodge::compact_betti_from_poincare(&p, d) {
        Ok(b) => b,
        Err(err) => {
            c.check(false, || err.to_string());
            return c.finish(6, "Hodge solver", start, None);
        }
    };
    let opts = HodgeOptions::default();
    let mut tables = enumerate_tables(&e, &b, opts);
    c.check(tables.len() == 18, || {
        format!("{} tables, expected 18", tables.len())
    });
    let forced = forced_entries(&tables).unwrap_or_default();
    let is_forced =
        |k: usize, p: usize, v: u64| forced.iter().any(|f| f.k == k && f.p == p && f.value == v);
    let mut expect = Vec::new();
    expect.extend((0..=4).map(|p| (7, p, 0)));
    expect.extend((0..=3).map(|p| (8, p, 0)));
    expect.push((8, 4, 1));
    expect.push((6, 3, 2));
    expect.extend([4, 5, 7, 8].map(|k| (k, 3, 0)));
    for (k, p, v) in expect {
        c.check(is_forced(k, p, v), || {
            format!("h[{k}][{p}] = {v} is not forced")
        });
    }
    let solver_time = start.elapsed();
    c.check(solver_time < Duration::from_secs(1), || {
        format!("standard instance took {solver_time:.2?}")
    });
    c.info.push(format!(
        "solver on the standard instance: {solver_time:.2?}"
    ));
    tables.sort();
    c.check(tables == brute_force_tables(&e, &b, opts), || {
        "brute force disagrees on the standard instance".into()
    });
    for (i, (t, bound)) in small_instances(20).into_iter().enumerate() {
        let opts = HodgeOptions {
            weight_bound: bound,
        };
        let (e, b) = (t.e_polynomial(), t.betti());
        let mut fast = enumerate_tables(&e, &b, opts);
        fast.sort();
        c.check(fast == brute_force_tables(&e, &b, opts), || {
            format!("random instance {i} disagrees")
        });
        if !bound || t.respects_weights() {
            c.check(fast.contains(&t), || {
                format!("random instance {i} misses its own table")
            });
        }
    }
    c.finish(6, "Hodge solver", start, None)
}

/// Interpolation round trips and corrupted-count detection.
pub fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let panel: Vec<u64> = block_panel().into_iter().map(u64::from).collect();
    let mut runner = TestRunner::deterministic();
    let coeffs = |max_deg: usize| proptest::collection::vec(-50i128..=50, 1..=max_deg + 1);
    let eval = |poly: &EPolynomial| -> Vec<(u64, i128)> {
        panel
            .iter()
            .map(|&x| (x, poly.eval(x as i128).expect("small")))
            .collect()
    };

    for i in 0..50 {
        let poly = EPolynomial::new(coeffs(8).new_tree(&mut runner).expect("strategy").current());
        match fit_and_check(&eval(&poly), 8) {
            Ok(fit) => c.check(
                fit.is_exact() && fit.polynomial.as_ref() == Some(&poly),
                || format!("round trip {i}: {poly} came back as {:?}", fit.polynomial),
            ),
            Err(e) => c.check(false, || format!("round trip {i}: {e}")),
        }
    }
    for i in 0..50 {
        let poly = EPolynomial::new(coeffs(6).new_tree(&mut runner).expect("strategy").current());
        let mut points = eval(&poly);
        let at = (0u64..panel.len() as u64)
            .new_tree(&mut runner)
            .expect("strategy")
            .current() as usize;
        let delta = (1i128..=5)
            .new_tree(&mut runner)
            .expect("strategy")
            .current();
        points[at].1 += delta;
        match fit_and_check(&points, 6) {
            Ok(fit) => {
                c.check(fit.status == FitStatus::Inconsistent, || {
                    format!("corruption {i}: status {:?}", fit.status)
                });
                c.check(fit.suspects == [panel[at]], || {
                    format!(
                        "corruption {i} at p={}: suspects {:?}",
                        panel[at], fit.suspects
                    )
                });
            }
            Err(e) => c.check(false, || format!("corruption {i}: {e}")),
        }
    }
    c.finish(7, "interpolation", start, None)
}

pub fn all() -> Vec<Outcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
    ]
}
