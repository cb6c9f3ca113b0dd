use charvar_core::classes::GeometricClassSpec as W;
use charvar_core::count::{brute_force_count, zbar44_regime, PrimeContext};
use charvar_core::{
    CountEngine, CountMethod, Error, FiberTarget, Limits, Prime, TargetSpec, ZbarCase, ZbarRegime,
};

fn lambdas(p: u32) -> Vec<u32> {
    Prime::new(p).unwrap().admissible_lambdas().collect()
}

fn fiber_targets(p: u32) -> Vec<TargetSpec> {
    let mut out: Vec<TargetSpec> = [
        FiberTarget::Identity,
        FiberTarget::MinusIdentity,
        FiberTarget::JPlus,
        FiberTarget::JMinus,
    ]
    .into_iter()
    .map(TargetSpec::CommFiber)
    .collect();
    out.extend(
        lambdas(p)
            .into_iter()
            .map(|lambda| TargetSpec::CommFiber(FiberTarget::Xi { lambda })),
    );
    // a nonsplit element and the other unipotent class
    out.push(TargetSpec::CommFiber(FiberTarget::Matrix {
        entries: [0, -1, 1, 1],
    }));
    out.push(TargetSpec::CommFiber(FiberTarget::Matrix {
        entries: [1, 0, 1, 1],
    }));
    out
}

fn zbar_cases(p: u32) -> Vec<ZbarCase> {
    let mut out = vec![ZbarCase::Zbar22, ZbarCase::Zbar23];
    for l in lambdas(p) {
        out.push(ZbarCase::Zbar24 { lambda: l });
        out.push(ZbarCase::Zbar34 { lambda: l });
        for l2 in lambdas(p) {
            out.push(ZbarCase::Zbar44 {
                lambda1: l,
                lambda2: l2,
            });
        }
    }
    out
}

#[test]
fn commutator_fibers_agree_with_brute_force() {
    let limits = Limits::default();
    for p in [3u32, 5, 7] {
        let ctx = PrimeContext::new(p, &limits).unwrap();
        for t in fiber_targets(p) {
            assert_eq!(
                ctx.count_fast(&t).unwrap(),
                ctx.count_brute(&t, &limits).unwrap(),
                "p={p} {t}"
            );
        }
    }
}

#[test]
fn strata_agree_with_brute_force() {
    let limits = Limits::default();
    for p in [5u32, 7] {
        let ctx = PrimeContext::new(p, &limits).unwrap();
        let mut specs = vec![W::W0, W::W1, W::W2, W::W3, W::W4Any];
        specs.extend(lambdas(p).into_iter().map(|lambda| W::W4 { lambda }));
        for w in specs {
            let t = TargetSpec::Xstratum(w);
            assert_eq!(
                ctx.count_fast(&t).unwrap(),
                ctx.count_brute(&t, &limits).unwrap(),
                "p={p} {t}"
            );
        }
    }
}

#[test]
fn every_barred_case_agrees_at_five_and_seven() {
    let limits = Limits::default();
    for p in [5u32, 7] {
        let ctx = PrimeContext::new(p, &limits).unwrap();
        for case in zbar_cases(p) {
            let t = TargetSpec::Zbar(case);
            assert_eq!(
                ctx.count_fast(&t).unwrap(),
                ctx.count_brute(&t, &limits).unwrap(),
                "p={p} {t}"
            );
        }
    }
}

#[test]
fn generic_regime_agrees_at_eleven() {
    let limits = Limits::default();
    let ctx = PrimeContext::new(11, &limits).unwrap();
    let prime = ctx.prime();
    // one pair of each square class of the product
    for (l1, l2) in [(2u32, 3u32), (2, 7)] {
        assert_eq!(zbar44_regime(l1, l2, prime).unwrap(), ZbarRegime::Generic);
        let t = TargetSpec::Zbar(ZbarCase::Zbar44 {
            lambda1: l1,
            lambda2: l2,
        });
        assert_eq!(
            ctx.count_fast(&t).unwrap(),
            ctx.count_brute(&t, &limits).unwrap()
        );
    }
}

#[test]
fn seven_has_no_generic_pair() {
    // λ, λ^{-1}, -λ, -λ^{-1} exhaust {2, 3, 4, 5}
    let prime = Prime::new(7).unwrap();
    for l1 in lambdas(7) {
        for l2 in lambdas(7) {
            assert_ne!(zbar44_regime(l1, l2, prime).unwrap(), ZbarRegime::Generic);
        }
    }
}

#[test]
fn full_solution_sets_agree_at_five() {
    let limits = Limits::default();
    let ctx = PrimeContext::new(5, &limits).unwrap();
    let specs = [
        W::W0,
        W::W1,
        W::W2,
        W::W3,
        W::W4 { lambda: 2 },
        W::W4 { lambda: 3 },
    ];
    for a in specs {
        for b in specs {
            let t = TargetSpec::ZFull(a, b);
            assert_eq!(
                ctx.count_fast(&t).unwrap(),
                ctx.count_brute(&t, &limits).unwrap(),
                "{t}"
            );
        }
    }
}

#[test]
fn full_solution_sets_agree_at_seven() {
    let limits = Limits::default();
    let ctx = PrimeContext::new(7, &limits).unwrap();
    for (a, b) in [
        (W::W2, W::W3),
        (W::W3, W::W4 { lambda: 3 }),
        (W::W4 { lambda: 2 }, W::W4 { lambda: 3 }),
    ] {
        let t = TargetSpec::ZFull(a, b);
        assert_eq!(
            ctx.count_fast(&t).unwrap(),
            ctx.count_brute(&t, &limits).unwrap(),
            "{t}"
        );
    }
}

#[test]
fn spot_values_at_five() {
    let mut engine = CountEngine::default();
    let mut fast = |t: TargetSpec| engine.count(5, &t, CountMethod::Fast).unwrap().count;
    assert_eq!(fast(TargetSpec::CommFiber(FiberTarget::JPlus)), 60);
    assert_eq!(fast(TargetSpec::CommFiber(FiberTarget::JMinus)), 200);
    assert_eq!(
        fast(TargetSpec::CommFiber(FiberTarget::Xi { lambda: 2 })),
        64
    );
    assert_eq!(fast(TargetSpec::Zbar(ZbarCase::Zbar22)), 3840);
    assert_eq!(fast(TargetSpec::Zbar(ZbarCase::Zbar23)), 2600);
    assert_eq!(
        fast(TargetSpec::Zbar(ZbarCase::Zbar44 {
            lambda1: 2,
            lambda2: 2
        })),
        4544
    );
    assert_eq!(fast(TargetSpec::ZFull(W::W2, W::W3)), 62400);
    assert_eq!(fast(TargetSpec::ZFull(W::W0, W::W0)), 1080);
}

#[test]
fn special_pair_at_seven() {
    let l = Limits::default();
    let t = TargetSpec::Zbar(ZbarCase::Zbar44 {
        lambda1: 2,
        lambda2: 3,
    });
    assert_eq!(brute_force_count(7, &t, &l).unwrap(), 16848);
}

#[test]
fn brute_force_refuses_large_primes() {
    let l = Limits::default();
    let t = TargetSpec::ZFull(W::W2, W::W3);
    assert_eq!(
        brute_force_count(11, &t, &l),
        Err(Error::OracleOutOfRange {
            prime: 11,
            limit: 7
        })
    );
    let mut engine = CountEngine::default();
    assert!(matches!(
        engine.count(17, &TargetSpec::Zbar(ZbarCase::Zbar22), CountMethod::Brute),
        Err(Error::OracleOutOfRange {
            prime: 17,
            limit: 13
        })
    ));
    assert!(engine
        .count(17, &TargetSpec::Zbar(ZbarCase::Zbar22), CountMethod::Fast)
        .is_ok());
}

#[test]
fn parallel_and_sequential_paths_agree() {
    // the fast path partitions the group; the same numbers must come out of a
    // single-thread pool
    let limits = Limits::default();
    let pool = rayon_pool();
    let t = TargetSpec::Zbar(ZbarCase::Zbar24 { lambda: 3 });
    let single = pool.install(|| {
        PrimeContext::new(13, &limits)
            .unwrap()
            .count_fast(&t)
            .unwrap()
    });
    let multi = PrimeContext::new(13, &limits)
        .unwrap()
        .count_fast(&t)
        .unwrap();
    assert_eq!(single, multi);
}

#[cfg(feature = "parallel")]
fn rayon_pool() -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
}

#[cfg(not(feature = "parallel"))]
struct Inline;

#[cfg(not(feature = "parallel"))]
impl Inline {
    fn install<R>(&self, f: impl FnOnce() -> R) -> R {
        f()
    }
}

#[cfg(not(feature = "parallel"))]
fn rayon_pool() -> Inline {
    Inline
}
