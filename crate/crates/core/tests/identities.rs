use std::collections::{BTreeMap, HashSet};

use charvar_core::classes::GeometricClassSpec as W;
use charvar_core::count::{zbar44_regime, PrimeContext};
use charvar_core::field::legendre;
use charvar_core::sl2::commutator;
use charvar_core::strata::{derive_case, CaseId};
use charvar_core::{
    FiberTarget, Limits, Prime, Sl2Element, SquareClass, TargetSpec, ZbarCase, ZbarRegime,
};

fn ctx(p: u32) -> PrimeContext {
    PrimeContext::new(p, &Limits::default()).unwrap()
}

fn lambdas(p: u32) -> Vec<u32> {
    Prime::new(p).unwrap().admissible_lambdas().collect()
}

fn specs(p: u32) -> Vec<W> {
    let mut out = vec![W::W0, W::W1, W::W2, W::W3];
    out.extend(lambdas(p).into_iter().map(|lambda| W::W4 { lambda }));
    out
}

fn eval(case: CaseId, p: u32) -> u64 {
    derive_case(case).unwrap().zbar.eval(p as i128).unwrap() as u64
}

/// Tuples of `Z(a, b)`, with `C2` solved from the equation.
fn tuples(ctx: &PrimeContext, a: W, b: W) -> Vec<[Sl2Element; 4]> {
    let group = ctx.group();
    let c1s: Vec<&Sl2Element> = group.iter().filter(|c| a.contains(c)).collect();
    let mut out = Vec::new();
    for x in group {
        for y in group {
            let comm = commutator(x, y).unwrap();
            for &c1 in &c1s {
                let c2 = comm.checked_mul(c1).unwrap().inverse();
                if b.contains(&c2) {
                    out.push([*x, *y, *c1, c2]);
                }
            }
        }
    }
    out
}

#[test]
fn swapping_punctures_is_a_bijection() {
    // (A, B, C1, C2) -> (C1^{-1} A C1, C1^{-1} B C1, C2, C1)
    let ctx = ctx(5);
    for (a, b) in [(W::W2, W::W3), (W::W2, W::W4 { lambda: 2 })] {
        let source = tuples(&ctx, a, b);
        let mut image = HashSet::new();
        for [x, y, c1, c2] in &source {
            let x2 = x.conjugate_by(&c1.inverse()).unwrap();
            let y2 = y.conjugate_by(&c1.inverse()).unwrap();
            let lhs = commutator(&x2, &y2)
                .unwrap()
                .checked_mul(c2)
                .unwrap()
                .checked_mul(c1)
                .unwrap();
            assert!(lhs.is_identity());
            assert!(b.contains(c2) && a.contains(c1));
            assert!(image.insert([x2, y2, *c2, *c1]), "not injective");
        }
        assert_eq!(image.len() as u64, ctx.count_z_full(b, a).unwrap());
        assert_eq!(source.len() as u64, ctx.count_z_full(a, b).unwrap());
    }
}

#[test]
fn symmetry_for_all_pairs() {
    for p in [5u32, 7] {
        let ctx = ctx(p);
        let s = specs(p);
        for &a in &s {
            for &b in &s {
                assert_eq!(
                    ctx.count_z_full(a, b).unwrap(),
                    ctx.count_z_full(b, a).unwrap(),
                    "p={p} {a},{b}"
                );
            }
        }
    }
}

#[test]
fn negation() {
    for p in [5u32, 7, 11] {
        let ctx = ctx(p);
        assert_eq!(
            ctx.count_z_full(W::W3, W::W3).unwrap(),
            ctx.count_z_full(W::W2, W::W2).unwrap()
        );
        for l in lambdas(p) {
            let neg = p - l;
            assert_eq!(
                ctx.count_zbar(ZbarCase::Zbar34 { lambda: l }).unwrap(),
                ctx.count_zbar(ZbarCase::Zbar24 { lambda: neg }).unwrap(),
                "p={p} λ={l}"
            );
            assert_eq!(
                ctx.count_z_full(W::W3, W::W4 { lambda: l }).unwrap(),
                ctx.count_z_full(W::W2, W::W4 { lambda: neg }).unwrap()
            );
        }
    }
}

#[test]
fn fibration_multiplicativity() {
    for p in [5u32, 7, 11] {
        let ctx = ctx(p);
        let (sq, pgl_torus) = (p as u64 * p as u64 - 1, p as u64 * p as u64 + p as u64);
        assert_eq!(
            ctx.count_z_full(W::W2, W::W2).unwrap(),
            sq * ctx.count_zbar(ZbarCase::Zbar22).unwrap()
        );
        assert_eq!(
            ctx.count_z_full(W::W2, W::W3).unwrap(),
            sq * ctx.count_zbar(ZbarCase::Zbar23).unwrap()
        );
        for l in lambdas(p) {
            assert_eq!(
                ctx.count_z_full(W::W2, W::W4 { lambda: l }).unwrap(),
                pgl_torus * ctx.count_zbar(ZbarCase::Zbar24 { lambda: l }).unwrap()
            );
            for l2 in lambdas(p) {
                let full = ctx
                    .count_z_full(W::W4 { lambda: l }, W::W4 { lambda: l2 })
                    .unwrap();
                let bar = ctx
                    .count_zbar(ZbarCase::Zbar44 {
                        lambda1: l,
                        lambda2: l2,
                    })
                    .unwrap();
                assert_eq!(full, pgl_torus * bar, "p={p} ({l},{l2})");
            }
        }
    }
}

#[test]
fn strata_total_is_group_order_squared() {
    for p in [5u32, 7, 11, 13, 17, 19, 23, 29, 31] {
        let ctx = ctx(p);
        let total: u64 = [W::W0, W::W1, W::W2, W::W3, W::W4Any]
            .into_iter()
            .map(|w| ctx.count_xstratum(w).unwrap())
            .sum();
        let g = p as u64 * p as u64 * p as u64 - p as u64;
        assert_eq!(total, g * g, "p={p}");
    }
}

#[test]
fn diagonal_fiber_depends_on_square_class() {
    for p in [5u32, 7, 11, 13, 17] {
        let ctx = ctx(p);
        let q = p as u64;
        for l in lambdas(p) {
            let f = ctx
                .count_fast(&TargetSpec::CommFiber(FiberTarget::Xi { lambda: l }))
                .unwrap();
            let expected = match legendre(l, p) {
                SquareClass::Square => q * q * q + 3 * q * q - 3 * q - 1,
                _ => (q - 1) * (q - 1) * (q - 1),
            };
            assert_eq!(f, expected, "p={p} λ={l}");
        }
    }
}

#[test]
fn barred_counts_depend_on_square_classes() {
    for p in [7u32, 11, 13, 17] {
        let ctx = ctx(p);
        let prime = ctx.prime();
        let mut by_class: BTreeMap<SquareClass, HashSet<u64>> = BTreeMap::new();
        for l in lambdas(p) {
            by_class
                .entry(legendre(l, p))
                .or_default()
                .insert(ctx.count_zbar(ZbarCase::Zbar24 { lambda: l }).unwrap());
        }
        assert_eq!(by_class.len(), 2);
        assert!(by_class.values().all(|v| v.len() == 1));
        let values: HashSet<u64> = by_class.values().flatten().copied().collect();
        assert_eq!(
            values.len(),
            2,
            "p={p}: the two square classes give different counts"
        );

        let mut equal = HashSet::new();
        let mut other: BTreeMap<SquareClass, HashSet<u64>> = BTreeMap::new();
        for l1 in lambdas(p) {
            for l2 in lambdas(p) {
                let n = ctx
                    .count_zbar(ZbarCase::Zbar44 {
                        lambda1: l1,
                        lambda2: l2,
                    })
                    .unwrap();
                match zbar44_regime(l1, l2, prime).unwrap() {
                    ZbarRegime::Equal => {
                        equal.insert(n);
                    }
                    _ => {
                        let prod = (l1 as u64 * l2 as u64 % p as u64) as u32;
                        other.entry(legendre(prod, p)).or_default().insert(n);
                    }
                }
            }
        }
        assert_eq!(equal.len(), 1);
        assert_eq!(
            equal.into_iter().next().unwrap(),
            eval(CaseId::XiXiEqual, p)
        );
        assert!(other.values().all(|v| v.len() == 1), "p={p}");
        if let Some(sq) = other.get(&SquareClass::Square) {
            assert_eq!(
                *sq.iter().next().unwrap(),
                eval(CaseId::XiXiGeneric, p),
                "p={p}"
            );
        }
    }
}

#[test]
fn barred_counts_against_stratum_sums() {
    for p in [5u32, 7, 11, 13, 17, 19] {
        let ctx = ctx(p);
        assert_eq!(
            ctx.count_zbar(ZbarCase::Zbar22).unwrap(),
            eval(CaseId::JPlusJPlus, p),
            "p={p}"
        );
        let z23 = ctx.count_zbar(ZbarCase::Zbar23).unwrap();
        assert_eq!(z23 == eval(CaseId::JPlusJMinus, p), p % 4 == 1, "p={p}");
    }
}
