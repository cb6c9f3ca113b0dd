//! Direct enumeration with no class-theoretic input.

use alloc::vec::Vec;

use crate::classes::GeometricClassSpec;
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::par;
use crate::sl2::{enumerate_sl2_bounded, Sl2Element};

use super::{thm_p, Limits, TargetSpec};

/// `#{(A, B) : [A,B] = g}` over all pairs.
pub fn brute_commutator_fiber(group: &[Sl2Element], g: &Sl2Element) -> u64 {
    par::sum(group.len(), |i| {
        let a = &group[i];
        group
            .iter()
            .filter(|b| Sl2Element::commutator_raw(a, b) == *g)
            .count() as u64
    })
}

/// `#{(A, B) : [A,B] ∈ W}` over all pairs.
pub fn brute_xstratum(group: &[Sl2Element], spec: GeometricClassSpec) -> u64 {
    par::sum(group.len(), |i| {
        let a = &group[i];
        group
            .iter()
            .filter(|b| spec.contains(&Sl2Element::commutator_raw(a, b)))
            .count() as u64
    })
}

/// `#{(A, B, C) : C ∈ W, [A,B] C = T}` over all pairs, `C` solved from the
/// equation.
pub fn brute_zbar(
    group: &[Sl2Element],
    target: &Sl2Element,
    constraint: GeometricClassSpec,
) -> u64 {
    par::sum(group.len(), |i| {
        let a = &group[i];
        group
            .iter()
            .filter(|b| {
                constraint.contains(&Sl2Element::commutator_raw(a, b).inverse().mul_raw(target))
            })
            .count() as u64
    })
}

/// `#{(A, B, C1, C2) : C1 ∈ W, C2 ∈ W', [A,B] C1 C2 = Id}` over all
/// `(A, B, C1)`, `C2` solved from the equation.
pub fn brute_z_full(group: &[Sl2Element], s1: GeometricClassSpec, s2: GeometricClassSpec) -> u64 {
    let members: Vec<&Sl2Element> = group.iter().filter(|c| s1.contains(c)).collect();
    par::sum(group.len(), |i| {
        let a = &group[i];
        let mut n = 0;
        for b in group {
            let comm = Sl2Element::commutator_raw(a, b);
            for c1 in &members {
                if s2.contains(&comm.mul_raw(c1).inverse()) {
                    n += 1;
                }
            }
        }
        n
    })
}

pub(crate) fn check_guard(p: u32, target: &TargetSpec, limits: &Limits) -> Result<()> {
    let limit = if target.is_tuple_target() {
        limits.brute_tuple_limit
    } else {
        limits.brute_pair_limit
    };
    if p > limit {
        return Err(Error::OracleOutOfRange { prime: p, limit });
    }
    Ok(())
}

pub(crate) fn brute_force_count_in(
    group: &[Sl2Element],
    prime: Prime,
    target: &TargetSpec,
    limits: &Limits,
) -> Result<u64> {
    check_guard(prime.get(), target, limits)?;
    Ok(match *target {
        TargetSpec::CommFiber(t) => brute_commutator_fiber(group, &t.element(prime)?),
        TargetSpec::Xstratum(w) => {
            w.validate(prime)?;
            brute_xstratum(group, w)
        }
        TargetSpec::Zbar(case) => {
            brute_zbar(group, &case.target_matrix(prime)?, case.constraint(prime)?)
        }
        TargetSpec::ZFull(a, b) => {
            a.validate(prime)?;
            b.validate(prime)?;
            brute_z_full(group, a, b)
        }
        TargetSpec::ThmPFiber { lambda, mu, t2, t1 } => {
            thm_p::thm_p_fiber(prime, group, lambda, mu, t2, t1)?.fiber
        }
    })
}

/// Brute-force count with its own enumeration; refuses primes above the
/// oracle guards with [`Error::OracleOutOfRange`].
pub fn brute_force_count(p: u32, target: &TargetSpec, limits: &Limits) -> Result<u64> {
    let prime = Prime::new(p)?;
    check_guard(p, target, limits)?;
    let group = enumerate_sl2_bounded(p, limits.enumeration_bound)?;
    brute_force_count_in(&group, prime, target, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{FiberTarget, ZbarCase};

    #[test]
    fn spot_values() {
        let l = Limits::default();
        let id = TargetSpec::CommFiber(FiberTarget::Identity);
        assert_eq!(brute_force_count(3, &id, &l).unwrap(), 168);
        assert_eq!(
            brute_force_count(3, &TargetSpec::CommFiber(FiberTarget::JPlus), &l).unwrap(),
            0
        );
        assert_eq!(brute_force_count(5, &id, &l).unwrap(), 1080);
        assert_eq!(
            brute_force_count(5, &TargetSpec::Zbar(ZbarCase::Zbar22), &l).unwrap(),
            3840
        );
    }

    #[test]
    fn guards() {
        let l = Limits::default();
        let full = TargetSpec::ZFull(GeometricClassSpec::W2, GeometricClassSpec::W3);
        assert_eq!(
            brute_force_count(11, &full, &l),
            Err(Error::OracleOutOfRange {
                prime: 11,
                limit: 7
            })
        );
        let pair = TargetSpec::CommFiber(FiberTarget::JPlus);
        assert_eq!(
            brute_force_count(17, &pair, &l),
            Err(Error::OracleOutOfRange {
                prime: 17,
                limit: 13
            })
        );
    }

    #[test]
    fn pair_counts_sum_to_group_order_squared() {
        let group = enumerate_sl2_bounded(5, 101).unwrap();
        let total: u64 = [
            GeometricClassSpec::W0,
            GeometricClassSpec::W1,
            GeometricClassSpec::W2,
            GeometricClassSpec::W3,
            GeometricClassSpec::W4Any,
        ]
        .into_iter()
        .map(|w| brute_xstratum(&group, w))
        .sum();
        assert_eq!(total, 120 * 120);
    }
}
