//! Exact `F_p`-point counts of commutator fibers, strata and the solution sets
//! `{(A, B, C1, C2) : [A,B] C1 C2 = Id}`.
//!
//! The fast path reduces everything to the per-class commutator fiber
//! ([`ClassDistribution`]) and one pass over the group per target. The brute
//! path ([`brute`]) enumerates pairs or tuples directly and serves as the
//! oracle.

mod brute;
mod distribution;
mod engine;
mod probe;
mod thm_p;

use core::fmt;

use serde::{Deserialize, Serialize};

use crate::classes::{check_lambda, GeometricClassSpec};
use crate::error::{Error, Result};
use crate::field::{inv_mod, Prime};
use crate::sl2::{Sl2Element, DEFAULT_ENUMERATION_BOUND};

pub use brute::{
    brute_commutator_fiber, brute_force_count, brute_xstratum, brute_z_full, brute_zbar,
};
pub use distribution::ClassDistribution;
pub use engine::{CountEngine, DistributionCache, PrimeContext};
pub use probe::{monodromy_probe, MonodromyReport};
pub use thm_p::{thm_p_fiber, trace_relation_t1, ThmPFiber};

/// Runtime guards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest prime the engine will enumerate.
    pub enumeration_bound: u32,
    /// Largest prime for brute-force pair enumeration.
    pub brute_pair_limit: u32,
    /// Largest prime for brute-force enumeration over `(A, B, C1)`.
    pub brute_tuple_limit: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
            brute_pair_limit: 13,
            brute_tuple_limit: 7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Fast,
    Brute,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::Fast => "fast",
            CountMethod::Brute => "brute",
        })
    }
}

/// A commutator-fiber target, described independently of the prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FiberTarget {
    Identity,
    MinusIdentity,
    JPlus,
    JMinus,
    /// `diag(λ, λ^{-1})`.
    Xi {
        lambda: u32,
    },
    /// Entries reduced modulo the prime; must have determinant 1 there.
    Matrix {
        entries: [i64; 4],
    },
}

impl FiberTarget {
    pub fn element(&self, prime: Prime) -> Result<Sl2Element> {
        Ok(match *self {
            FiberTarget::Identity => Sl2Element::identity(prime),
            FiberTarget::MinusIdentity => Sl2Element::minus_identity(prime),
            FiberTarget::JPlus => Sl2Element::j_plus(prime),
            FiberTarget::JMinus => Sl2Element::j_minus(prime),
            FiberTarget::Xi { lambda } => {
                check_lambda(lambda, prime)?;
                Sl2Element::xi(prime, lambda)?
            }
            FiberTarget::Matrix { entries } => Sl2Element::new(prime, entries)?,
        })
    }
}

impl fmt::Display for FiberTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberTarget::Identity => write!(f, "Id"),
            FiberTarget::MinusIdentity => write!(f, "-Id"),
            FiberTarget::JPlus => write!(f, "J+"),
            FiberTarget::JMinus => write!(f, "J-"),
            FiberTarget::Xi { lambda } => write!(f, "xi({lambda})"),
            FiberTarget::Matrix {
                entries: [a, b, c, d],
            } => write!(f, "[[{a},{b}],[{c},{d}]]"),
        }
    }
}

/// Barred solution sets `{(A, B, C) : C ∈ W, [A,B] C = T}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ZbarCase {
    /// `W = W2`, `T = J+`.
    Zbar22,
    /// `W = W2`, `T = -J+`.
    Zbar23,
    /// `W = W2`, `T = diag(λ^{-1}, λ)`.
    Zbar24 { lambda: u32 },
    /// `W = W3`, `T = diag(λ^{-1}, λ)`.
    Zbar34 { lambda: u32 },
    /// `W = W4(λ1)`, `T = diag(λ2^{-1}, λ2)`; in the equal regime
    /// `T = diag(λ1, λ1^{-1})`.
    Zbar44 { lambda1: u32, lambda2: u32 },
}

/// How `λ2` sits relative to `λ1` modulo `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZbarRegime {
    /// `λ2 ∉ {±λ1, ±λ1^{-1}}`.
    Generic,
    /// `λ2 ∈ {-λ1, -λ1^{-1}}`.
    Special,
    /// `λ2 ∈ {λ1, λ1^{-1}}`.
    Equal,
}

impl fmt::Display for ZbarRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZbarRegime::Generic => "generic",
            ZbarRegime::Special => "special",
            ZbarRegime::Equal => "equal",
        })
    }
}

/// Classifies `(λ1, λ2)` at `p`; both must be admissible.
pub fn zbar44_regime(lambda1: u32, lambda2: u32, prime: Prime) -> Result<ZbarRegime> {
    check_lambda(lambda1, prime)?;
    check_lambda(lambda2, prime)?;
    let p = prime.get();
    let (l1, l2) = (lambda1 % p, lambda2 % p);
    let inv1 = inv_mod(l1, p).expect("admissible lambdas are units");
    Ok(if l2 == l1 || l2 == inv1 {
        ZbarRegime::Equal
    } else if l2 == p - l1 || l2 == p - inv1 {
        ZbarRegime::Special
    } else {
        ZbarRegime::Generic
    })
}

impl ZbarCase {
    /// The geometric class `C` is constrained to.
    pub fn constraint(&self, prime: Prime) -> Result<GeometricClassSpec> {
        let spec = match *self {
            ZbarCase::Zbar22 | ZbarCase::Zbar23 | ZbarCase::Zbar24 { .. } => GeometricClassSpec::W2,
            ZbarCase::Zbar34 { .. } => GeometricClassSpec::W3,
            ZbarCase::Zbar44 { lambda1, .. } => GeometricClassSpec::W4 {
                lambda: lambda1 % prime.get(),
            },
        };
        spec.validate(prime)?;
        Ok(spec)
    }

    /// The right-hand side `T`.
    pub fn target_matrix(&self, prime: Prime) -> Result<Sl2Element> {
        let p = prime.get();
        let inv_diag = |lambda: u32| -> Result<Sl2Element> {
            check_lambda(lambda, prime)?;
            let l = lambda % p;
            Sl2Element::xi(prime, inv_mod(l, p).expect("admissible lambdas are units"))
        };
        match *self {
            ZbarCase::Zbar22 => Ok(Sl2Element::j_plus(prime)),
            ZbarCase::Zbar23 => Ok(Sl2Element::j_plus(prime).neg()),
            ZbarCase::Zbar24 { lambda } | ZbarCase::Zbar34 { lambda } => inv_diag(lambda),
            ZbarCase::Zbar44 { lambda1, lambda2 } => {
                match zbar44_regime(lambda1, lambda2, prime)? {
                    ZbarRegime::Equal => Sl2Element::xi(prime, lambda1 % p),
                    _ => inv_diag(lambda2),
                }
            }
        }
    }

    /// Regime of a `Zbar44` case at `p`; `None` for the other cases.
    pub fn regime(&self, prime: Prime) -> Result<Option<ZbarRegime>> {
        match *self {
            ZbarCase::Zbar44 { lambda1, lambda2 } => {
                zbar44_regime(lambda1, lambda2, prime).map(Some)
            }
            _ => Ok(None),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ZbarCase::Zbar22 => "zbar22",
            ZbarCase::Zbar23 => "zbar23",
            ZbarCase::Zbar24 { .. } => "zbar24",
            ZbarCase::Zbar34 { .. } => "zbar34",
            ZbarCase::Zbar44 { .. } => "zbar44",
        }
    }
}

impl fmt::Display for ZbarCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZbarCase::Zbar22 | ZbarCase::Zbar23 => f.write_str(self.name()),
            ZbarCase::Zbar24 { lambda } | ZbarCase::Zbar34 { lambda } => {
                write!(f, "{}:{lambda}", self.name())
            }
            ZbarCase::Zbar44 { lambda1, lambda2 } => write!(f, "zbar44:{lambda1},{lambda2}"),
        }
    }
}

/// Everything the engine can count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TargetSpec {
    /// `#{(A, B) : [A,B] = g}`.
    CommFiber(FiberTarget),
    /// `#{(A, B) : [A,B] ∈ W}`.
    Xstratum(GeometricClassSpec),
    Zbar(ZbarCase),
    /// `#{(A, B, C1, C2) : C1 ∈ W, C2 ∈ W', [A,B] C1 C2 = Id}`.
    ZFull(GeometricClassSpec, GeometricClassSpec),
    /// Orbits of `P` under the right diagonal torus with `tr [P, D] = t2`,
    /// `D = diag(λ, λ^{-1})`, and `tr(ξ_μ [P,D]^{-1}) = t1`. When `t1` is
    /// absent it is derived from `t2` by the trace relation.
    ThmPFiber {
        lambda: u32,
        mu: u32,
        t2: u32,
        t1: Option<u32>,
    },
}

impl TargetSpec {
    /// Brute-force enumeration touches pairs (`false`) or triples (`true`).
    pub fn is_tuple_target(&self) -> bool {
        matches!(self, TargetSpec::ZFull(..))
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSpec::CommFiber(t) => write!(f, "fiber:{t}"),
            TargetSpec::Xstratum(w) => write!(f, "xstratum:{w}"),
            TargetSpec::Zbar(c) => write!(f, "{c}"),
            TargetSpec::ZFull(a, b) => write!(f, "zfull:{a},{b}"),
            TargetSpec::ThmPFiber {
                lambda,
                mu,
                t2,
                t1: None,
            } => write!(f, "thmp:{lambda},{mu},{t2}"),
            TargetSpec::ThmPFiber {
                lambda,
                mu,
                t2,
                t1: Some(t1),
            } => {
                write!(f, "thmp:{lambda},{mu},{t2},{t1}")
            }
        }
    }
}

/// One exact count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub prime: u32,
    pub target: TargetSpec,
    pub count: u64,
    pub method: CountMethod,
    /// Wall time in milliseconds; only measured with the `std` feature.
    pub elapsed_ms: Option<u64>,
}

pub(crate) fn to_u64(v: u128, what: &'static str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow(what))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn regimes() {
        assert_eq!(zbar44_regime(2, 2, prime(5)).unwrap(), ZbarRegime::Equal);
        assert_eq!(zbar44_regime(2, 3, prime(5)).unwrap(), ZbarRegime::Equal);
        // -2 = 5 = 3^{-1} modulo 7.
        assert_eq!(zbar44_regime(2, 3, prime(7)).unwrap(), ZbarRegime::Special);
        assert_eq!(zbar44_regime(2, 5, prime(7)).unwrap(), ZbarRegime::Special);
        assert_eq!(zbar44_regime(2, 3, prime(11)).unwrap(), ZbarRegime::Generic);
        assert_eq!(zbar44_regime(2, 9, prime(11)).unwrap(), ZbarRegime::Special);
        assert!(zbar44_regime(2, 6, prime(7)).is_err());
    }

    #[test]
    fn zbar_targets() {
        let p7 = prime(7);
        assert_eq!(
            ZbarCase::Zbar23.target_matrix(p7).unwrap().entries(),
            [6, 6, 0, 6]
        );
        assert_eq!(
            ZbarCase::Zbar24 { lambda: 2 }
                .target_matrix(p7)
                .unwrap()
                .entries(),
            [4, 0, 0, 2]
        );
        let eq = ZbarCase::Zbar44 {
            lambda1: 2,
            lambda2: 2,
        };
        assert_eq!(eq.target_matrix(p7).unwrap().entries(), [2, 0, 0, 4]);
        assert_eq!(
            eq.constraint(p7).unwrap(),
            GeometricClassSpec::W4 { lambda: 2 }
        );
        assert!(ZbarCase::Zbar34 { lambda: 1 }.target_matrix(p7).is_err());
    }

    #[test]
    fn target_display() {
        assert_eq!(
            TargetSpec::CommFiber(FiberTarget::JPlus).to_string(),
            "fiber:J+"
        );
        assert_eq!(
            TargetSpec::ZFull(GeometricClassSpec::W2, GeometricClassSpec::W4 { lambda: 3 })
                .to_string(),
            "zfull:W2,W4(3)"
        );
        assert_eq!(
            TargetSpec::Zbar(ZbarCase::Zbar44 {
                lambda1: 2,
                lambda2: 3
            })
            .to_string(),
            "zbar44:2,3"
        );
    }
}
