use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::classes::{ClassTable, GeometricClassSpec};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::par;
use crate::sl2::{enumerate_sl2_bounded, Sl2Element};

use super::distribution::ClassDistribution;
use super::{brute, probe, thm_p, to_u64, CountMethod, CountRecord, Limits, TargetSpec, ZbarCase};

/// Persistent storage for per-prime class distributions.
///
/// Implementations decide where the data lives; the engine re-validates
/// anything loaded before use.
pub trait DistributionCache {
    fn load(&self, prime: u32) -> Option<ClassDistribution>;
    fn store(&self, distribution: &ClassDistribution);
}

/// Group, class table and commutator distribution for one prime.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    prime: Prime,
    group: Vec<Sl2Element>,
    table: ClassTable,
    distribution: ClassDistribution,
}

impl PrimeContext {
    pub fn new(p: u32, limits: &Limits) -> Result<Self> {
        let prime = Prime::new(p)?;
        let group = enumerate_sl2_bounded(p, limits.enumeration_bound)?;
        let table = ClassTable::new(prime);
        let distribution = ClassDistribution::compute(&table, &group);
        Ok(PrimeContext {
            prime,
            group,
            table,
            distribution,
        })
    }

    /// Builds a context around a previously computed distribution.
    pub fn with_distribution(
        p: u32,
        limits: &Limits,
        distribution: ClassDistribution,
    ) -> Result<Self> {
        let prime = Prime::new(p)?;
        let group = enumerate_sl2_bounded(p, limits.enumeration_bound)?;
        let table = ClassTable::new(prime);
        distribution.validate_against(&table)?;
        Ok(PrimeContext {
            prime,
            group,
            table,
            distribution,
        })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn group(&self) -> &[Sl2Element] {
        &self.group
    }

    pub fn table(&self) -> &ClassTable {
        &self.table
    }

    pub fn distribution(&self) -> &ClassDistribution {
        &self.distribution
    }

    fn check(&self, g: &Sl2Element) -> Result<()> {
        if g.modulus() != self.prime.get() {
            return Err(Error::ModulusMismatch(g.modulus(), self.prime.get()));
        }
        Ok(())
    }

    /// `#{(A, B) : [A,B] = g}`.
    pub fn count_commutator_fiber(&self, g: &Sl2Element) -> Result<u64> {
        self.check(g)?;
        Ok(self.distribution.fiber(self.table.class_index(g)))
    }

    /// `#{(A, B) : [A,B] ∈ W}`.
    pub fn count_xstratum(&self, spec: GeometricClassSpec) -> Result<u64> {
        spec.validate(self.prime)?;
        let total: u128 = (0..self.table.len())
            .filter(|&k| spec.contains(self.table.representative(k)))
            .map(|k| self.table.orbit_size(k) as u128 * self.distribution.fiber(k) as u128)
            .sum();
        to_u64(total, "counting a stratum")
    }

    /// Per class `K`, `#{M ∈ K : pred(M)}`.
    pub fn class_counts<F>(&self, pred: F) -> Vec<u64>
    where
        F: Fn(&Sl2Element) -> bool + Sync + Send,
    {
        par::sum_vec(self.group.len(), self.table.len(), |i, acc| {
            let m = &self.group[i];
            if pred(m) {
                acc[self.table.class_index(m)] += 1;
            }
        })
    }

    /// `#{(A, B, C) : C ∈ W, [A,B] C = T}` as `Σ_K fiber(K) · #{M ∈ K : M^{-1} T ∈ W}`,
    /// with `M = [A,B]` and `C` forced to `M^{-1} T`.
    pub fn count_zbar_with(
        &self,
        target: &Sl2Element,
        constraint: GeometricClassSpec,
    ) -> Result<u64> {
        self.check(target)?;
        constraint.validate(self.prime)?;
        let per_class = self.class_counts(|m| constraint.contains(&m.inverse().mul_raw(target)));
        let total: u128 = per_class
            .iter()
            .enumerate()
            .map(|(k, &n)| n as u128 * self.distribution.fiber(k) as u128)
            .sum();
        to_u64(total, "counting a barred set")
    }

    pub fn count_zbar(&self, case: ZbarCase) -> Result<u64> {
        let target = case.target_matrix(self.prime)?;
        let constraint = case.constraint(self.prime)?;
        self.count_zbar_with(&target, constraint)
    }

    /// `#{C1 ∈ W1 : C1^{-1} g ∈ W2}`.
    pub fn count_pairs(
        &self,
        g: &Sl2Element,
        s1: GeometricClassSpec,
        s2: GeometricClassSpec,
    ) -> u64 {
        self.group
            .iter()
            .filter(|c1| s1.contains(c1) && s2.contains(&c1.inverse().mul_raw(g)))
            .count() as u64
    }

    /// `Σ_K |K| · fiber(K) · N(rep_K^{-1})` with `N(g) = #{(C1, C2) : C1 C2 = g}`.
    pub fn count_z_full(&self, s1: GeometricClassSpec, s2: GeometricClassSpec) -> Result<u64> {
        s1.validate(self.prime)?;
        s2.validate(self.prime)?;
        let members: Vec<Sl2Element> = self
            .group
            .iter()
            .filter(|c| s1.contains(c))
            .copied()
            .collect();
        let mut overflow = false;
        let terms: Vec<u128> = (0..self.table.len())
            .map(|k| {
                let fiber = self.distribution.fiber(k);
                if fiber == 0 {
                    return 0;
                }
                let g = self.table.representative(k).inverse();
                let pairs = par::sum(members.len(), |i| {
                    s2.contains(&members[i].inverse().mul_raw(&g)) as u64
                });
                let v = (self.table.orbit_size(k) as u128)
                    .checked_mul(fiber as u128)
                    .and_then(|v| v.checked_mul(pairs as u128));
                v.unwrap_or_else(|| {
                    overflow = true;
                    0
                })
            })
            .collect();
        if overflow {
            return Err(Error::Overflow("counting a full solution set"));
        }
        to_u64(terms.iter().sum(), "counting a full solution set")
    }

    /// Class-function path for every target except the torus-orbit count,
    /// which has only an enumeration.
    pub fn count_fast(&self, target: &TargetSpec) -> Result<u64> {
        match *target {
            TargetSpec::CommFiber(t) => self.count_commutator_fiber(&t.element(self.prime)?),
            TargetSpec::Xstratum(w) => self.count_xstratum(w),
            TargetSpec::Zbar(case) => self.count_zbar(case),
            TargetSpec::ZFull(a, b) => self.count_z_full(a, b),
            TargetSpec::ThmPFiber { lambda, mu, t2, t1 } => {
                Ok(thm_p::thm_p_fiber(self.prime, &self.group, lambda, mu, t2, t1)?.fiber)
            }
        }
    }

    /// The independent oracle, sharing only the enumerated group.
    pub fn count_brute(&self, target: &TargetSpec, limits: &Limits) -> Result<u64> {
        brute::brute_force_count_in(&self.group, self.prime, target, limits)
    }
}

/// Per-prime context cache plus the counting entry points.
pub struct CountEngine {
    limits: Limits,
    contexts: BTreeMap<u32, PrimeContext>,
    cache: Option<Box<dyn DistributionCache + Send + Sync>>,
}

impl core::fmt::Debug for CountEngine {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("CountEngine")
            .field("limits", &self.limits)
            .field("primes", &self.contexts.keys().collect::<Vec<_>>())
            .field("cache", &self.cache.is_some())
            .finish()
    }
}

impl Default for CountEngine {
    fn default() -> Self {
        Self::new(Limits::default())
    }
}

impl CountEngine {
    pub fn new(limits: Limits) -> Self {
        CountEngine {
            limits,
            contexts: BTreeMap::new(),
            cache: None,
        }
    }

    pub fn with_cache(mut self, cache: Box<dyn DistributionCache + Send + Sync>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Builds (or reuses) the context for `p`, consulting the cache first.
    pub fn context(&mut self, p: u32) -> Result<&PrimeContext> {
        if !self.contexts.contains_key(&p) {
            let ctx = self.build_context(p)?;
            self.contexts.insert(p, ctx);
        }
        Ok(&self.contexts[&p])
    }

    fn build_context(&self, p: u32) -> Result<PrimeContext> {
        Prime::new(p)?;
        if p > self.limits.enumeration_bound {
            return Err(Error::PrimeAboveBound {
                prime: p,
                bound: self.limits.enumeration_bound,
            });
        }
        if let Some(cache) = &self.cache {
            if let Some(d) = cache.load(p) {
                if let Ok(ctx) = PrimeContext::with_distribution(p, &self.limits, d) {
                    return Ok(ctx);
                }
            }
        }
        let ctx = PrimeContext::new(p, &self.limits)?;
        if let Some(cache) = &self.cache {
            cache.store(ctx.distribution());
        }
        Ok(ctx)
    }

    pub fn count_commutator_fiber(&mut self, p: u32, g: &Sl2Element) -> Result<u64> {
        self.context(p)?.count_commutator_fiber(g)
    }

    pub fn count_zbar(&mut self, p: u32, case: ZbarCase) -> Result<u64> {
        self.context(p)?.count_zbar(case)
    }

    pub fn count_z_full(
        &mut self,
        p: u32,
        s1: GeometricClassSpec,
        s2: GeometricClassSpec,
    ) -> Result<u64> {
        self.context(p)?.count_z_full(s1, s2)
    }

    pub fn brute_force_count(&mut self, p: u32, target: &TargetSpec) -> Result<u64> {
        let limits = self.limits;
        brute::check_guard(p, target, &limits)?;
        self.context(p)?.count_brute(target, &limits)
    }

    pub fn monodromy_probe(&mut self, p: u32) -> Result<probe::MonodromyReport> {
        probe::monodromy_probe(self.context(p)?)
    }

    /// One timed count.
    pub fn count(
        &mut self,
        p: u32,
        target: &TargetSpec,
        method: CountMethod,
    ) -> Result<CountRecord> {
        #[cfg(feature = "std")]
        let start = std::time::Instant::now();
        let count = match method {
            CountMethod::Fast => self.context(p)?.count_fast(target)?,
            CountMethod::Brute => self.brute_force_count(p, target)?,
        };
        #[cfg(feature = "std")]
        let elapsed_ms = Some(start.elapsed().as_millis() as u64);
        #[cfg(not(feature = "std"))]
        let elapsed_ms = None;
        let method = match target {
            TargetSpec::ThmPFiber { .. } => CountMethod::Brute,
            _ => method,
        };
        Ok(CountRecord {
            prime: p,
            target: *target,
            count,
            method,
            elapsed_ms,
        })
    }

    /// Drops cached contexts (the on-disk cache is untouched).
    pub fn clear(&mut self) {
        self.contexts.clear();
    }
}
