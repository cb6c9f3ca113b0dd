//! Conjugacy classes of SL(2, F_p).
//!
//! Two notions live here. *Rational* classes are SL(2, F_p)-orbits, labelled
//! by [`ClassLabel`]; there are `p + 4` of them. *Geometric* classes
//! ([`GeometricClassSpec`]) are the point sets `W0 .. W4` of the complex
//! picture, decided purely by trace and centrality, so each unipotent geometric
//! class is the union of two rational classes.
//!
//! The unipotent square-class detail is the class of `s` for an element
//! conjugate to `[[1, s], [0, 1]]` (or `-[[1, -s], [0, 1]]`, so that `J-`
//! anchors the square class of trace -2). It is computed from
//! `-det(v, (M ∓ Id) v)`, with `v = e1` when that vector is not fixed and
//! `v = e2` otherwise.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{inv_mod, legendre, Prime, SquareClass};
use crate::sl2::{enumerate_sl2_bounded, Sl2Element, DEFAULT_ENUMERATION_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    CentralPlus,
    CentralMinus,
    UnipotentPlus,
    UnipotentMinus,
    SplitRegular,
    NonsplitRegular,
}

/// Rational conjugacy class of an element of SL(2, F_p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassLabel {
    CentralPlus,
    CentralMinus,
    UnipotentPlus(SquareClass),
    UnipotentMinus(SquareClass),
    SplitRegular { trace: u32 },
    NonsplitRegular { trace: u32 },
}

impl ClassLabel {
    pub fn kind(&self) -> ClassKind {
        match self {
            ClassLabel::CentralPlus => ClassKind::CentralPlus,
            ClassLabel::CentralMinus => ClassKind::CentralMinus,
            ClassLabel::UnipotentPlus(_) => ClassKind::UnipotentPlus,
            ClassLabel::UnipotentMinus(_) => ClassKind::UnipotentMinus,
            ClassLabel::SplitRegular { .. } => ClassKind::SplitRegular,
            ClassLabel::NonsplitRegular { .. } => ClassKind::NonsplitRegular,
        }
    }

    /// Order of the centralizer of any member.
    pub fn centralizer_order(&self, prime: Prime) -> u64 {
        let p = prime.get() as u64;
        match self.kind() {
            ClassKind::CentralPlus | ClassKind::CentralMinus => prime.sl2_order(),
            ClassKind::UnipotentPlus | ClassKind::UnipotentMinus => 2 * p,
            ClassKind::SplitRegular => p - 1,
            ClassKind::NonsplitRegular => p + 1,
        }
    }

    pub fn orbit_size(&self, prime: Prime) -> u64 {
        prime.sl2_order() / self.centralizer_order(prime)
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sq = |s: &SquareClass| match s {
            SquareClass::Square => "sq",
            SquareClass::NonSquare => "nsq",
        };
        match self {
            ClassLabel::CentralPlus => write!(f, "central+"),
            ClassLabel::CentralMinus => write!(f, "central-"),
            ClassLabel::UnipotentPlus(s) => write!(f, "unipotent+[{}]", sq(s)),
            ClassLabel::UnipotentMinus(s) => write!(f, "unipotent-[{}]", sq(s)),
            ClassLabel::SplitRegular { trace } => write!(f, "split[tr={trace}]"),
            ClassLabel::NonsplitRegular { trace } => write!(f, "nonsplit[tr={trace}]"),
        }
    }
}

/// Square class of `s` for a nontrivial nilpotent `n` conjugate to `s·E12`.
fn nilpotent_square_class(n: [u32; 4], p: u32) -> SquareClass {
    // det(e1, n e1) = n21; det(e2, n e2) = -n12.
    let det = if n[2] != 0 { n[2] } else { (p - n[1]) % p };
    legendre((p - det) % p, p)
}

/// Rational class label; constant on SL(2, F_p)-orbits.
pub fn rational_class_of(m: &Sl2Element) -> ClassLabel {
    let p = m.modulus();
    let t = m.trace();
    let [a, b, c, d] = m.entries();
    if t == 2 % p {
        if m.is_identity() {
            return ClassLabel::CentralPlus;
        }
        let n = [(a + p - 1) % p, b, c, (d + p - 1) % p];
        return ClassLabel::UnipotentPlus(nilpotent_square_class(n, p));
    }
    if t == p - 2 {
        if m.is_minus_identity() {
            return ClassLabel::CentralMinus;
        }
        let n = [(a + 1) % p, b, c, (d + 1) % p];
        return ClassLabel::UnipotentMinus(nilpotent_square_class(n, p));
    }
    let disc = ((t as u64 * t as u64 + 4 * p as u64 - 4) % p as u64) as u32;
    match legendre(disc, p) {
        SquareClass::Square => ClassLabel::SplitRegular { trace: t },
        SquareClass::NonSquare => ClassLabel::NonsplitRegular { trace: t },
    }
}

/// `|{g : gM = Mg}|`, from the class type.
pub fn centralizer_order(m: &Sl2Element) -> u64 {
    rational_class_of(m).centralizer_order(m.prime())
}

/// Per-prime index of the `p + 4` rational classes.
///
/// Layout: central+, central-, unipotent+ (square, non-square), unipotent-
/// (square, non-square), then one slot per trace `t ∉ {2, -2}` in increasing
/// order of `t`.
#[derive(Debug, Clone)]
pub struct ClassTable {
    prime: Prime,
    labels: Vec<ClassLabel>,
    representatives: Vec<Sl2Element>,
    trace_slot: Vec<u32>,
    is_square: Vec<bool>,
}

impl ClassTable {
    pub fn new(prime: Prime) -> Self {
        let p = prime.get();
        let mut is_square = vec![false; p as usize];
        for x in 1..p as u64 {
            is_square[(x * x % p as u64) as usize] = true;
        }
        let eps = prime.least_nonresidue();
        let mut labels = vec![
            ClassLabel::CentralPlus,
            ClassLabel::CentralMinus,
            ClassLabel::UnipotentPlus(SquareClass::Square),
            ClassLabel::UnipotentPlus(SquareClass::NonSquare),
            ClassLabel::UnipotentMinus(SquareClass::Square),
            ClassLabel::UnipotentMinus(SquareClass::NonSquare),
        ];
        let mut representatives = vec![
            Sl2Element::identity(prime),
            Sl2Element::minus_identity(prime),
            Sl2Element::j_plus(prime),
            Sl2Element::upper_unipotent(prime, eps),
            Sl2Element::j_minus(prime),
            Sl2Element::from_raw([p - 1, eps, 0, p - 1], p),
        ];
        let mut trace_slot = vec![u32::MAX; p as usize];
        for t in 0..p {
            if t == 2 % p || t == p - 2 {
                continue;
            }
            trace_slot[t as usize] = labels.len() as u32;
            let disc = ((t as u64 * t as u64 + 4 * p as u64 - 4) % p as u64) as usize;
            if is_square[disc] {
                labels.push(ClassLabel::SplitRegular { trace: t });
                representatives.push(split_representative(prime, t));
            } else {
                labels.push(ClassLabel::NonsplitRegular { trace: t });
                // Companion matrix of x^2 - t x + 1.
                representatives.push(Sl2Element::from_raw([0, p - 1, 1, t], p));
            }
        }
        debug_assert_eq!(labels.len() as u32, p + 4);
        ClassTable {
            prime,
            labels,
            representatives,
            trace_slot,
            is_square,
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> ClassLabel {
        self.labels[index]
    }

    pub fn representative(&self, index: usize) -> &Sl2Element {
        &self.representatives[index]
    }

    pub fn representatives(&self) -> &[Sl2Element] {
        &self.representatives
    }

    pub fn index_of(&self, label: &ClassLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn orbit_size(&self, index: usize) -> u64 {
        self.labels[index].orbit_size(self.prime)
    }

    pub fn centralizer_order(&self, index: usize) -> u64 {
        self.labels[index].centralizer_order(self.prime)
    }

    #[inline]
    fn nilpotent_slot(&self, n: [u32; 4], base: usize) -> usize {
        let p = self.prime.get();
        let det = if n[2] != 0 { n[2] } else { (p - n[1]) % p };
        if self.is_square[((p - det) % p) as usize] {
            base
        } else {
            base + 1
        }
    }

    /// Fast equivalent of `index_of(&rational_class_of(m))`.
    #[inline]
    pub fn class_index(&self, m: &Sl2Element) -> usize {
        let p = self.prime.get();
        let t = m.trace();
        let slot = self.trace_slot[t as usize];
        if slot != u32::MAX {
            return slot as usize;
        }
        let [a, b, c, d] = m.entries();
        if t == 2 % p {
            if b == 0 && c == 0 {
                0
            } else {
                self.nilpotent_slot([(a + p - 1) % p, b, c, (d + p - 1) % p], 2)
            }
        } else if b == 0 && c == 0 {
            1
        } else {
            self.nilpotent_slot([(a + 1) % p, b, c, (d + 1) % p], 4)
        }
    }
}

fn split_representative(prime: Prime, trace: u32) -> Sl2Element {
    let p = prime.get();
    let lambda = (2..p - 1)
        .find(|&l| (l + inv_mod(l, p).unwrap_or(0)) % p == trace)
        .expect("split traces have a diagonal representative");
    Sl2Element::xi(prime, lambda).expect("lambda is nonzero")
}

/// The geometric point sets `W0 .. W4` of SL(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GeometricClassSpec {
    /// `{Id}`.
    W0,
    /// `{-Id}`.
    W1,
    /// Trace 2, not the identity.
    W2,
    /// Trace -2, not minus the identity.
    W3,
    /// Trace `λ + λ^{-1}`; `λ` and `λ^{-1}` give the same set.
    W4 { lambda: u32 },
    /// Trace different from ±2.
    W4Any,
}

impl GeometricClassSpec {
    /// Checks the parameter against a prime.
    pub fn validate(&self, prime: Prime) -> Result<()> {
        if let GeometricClassSpec::W4 { lambda } = *self {
            check_lambda(lambda, prime)?;
        }
        Ok(())
    }

    /// Membership by trace and centrality.
    #[inline]
    pub fn contains(&self, m: &Sl2Element) -> bool {
        let p = m.modulus();
        let t = m.trace();
        match *self {
            GeometricClassSpec::W0 => m.is_identity(),
            GeometricClassSpec::W1 => m.is_minus_identity(),
            GeometricClassSpec::W2 => t == 2 % p && !m.is_identity(),
            GeometricClassSpec::W3 => t == p - 2 && !m.is_minus_identity(),
            GeometricClassSpec::W4 { lambda } => t == lambda_trace(lambda, p),
            GeometricClassSpec::W4Any => t != 2 % p && t != p - 2,
        }
    }

    /// `|W(F_p)|` from the closed forms.
    pub fn expected_size(&self, prime: Prime) -> u64 {
        let p = prime.get() as u64;
        match self {
            GeometricClassSpec::W0 | GeometricClassSpec::W1 => 1,
            GeometricClassSpec::W2 | GeometricClassSpec::W3 => p * p - 1,
            GeometricClassSpec::W4 { .. } => p * p + p,
            GeometricClassSpec::W4Any => p * p * p - 2 * p * p - p,
        }
    }

    /// `-W`, as a point set: `-W2 = W3`, `-W4(λ) = W4(-λ)`.
    pub fn negated(&self, prime: Prime) -> Self {
        let p = prime.get();
        match *self {
            GeometricClassSpec::W0 => GeometricClassSpec::W1,
            GeometricClassSpec::W1 => GeometricClassSpec::W0,
            GeometricClassSpec::W2 => GeometricClassSpec::W3,
            GeometricClassSpec::W3 => GeometricClassSpec::W2,
            GeometricClassSpec::W4 { lambda } => GeometricClassSpec::W4 {
                lambda: (p - lambda % p) % p,
            },
            GeometricClassSpec::W4Any => GeometricClassSpec::W4Any,
        }
    }
}

impl fmt::Display for GeometricClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometricClassSpec::W0 => write!(f, "W0"),
            GeometricClassSpec::W1 => write!(f, "W1"),
            GeometricClassSpec::W2 => write!(f, "W2"),
            GeometricClassSpec::W3 => write!(f, "W3"),
            GeometricClassSpec::W4 { lambda } => write!(f, "W4({lambda})"),
            GeometricClassSpec::W4Any => write!(f, "W4"),
        }
    }
}

pub(crate) fn lambda_trace(lambda: u32, p: u32) -> u32 {
    let l = lambda % p;
    (l + inv_mod(l, p).unwrap_or(0)) % p
}

/// `λ ∉ {0, 1, -1}` modulo `p`.
pub fn check_lambda(lambda: u32, prime: Prime) -> Result<()> {
    let p = prime.get();
    let l = lambda % p;
    if l == 0 || l == 1 || l == p - 1 {
        return Err(Error::InvalidLambda { lambda, prime: p });
    }
    Ok(())
}

/// Members of a geometric class, in enumeration order.
pub fn geometric_members(p: u32, spec: GeometricClassSpec) -> Result<Vec<Sl2Element>> {
    geometric_members_bounded(p, spec, DEFAULT_ENUMERATION_BOUND)
}

pub fn geometric_members_bounded(
    p: u32,
    spec: GeometricClassSpec,
    bound: u32,
) -> Result<Vec<Sl2Element>> {
    let prime = Prime::new(p)?;
    spec.validate(prime)?;
    Ok(enumerate_sl2_bounded(p, bound)?
        .into_iter()
        .filter(|m| spec.contains(m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::enumerate_sl2;
    use alloc::collections::{BTreeMap, BTreeSet};

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn brute_centralizer(m: &Sl2Element, group: &[Sl2Element]) -> u64 {
        group
            .iter()
            .filter(|g| g.mul_raw(m) == m.mul_raw(g))
            .count() as u64
    }

    fn brute_conjugate(x: &Sl2Element, y: &Sl2Element, group: &[Sl2Element]) -> bool {
        group
            .iter()
            .any(|g| g.mul_raw(x).mul_raw(&g.inverse()) == *y)
    }

    #[test]
    fn label_examples() {
        let p5 = prime(5);
        assert_eq!(
            rational_class_of(&Sl2Element::minus_identity(p5)),
            ClassLabel::CentralMinus
        );
        assert_eq!(
            rational_class_of(&Sl2Element::j_plus(p5)),
            ClassLabel::UnipotentPlus(SquareClass::Square)
        );
        let m = Sl2Element::new(p5, [1, 2, 0, 1]).unwrap();
        assert_eq!(
            rational_class_of(&m),
            ClassLabel::UnipotentPlus(SquareClass::NonSquare)
        );
        let group = enumerate_sl2(5).unwrap();
        assert!(!brute_conjugate(&Sl2Element::j_plus(p5), &m, &group));
    }

    #[test]
    fn anchors_are_square_for_every_prime() {
        for p in [3, 5, 7, 11, 13] {
            let pr = prime(p);
            assert_eq!(
                rational_class_of(&Sl2Element::j_plus(pr)),
                ClassLabel::UnipotentPlus(SquareClass::Square)
            );
            assert_eq!(
                rational_class_of(&Sl2Element::j_minus(pr)),
                ClassLabel::UnipotentMinus(SquareClass::Square)
            );
        }
    }

    #[test]
    fn centralizer_examples() {
        let p5 = prime(5);
        let group = enumerate_sl2(5).unwrap();
        let id = Sl2Element::identity(p5);
        let j = Sl2Element::j_plus(p5);
        let xi = Sl2Element::xi(p5, 2).unwrap();
        assert_eq!(centralizer_order(&id), 120);
        assert_eq!(brute_centralizer(&j, &group), 10);
        assert_eq!(centralizer_order(&j), 10);
        assert_eq!(brute_centralizer(&xi, &group), 4);
        assert_eq!(centralizer_order(&xi), 4);
    }

    #[test]
    fn centralizer_formula_matches_brute_force() {
        for p in [3, 5, 7] {
            let group = enumerate_sl2(p).unwrap();
            for m in &group {
                assert_eq!(centralizer_order(m), brute_centralizer(m, &group), "{m:?}");
            }
        }
    }

    /// Labels agree with exhaustive conjugacy search on every pair of elements.
    #[test]
    fn labels_match_exhaustive_conjugacy() {
        for p in [3, 5, 7] {
            let group = enumerate_sl2(p).unwrap();
            let mut orbits: Vec<Vec<Sl2Element>> = Vec::new();
            let mut seen = BTreeSet::new();
            for m in &group {
                if seen.contains(m) {
                    continue;
                }
                let orbit: BTreeSet<_> = group
                    .iter()
                    .map(|g| g.mul_raw(m).mul_raw(&g.inverse()))
                    .collect();
                seen.extend(orbit.iter().copied());
                orbits.push(orbit.into_iter().collect());
            }
            assert_eq!(orbits.len() as u32, p + 4, "class count at p={p}");
            let mut label_of_orbit = BTreeSet::new();
            for orbit in &orbits {
                let l = rational_class_of(&orbit[0]);
                assert!(orbit.iter().all(|m| rational_class_of(m) == l));
                assert!(label_of_orbit.insert(l), "two orbits share {l} at p={p}");
            }
        }
    }

    #[test]
    fn table_is_consistent() {
        for p in [3, 5, 7, 11, 13] {
            let pr = prime(p);
            let table = ClassTable::new(pr);
            assert_eq!(table.len() as u32, p + 4);
            let group = enumerate_sl2(p).unwrap();
            let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
            for m in &group {
                let idx = table.class_index(m);
                assert_eq!(table.label(idx), rational_class_of(m));
                *sizes.entry(idx).or_default() += 1;
            }
            let mut total = 0;
            for i in 0..table.len() {
                assert_eq!(table.class_index(table.representative(i)), i);
                assert_eq!(
                    sizes[&i],
                    table.orbit_size(i),
                    "orbit {} at p={p}",
                    table.label(i)
                );
                assert_eq!(pr.sl2_order() % table.centralizer_order(i), 0);
                total += table.orbit_size(i);
            }
            assert_eq!(total, pr.sl2_order());
        }
    }

    #[test]
    fn geometric_member_counts() {
        assert_eq!(
            geometric_members(7, GeometricClassSpec::W0).unwrap(),
            [Sl2Element::identity(prime(7))]
        );
        assert_eq!(
            geometric_members(5, GeometricClassSpec::W2).unwrap().len(),
            24
        );
        assert_eq!(
            geometric_members(5, GeometricClassSpec::W4 { lambda: 2 })
                .unwrap()
                .len(),
            30
        );
        for p in [5, 7, 11] {
            let pr = prime(p);
            let mut specs = vec![
                GeometricClassSpec::W0,
                GeometricClassSpec::W1,
                GeometricClassSpec::W2,
                GeometricClassSpec::W3,
                GeometricClassSpec::W4Any,
            ];
            specs.extend(
                pr.admissible_lambdas()
                    .map(|lambda| GeometricClassSpec::W4 { lambda }),
            );
            for s in specs {
                assert_eq!(
                    geometric_members(p, s).unwrap().len() as u64,
                    s.expected_size(pr),
                    "{s} at {p}"
                );
            }
        }
    }

    #[test]
    fn w4_rejects_degenerate_lambda() {
        for bad in [0, 1, 4] {
            assert_eq!(
                geometric_members(5, GeometricClassSpec::W4 { lambda: bad }),
                Err(Error::InvalidLambda {
                    lambda: bad,
                    prime: 5
                })
            );
        }
    }

    #[test]
    fn w4_lambda_and_inverse_coincide() {
        let a = geometric_members(7, GeometricClassSpec::W4 { lambda: 3 }).unwrap();
        let b = geometric_members(7, GeometricClassSpec::W4 { lambda: 5 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn geometric_rational_compatibility() {
        for p in [5, 7, 11] {
            let pr = prime(p);
            let w2: BTreeSet<_> = geometric_members(p, GeometricClassSpec::W2)
                .unwrap()
                .iter()
                .map(rational_class_of)
                .collect();
            assert_eq!(
                w2.into_iter().collect::<Vec<_>>(),
                [
                    ClassLabel::UnipotentPlus(SquareClass::Square),
                    ClassLabel::UnipotentPlus(SquareClass::NonSquare)
                ]
            );
            for lambda in pr.admissible_lambdas() {
                let labels: BTreeSet<_> = geometric_members(p, GeometricClassSpec::W4 { lambda })
                    .unwrap()
                    .iter()
                    .map(rational_class_of)
                    .collect();
                assert_eq!(labels.len(), 1);
                assert_eq!(labels.first().unwrap().kind(), ClassKind::SplitRegular);
            }
        }
    }
}
