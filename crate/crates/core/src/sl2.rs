//! Determinant-one 2×2 matrices over `F_p`.
//!
//! Elements are stored as four residues plus the modulus. Enumeration walks
//! `(m11, m12, m21)` in row-major order and solves for `m22` whenever
//! `m11 != 0`; when `m11 == 0` the determinant fixes `m21 = -1/m12` and `m22`
//! runs freely.

use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{inv_mod, FieldElement, Prime};

/// Largest prime the engine will enumerate unless configured otherwise.
pub const DEFAULT_ENUMERATION_BOUND: u32 = 101;

/// `[[m11, m12], [m21, m22]]` over `F_p`, determinant one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sl2Element {
    m: [u32; 4],
    p: u32,
}

impl Sl2Element {
    /// Validates entries (reduced mod p) and the determinant.
    pub fn new(prime: Prime, entries: [i64; 4]) -> Result<Self> {
        let p = prime.get();
        let m = entries.map(|e| e.rem_euclid(p as i64) as u32);
        let el = Sl2Element { m, p };
        if el.det() != 1 % p {
            return Err(Error::NotInSl2 {
                entries: m,
                prime: p,
            });
        }
        Ok(el)
    }

    #[inline]
    pub(crate) fn from_raw(m: [u32; 4], p: u32) -> Self {
        debug_assert_eq!(Sl2Element { m, p }.det(), 1);
        Sl2Element { m, p }
    }

    pub fn identity(prime: Prime) -> Self {
        Sl2Element {
            m: [1, 0, 0, 1],
            p: prime.get(),
        }
    }

    pub fn minus_identity(prime: Prime) -> Self {
        let p = prime.get();
        Sl2Element {
            m: [p - 1, 0, 0, p - 1],
            p,
        }
    }

    /// `J+ = [[1, 1], [0, 1]]`.
    pub fn j_plus(prime: Prime) -> Self {
        Sl2Element {
            m: [1, 1, 0, 1],
            p: prime.get(),
        }
    }

    /// `J- = [[-1, 1], [0, -1]]`.
    pub fn j_minus(prime: Prime) -> Self {
        let p = prime.get();
        Sl2Element {
            m: [p - 1, 1, 0, p - 1],
            p,
        }
    }

    /// `[[1, s], [0, 1]]`.
    pub fn upper_unipotent(prime: Prime, s: u32) -> Self {
        Sl2Element {
            m: [1, s % prime.get(), 0, 1],
            p: prime.get(),
        }
    }

    /// `ξ_λ = diag(λ, λ^{-1})`.
    pub fn xi(prime: Prime, lambda: u32) -> Result<Self> {
        let p = prime.get();
        let l = lambda % p;
        let inv = inv_mod(l, p).ok_or(Error::ZeroInverse(p))?;
        Ok(Sl2Element {
            m: [l, 0, 0, inv],
            p,
        })
    }

    /// `diag(a, a^{-1})` from a field element.
    pub fn diag(a: FieldElement) -> Result<Self> {
        Self::xi(a.modulus(), a.value())
    }

    #[inline]
    pub fn entries(&self) -> [u32; 4] {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> FieldElement {
        FieldElement::new(self.m[2 * row + col] as u64, self.prime())
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn prime(&self) -> Prime {
        Prime::new(self.p).expect("elements carry a validated prime")
    }

    #[inline]
    pub fn trace(&self) -> u32 {
        (self.m[0] + self.m[3]) % self.p
    }

    fn det(&self) -> u32 {
        let p = self.p as u64;
        let [a, b, c, d] = self.m.map(|x| x as u64);
        ((a * d % p + p - b * c % p) % p) as u32
    }

    pub fn is_identity(&self) -> bool {
        self.m == [1, 0, 0, 1]
    }

    pub fn is_minus_identity(&self) -> bool {
        let q = self.p - 1;
        self.m == [q, 0, 0, q]
    }

    pub fn is_central(&self) -> bool {
        self.m[1] == 0 && self.m[2] == 0 && self.m[0] == self.m[3]
    }

    /// Product without modulus check.
    #[inline]
    pub(crate) fn mul_raw(&self, rhs: &Self) -> Self {
        let p = self.p as u64;
        let [a, b, c, d] = self.m.map(|x| x as u64);
        let [e, f, g, h] = rhs.m.map(|x| x as u64);
        Sl2Element {
            m: [
                ((a * e + b * g) % p) as u32,
                ((a * f + b * h) % p) as u32,
                ((c * e + d * g) % p) as u32,
                ((c * f + d * h) % p) as u32,
            ],
            p: self.p,
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.p != rhs.p {
            return Err(Error::ModulusMismatch(self.p, rhs.p));
        }
        Ok(self.mul_raw(rhs))
    }

    /// The adjugate, which is the inverse in SL(2).
    #[inline]
    pub fn inverse(&self) -> Self {
        let p = self.p;
        let [a, b, c, d] = self.m;
        Sl2Element {
            m: [d, (p - b) % p, (p - c) % p, a],
            p,
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Sl2Element {
            m: self.m.map(|x| (p - x) % p),
            p,
        }
    }

    /// `g M g^{-1}`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        Ok(g.checked_mul(self)?.mul_raw(&g.inverse()))
    }

    /// `A B A^{-1} B^{-1}` without the modulus check.
    #[inline]
    pub(crate) fn commutator_raw(a: &Self, b: &Self) -> Self {
        a.mul_raw(b).mul_raw(&a.inverse().mul_raw(&b.inverse()))
    }
}

impl core::ops::Mul for Sl2Element {
    type Output = Sl2Element;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        self.mul_raw(&rhs)
    }
}

impl fmt::Debug for Sl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]] mod {}", self.p)
    }
}

impl fmt::Display for Sl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `[A, B] = A B A^{-1} B^{-1}`.
pub fn commutator(a: &Sl2Element, b: &Sl2Element) -> Result<Sl2Element> {
    if a.p != b.p {
        return Err(Error::ModulusMismatch(a.p, b.p));
    }
    Ok(Sl2Element::commutator_raw(a, b))
}

fn check_bound(p: u32, bound: u32) -> Result<Prime> {
    let prime = Prime::new(p)?;
    if p > bound {
        return Err(Error::PrimeAboveBound { prime: p, bound });
    }
    Ok(prime)
}

/// All of SL(2, F_p) in the canonical order, subject to the default bound.
pub fn enumerate_sl2(p: u32) -> Result<Vec<Sl2Element>> {
    enumerate_sl2_bounded(p, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_sl2_bounded(p: u32, bound: u32) -> Result<Vec<Sl2Element>> {
    let prime = check_bound(p, bound)?;
    let mut out = Vec::with_capacity(prime.sl2_order() as usize);
    out.extend(Sl2Iter::new(prime));
    Ok(out)
}

/// Streaming form of [`enumerate_sl2`]; no bound is applied.
#[derive(Debug, Clone)]
pub struct Sl2Iter {
    p: u32,
    m11: u32,
    m12: u32,
    m21: u32,
    m22: u32,
    inverses: Vec<u32>,
    done: bool,
}

impl Sl2Iter {
    pub fn new(prime: Prime) -> Self {
        let p = prime.get();
        let inverses = (0..p).map(|a| inv_mod(a, p).unwrap_or(0)).collect();
        Sl2Iter {
            p,
            m11: 0,
            m12: 0,
            m21: 0,
            m22: 0,
            inverses,
            done: false,
        }
    }

    fn advance_prefix(&mut self) {
        self.m22 = 0;
        self.m21 += 1;
        if self.m21 == self.p {
            self.m21 = 0;
            self.m12 += 1;
            if self.m12 == self.p {
                self.m12 = 0;
                self.m11 += 1;
                if self.m11 == self.p {
                    self.done = true;
                }
            }
        }
    }
}

impl Iterator for Sl2Iter {
    type Item = Sl2Element;

    fn next(&mut self) -> Option<Sl2Element> {
        let p = self.p as u64;
        while !self.done {
            let (a, b, c) = (self.m11, self.m12, self.m21);
            if a != 0 {
                let d =
                    ((1 + b as u64 * c as u64) % p * self.inverses[a as usize] as u64 % p) as u32;
                self.advance_prefix();
                return Some(Sl2Element {
                    m: [a, b, c, d],
                    p: self.p,
                });
            }
            // m11 = 0: need -m12 * m21 = 1.
            if b != 0 && (b as u64 * c as u64) % p == p - 1 {
                let d = self.m22;
                self.m22 += 1;
                if self.m22 == self.p {
                    self.advance_prefix();
                }
                return Some(Sl2Element {
                    m: [0, b, c, d],
                    p: self.p,
                });
            }
            self.advance_prefix();
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    /// Filters all p^4 matrices by det = 1.
    fn det_filter(p: u32) -> Vec<[u32; 4]> {
        let mut v = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if (a * d + p * p - b * c) % p == 1 {
                            v.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        v
    }

    #[test]
    fn enumeration_matches_det_filter() {
        for p in [3u32, 5, 7] {
            let els = enumerate_sl2(p).unwrap();
            let oracle = det_filter(p);
            assert_eq!(els.len(), oracle.len());
            assert_eq!(els.len() as u64, prime(p).sl2_order());
            let got: BTreeSet<_> = els.iter().map(|e| e.entries()).collect();
            assert_eq!(got.len(), els.len(), "duplicates at p={p}");
            assert_eq!(got, oracle.into_iter().collect());
            assert!(els.iter().any(|e| e.is_identity()));
        }
        assert_eq!(enumerate_sl2(3).unwrap().len(), 24);
        assert_eq!(enumerate_sl2(5).unwrap().len(), 120);
    }

    #[test]
    fn enumeration_is_row_major() {
        let els = enumerate_sl2(5).unwrap();
        let keys: Vec<_> = els.iter().map(|e| e.entries()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn enumeration_rejects_bad_primes() {
        assert_eq!(enumerate_sl2(4), Err(Error::NotOddPrime(4)));
        assert_eq!(enumerate_sl2(1), Err(Error::NotOddPrime(1)));
        assert_eq!(enumerate_sl2(2), Err(Error::NotOddPrime(2)));
        assert_eq!(
            enumerate_sl2_bounded(13, 11),
            Err(Error::PrimeAboveBound {
                prime: 13,
                bound: 11
            })
        );
    }

    #[test]
    fn commutator_examples() {
        let p = prime(5);
        let els = enumerate_sl2(5).unwrap();
        let id = Sl2Element::identity(p);
        for b in &els {
            assert_eq!(commutator(&id, b).unwrap(), id);
            assert_eq!(commutator(b, b).unwrap(), id);
        }
        let a = Sl2Element::new(p, [1, 1, 0, 1]).unwrap();
        let b = Sl2Element::new(p, [1, 0, 1, 1]).unwrap();
        // Four explicit products: AB = [[2,1],[1,1]], A^{-1}B^{-1} = [[1,-1],[0,1]][[1,0],[-1,1]] = [[2,-1],[-1,1]].
        // [[2,1],[1,1]] * [[2,4],[4,1]] = [[8,9],[6,5]] = [[3,4],[1,0]] mod 5.
        assert_eq!(commutator(&a, &b).unwrap().entries(), [3, 4, 1, 0]);
    }

    #[test]
    fn commutator_rejects_mixed_primes() {
        let a = Sl2Element::identity(prime(5));
        let b = Sl2Element::identity(prime(7));
        assert_eq!(commutator(&a, &b), Err(Error::ModulusMismatch(5, 7)));
    }

    #[test]
    fn new_checks_determinant() {
        assert!(Sl2Element::new(prime(5), [1, 1, 1, 1]).is_err());
        assert!(Sl2Element::new(prime(5), [2, 0, 0, 3]).is_ok());
        assert!(Sl2Element::xi(prime(5), 0).is_err());
    }

    #[test]
    fn inverse_is_group_inverse() {
        for e in enumerate_sl2(7).unwrap() {
            assert!(e.mul_raw(&e.inverse()).is_identity());
        }
    }
}
