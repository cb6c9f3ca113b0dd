//! Prime-field scalars.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd prime modulus, at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p as u64) {
            return Err(Error::NotOddPrime(p as u64));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `|SL(2, F_p)| = p^3 - p`.
    pub fn sl2_order(self) -> u64 {
        let p = self.0 as u64;
        p * p * p - p
    }

    /// The smallest quadratic non-residue.
    pub fn least_nonresidue(self) -> u32 {
        (2..self.0)
            .find(|&a| legendre(a, self.0) == SquareClass::NonSquare)
            .expect("odd primes have non-residues")
    }

    /// Residues `λ` with `λ ∉ {0, 1, -1}`, in increasing order.
    pub fn admissible_lambdas(self) -> impl Iterator<Item = u32> {
        let p = self.0;
        (2..p.saturating_sub(1)).filter(move |&l| l != p - 1)
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Quadratic-residue class of a nonzero residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SquareClass {
    Square,
    NonSquare,
}

/// Euler's criterion. `a` must be nonzero modulo `p`.
pub fn legendre(a: u32, p: u32) -> SquareClass {
    debug_assert!(!a.is_multiple_of(p));
    if pow_mod(a as u64, ((p - 1) / 2) as u64, p as u64) == 1 {
        SquareClass::Square
    } else {
        SquareClass::NonSquare
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// `a^{-1} mod p` for `a != 0`.
pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a as u64, (p - 2) as u64, p as u64) as u32)
    }
}

/// An element of `F_p`.
///
/// Arithmetic operators panic when the operands carry different moduli; use
/// [`FieldElement::checked_mul`] and friends when the moduli are not known to
/// agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    value: u32,
    modulus: Prime,
}

impl FieldElement {
    pub fn new(value: u64, modulus: Prime) -> Self {
        FieldElement {
            value: (value % modulus.0 as u64) as u32,
            modulus,
        }
    }

    /// Reduces a signed integer.
    pub fn from_i64(value: i64, modulus: Prime) -> Self {
        let p = modulus.0 as i64;
        FieldElement {
            value: value.rem_euclid(p) as u32,
            modulus,
        }
    }

    pub fn zero(modulus: Prime) -> Self {
        FieldElement { value: 0, modulus }
    }

    pub fn one(modulus: Prime) -> Self {
        FieldElement { value: 1, modulus }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Result<Self> {
        inv_mod(self.value, self.modulus.0)
            .map(|value| FieldElement {
                value,
                modulus: self.modulus,
            })
            .ok_or(Error::ZeroInverse(self.modulus.0))
    }

    pub fn pow(self, exp: u64) -> Self {
        let value = pow_mod(self.value as u64, exp, self.modulus.0 as u64) as u32;
        FieldElement {
            value,
            modulus: self.modulus,
        }
    }

    /// `None` for zero.
    pub fn square_class(self) -> Option<SquareClass> {
        (!self.is_zero()).then(|| legendre(self.value, self.modulus.0))
    }

    fn same_field(self, rhs: Self) -> Result<()> {
        if self.modulus == rhs.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus.0, rhs.modulus.0))
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self * rhs)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let p = self.modulus.0 as u64;
        let value = ((self.value as u64 + rhs.value as u64) % p) as u32;
        FieldElement {
            value,
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        let value = if self.value == 0 {
            0
        } else {
            self.modulus.0 - self.value
        };
        FieldElement {
            value,
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let p = self.modulus.0 as u64;
        let value = (self.value as u64 * rhs.value as u64 % p) as u32;
        FieldElement {
            value,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_odd_primes() {
        for bad in [0, 1, 2, 4, 9, 15, 21] {
            assert!(Prime::new(bad).is_err(), "{bad}");
        }
        for good in [3, 5, 7, 11, 13, 31, 101] {
            assert_eq!(Prime::new(good).unwrap().get(), good);
        }
    }

    #[test]
    fn inverse_roundtrip_and_zero_error() {
        let p = Prime::new(13).unwrap();
        for a in 1..13 {
            let x = FieldElement::new(a, p);
            assert_eq!(x * x.inverse().unwrap(), FieldElement::one(p));
        }
        assert_eq!(FieldElement::zero(p).inverse(), Err(Error::ZeroInverse(13)));
    }

    #[test]
    fn legendre_matches_squares() {
        for p in [3u32, 5, 7, 11, 13, 17] {
            let squares: alloc::vec::Vec<u32> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                let expect = if squares.contains(&a) {
                    SquareClass::Square
                } else {
                    SquareClass::NonSquare
                };
                assert_eq!(legendre(a, p), expect, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn mismatched_moduli_are_rejected() {
        let a = FieldElement::new(2, Prime::new(5).unwrap());
        let b = FieldElement::new(2, Prime::new(7).unwrap());
        assert_eq!(a.checked_mul(b), Err(Error::ModulusMismatch(5, 7)));
    }

    #[test]
    fn admissible_lambdas_skip_units() {
        let p = Prime::new(7).unwrap();
        assert_eq!(
            p.admissible_lambdas().collect::<alloc::vec::Vec<_>>(),
            [2, 3, 4, 5]
        );
        assert_eq!(Prime::new(3).unwrap().admissible_lambdas().count(), 0);
    }
}
