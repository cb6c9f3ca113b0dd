//! Univariate integer polynomials in `q`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree the fitting layer works with.
pub const MAX_DEGREE: usize = 8;

/// Integer polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<i128>", into = "Vec<i128>")]
pub struct EPolynomial {
    coeffs: Vec<i128>,
}

impl EPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        EPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        EPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    /// `c q^k`.
    pub fn monomial(c: i128, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q - a`.
    pub fn linear_root(a: i128) -> Self {
        Self::new(vec![-a, 1])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Coefficient of `q^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> i128 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Horner evaluation with overflow detection.
    pub fn eval(&self, q: i128) -> Result<i128> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(q)
                .and_then(|v| v.checked_add(c))
                .ok_or(Error::Overflow("evaluating a polynomial"))?;
        }
        Ok(acc)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(
                self.coeff(k)
                    .checked_add(rhs.coeff(k))
                    .ok_or(Error::Overflow("adding polynomials"))?,
            );
        }
        Ok(Self::new(out))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.checked_neg()
                    .ok_or(Error::Overflow("negating a polynomial"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let t = a
                    .checked_mul(b)
                    .ok_or(Error::Overflow("multiplying polynomials"))?;
                out[i + j] = out[i + j]
                    .checked_add(t)
                    .ok_or(Error::Overflow("multiplying polynomials"))?;
            }
        }
        Ok(Self::new(out))
    }

    pub fn scale(&self, c: i128) -> Result<Self> {
        self.checked_mul(&Self::constant(c))
    }

    /// Long division over the integers: `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder`.
    ///
    /// Stops early when the divisor's leading coefficient does not divide the
    /// current leading term; the remainder is then whatever is left.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i128; rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let top = *rem.last().unwrap();
            if top == 0 {
                rem.pop();
                continue;
            }
            if top % lc != 0 {
                break;
            }
            let f = top / lc;
            let shift = rem.len() - 1 - dd;
            quot[shift] = f;
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                let t = f
                    .checked_mul(c)
                    .ok_or(Error::Overflow("dividing polynomials"))?;
                rem[shift + j] = rem[shift + j]
                    .checked_sub(t)
                    .ok_or(Error::Overflow("dividing polynomials"))?;
            }
            rem.pop();
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Formats with a chosen variable name.
    pub fn display_in(&self, var: &str) -> String {
        let mut s = String::new();
        if self.is_zero() {
            s.push('0');
            return s;
        }
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            if mag != 1 || k == 0 {
                s.push_str(&alloc::format!("{mag}"));
            }
            match k {
                0 => {}
                1 => s.push_str(var),
                _ => s.push_str(&alloc::format!("{var}^{k}")),
            }
        }
        s
    }

    /// Parses expressions such as `q^4 + q^3 - q + 7` or `10t^4+2t^3` in the
    /// named variable. Terms may repeat; like powers are summed.
    pub fn parse_in(text: &str, var: char) -> Result<Self> {
        let bad = || Error::InvalidParameter(alloc::format!("cannot parse polynomial {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut coeffs: Vec<i128> = Vec::new();
        let mut chars = compact.chars().peekable();
        while chars.peek().is_some() {
            let mut sign = 1i128;
            while let Some(&c) = chars.peek() {
                match c {
                    '+' => {}
                    '-' => sign = -sign,
                    _ => break,
                }
                chars.next();
            }
            let mut digits = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    digits.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            if chars.peek() == Some(&'*') {
                chars.next();
            }
            let mut power = 0usize;
            if chars.peek() == Some(&var) {
                chars.next();
                power = 1;
                if chars.peek() == Some(&'^') {
                    chars.next();
                    let mut exp = String::new();
                    while let Some(&c) = chars.peek() {
                        if c.is_ascii_digit() {
                            exp.push(c);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    power = exp.parse().map_err(|_| bad())?;
                }
            } else if digits.is_empty() {
                return Err(bad());
            }
            if power > 64 {
                return Err(bad());
            }
            let c: i128 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| bad())?
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            coeffs[power] = c
                .checked_mul(sign)
                .and_then(|v| v.checked_add(coeffs[power]))
                .ok_or_else(bad)?;
            match chars.peek() {
                None | Some('+') | Some('-') => {}
                _ => return Err(bad()),
            }
        }
        Ok(Self::new(coeffs))
    }
}

/// Exact quotient `a / b`; errors with the remainder when it is nonzero.
pub fn exact_divide(a: &EPolynomial, b: &EPolynomial) -> Result<EPolynomial> {
    let (quot, rem) = a.div_rem(b)?;
    if !rem.is_zero() {
        return Err(Error::InexactDivision { remainder: rem });
    }
    Ok(quot)
}

impl From<Vec<i128>> for EPolynomial {
    fn from(v: Vec<i128>) -> Self {
        Self::new(v)
    }
}

impl From<EPolynomial> for Vec<i128> {
    fn from(p: EPolynomial) -> Self {
        p.coeffs
    }
}

impl FromStr for EPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in(s, 'q')
    }
}

impl fmt::Display for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("q"))
    }
}

impl fmt::Debug for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPolynomial({self})")
    }
}

// Operator forms panic on overflow; the checked methods are the fallible API.

impl Add for &EPolynomial {
    type Output = EPolynomial;
    fn add(self, rhs: Self) -> EPolynomial {
        self.checked_add(rhs)
            .expect("polynomial addition overflowed")
    }
}

impl Sub for &EPolynomial {
    type Output = EPolynomial;
    fn sub(self, rhs: Self) -> EPolynomial {
        self.checked_sub(rhs)
            .expect("polynomial subtraction overflowed")
    }
}

impl Mul for &EPolynomial {
    type Output = EPolynomial;
    fn mul(self, rhs: Self) -> EPolynomial {
        self.checked_mul(rhs)
            .expect("polynomial multiplication overflowed")
    }
}

impl Neg for &EPolynomial {
    type Output = EPolynomial;
    fn neg(self) -> EPolynomial {
        self.checked_neg().expect("polynomial negation overflowed")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for EPolynomial {
            type Output = EPolynomial;
            fn $m(self, rhs: EPolynomial) -> EPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
