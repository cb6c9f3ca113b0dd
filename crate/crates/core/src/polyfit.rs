//! Exact interpolation of counts across primes and the verdicts built on it.
//!
//! All arithmetic is over `BigRational`; a fit either produces integer
//! coefficients or reports the first non-integral one.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{EPolynomial, MAX_DEGREE};

/// Residue moduli tried, in order, when no single polynomial fits.
pub const QUASI_MODULI: [u32; 2] = [4, 3];

fn check_points(points: &[(u64, i128)]) -> Result<()> {
    let mut seen = BTreeMap::new();
    for &(x, _) in points {
        if seen.insert(x, ()).is_some() {
            return Err(Error::DuplicatePoint(x));
        }
    }
    Ok(())
}

/// Interpolant of degree at most `degree_bound` through the first
/// `degree_bound + 1` points (later points are ignored here; see
/// [`fit_and_check`]). Negative values are accepted.
pub fn lagrange_fit(points: &[(u64, i128)], degree_bound: usize) -> Result<EPolynomial> {
    if degree_bound > MAX_DEGREE {
        return Err(Error::DegreeOverflow {
            degree: degree_bound,
            limit: MAX_DEGREE,
        });
    }
    let n = degree_bound + 1;
    if points.len() < n {
        return Err(Error::InsufficientPoints {
            needed: n,
            got: points.len(),
        });
    }
    let pts = &points[..n];
    check_points(pts)?;
    let xs: Vec<BigRational> = pts
        .iter()
        .map(|&(x, _)| BigRational::from_integer(BigInt::from(x)))
        .collect();

    // Newton divided differences, in place.
    let mut dd: Vec<BigRational> = pts
        .iter()
        .map(|&(_, y)| BigRational::from_integer(BigInt::from(y)))
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }

    // Horner expansion of the Newton form into monomial coefficients.
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (q - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for k in 0..n {
            if coeffs[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &coeffs[k];
            }
            next[k] -= &coeffs[k] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }

    let mut out = Vec::with_capacity(n);
    for (power, c) in coeffs.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NonIntegralCoefficient {
                degree: degree_bound,
                power,
            });
        }
        out.push(
            c.to_integer()
                .to_i128()
                .ok_or(Error::Overflow("converting an interpolated coefficient"))?,
        );
    }
    Ok(EPolynomial::new(out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FitStatus {
    ExactPolynomial,
    QuasiPolynomial { modulus: u32 },
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub prime: u64,
    pub observed: i128,
    pub predicted: i128,
    /// `observed - predicted`.
    pub residual: i128,
}

/// One residue class of a quasi-polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub residue: u32,
    pub polynomial: EPolynomial,
    pub primes: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitReport {
    pub status: FitStatus,
    /// The polynomial judged against the data.
    pub polynomial: Option<EPolynomial>,
    /// Populated for quasi-polynomial verdicts.
    pub branches: Vec<Branch>,
    /// Residuals of `polynomial` at every supplied prime.
    pub residuals: Vec<Residual>,
    /// Primes used for interpolation (empty when the polynomial was given).
    pub primes_used: Vec<u64>,
    /// For inconsistent data: primes whose removal leaves a consistent fit.
    pub suspects: Vec<u64>,
}

impl FitReport {
    pub fn is_exact(&self) -> bool {
        self.status == FitStatus::ExactPolynomial
    }

    pub fn nonzero_residuals(&self) -> impl Iterator<Item = &Residual> {
        self.residuals.iter().filter(|r| r.residual != 0)
    }
}

fn residuals(poly: &EPolynomial, points: &[(u64, i128)]) -> Result<Vec<Residual>> {
    points
        .iter()
        .map(|&(x, y)| {
            let predicted = poly.eval(x as i128)?;
            let residual = y
                .checked_sub(predicted)
                .ok_or(Error::Overflow("computing a residual"))?;
            Ok(Residual {
                prime: x,
                observed: y,
                predicted,
                residual,
            })
        })
        .collect()
}

/// Fits through the first `d + 1` points and checks the rest; `None` unless
/// there are at least `d + 2` points and all of them agree.
fn exact_fit(points: &[(u64, i128)], d: usize) -> Option<EPolynomial> {
    if points.len() < d + 2 {
        return None;
    }
    let poly = lagrange_fit(points, d).ok()?;
    let ok = points
        .iter()
        .all(|&(x, y)| poly.eval(x as i128).ok() == Some(y));
    ok.then_some(poly)
}

fn quasi_fit(points: &[(u64, i128)], d: usize) -> Option<(u32, Vec<Branch>)> {
    for m in QUASI_MODULI {
        let mut classes: BTreeMap<u32, Vec<(u64, i128)>> = BTreeMap::new();
        for &(x, y) in points {
            classes
                .entry((x % m as u64) as u32)
                .or_default()
                .push((x, y));
        }
        if classes.len() < 2 {
            continue;
        }
        let branches: Option<Vec<Branch>> = classes
            .iter()
            .map(|(&residue, pts)| {
                exact_fit(pts, d).map(|polynomial| Branch {
                    residue,
                    polynomial,
                    primes: pts.iter().map(|&(x, _)| x).collect(),
                })
            })
            .collect();
        if let Some(b) = branches {
            // Branches that all agree are a plain polynomial, not a quasi one.
            if b.windows(2).any(|w| w[0].polynomial != w[1].polynomial) {
                return Some((m, b));
            }
        }
    }
    None
}

fn leave_one_out(points: &[(u64, i128)], d: usize) -> Vec<u64> {
    (0..points.len())
        .filter(|&i| {
            let rest: Vec<(u64, i128)> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &pt)| pt)
                .collect();
            exact_fit(&rest, d).is_some()
        })
        .map(|i| points[i].0)
        .collect()
}

/// Judges `poly` against `points`, falling back to residue-class branches of
/// degree at most `d`.
pub fn consistency_check_with_bound(
    poly: &EPolynomial,
    points: &[(u64, i128)],
    d: usize,
) -> Result<FitReport> {
    if points.is_empty() {
        return Err(Error::EmptyInput("hold-out sample"));
    }
    check_points(points)?;
    let res = residuals(poly, points)?;
    let mut report = FitReport {
        status: FitStatus::ExactPolynomial,
        polynomial: Some(poly.clone()),
        branches: Vec::new(),
        residuals: res,
        primes_used: Vec::new(),
        suspects: Vec::new(),
    };
    if report.nonzero_residuals().next().is_none() {
        return Ok(report);
    }
    if let Some((modulus, branches)) = quasi_fit(points, d) {
        report.status = FitStatus::QuasiPolynomial { modulus };
        report.branches = branches;
        return Ok(report);
    }
    report.status = FitStatus::Inconsistent;
    report.suspects = leave_one_out(points, d);
    if report.suspects.is_empty() {
        report.suspects = report.nonzero_residuals().map(|r| r.prime).collect();
    }
    Ok(report)
}

/// [`consistency_check_with_bound`] with the degree of `poly` as the bound.
pub fn consistency_check(poly: &EPolynomial, holdout: &[(u64, i128)]) -> Result<FitReport> {
    consistency_check_with_bound(poly, holdout, poly.degree().unwrap_or(0))
}

/// Fits on the first `degree_bound + 1` points and judges the fit against all
/// of them.
pub fn fit_and_check(points: &[(u64, i128)], degree_bound: usize) -> Result<FitReport> {
    check_points(points)?;
    let used: Vec<u64> = points
        .iter()
        .take(degree_bound + 1)
        .map(|&(x, _)| x)
        .collect();
    match lagrange_fit(points, degree_bound) {
        Ok(poly) => {
            let mut report = consistency_check_with_bound(&poly, points, degree_bound)?;
            report.primes_used = used;
            Ok(report)
        }
        Err(Error::NonIntegralCoefficient { .. }) => {
            let mut report = FitReport {
                status: FitStatus::Inconsistent,
                polynomial: None,
                branches: Vec::new(),
                residuals: Vec::new(),
                primes_used: used,
                suspects: Vec::new(),
            };
            if let Some((modulus, branches)) = quasi_fit(points, degree_bound) {
                report.status = FitStatus::QuasiPolynomial { modulus };
                report.branches = branches;
            } else {
                report.suspects = leave_one_out(points, degree_bound);
            }
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientDiff {
    pub power: usize,
    pub fitted: i128,
    pub reference: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub equal: bool,
    pub diffs: Vec<CoefficientDiff>,
}

/// Coefficient-wise comparison.
pub fn compare(poly: &EPolynomial, reference: &EPolynomial) -> Comparison {
    let n = poly.coeffs().len().max(reference.coeffs().len());
    let diffs: Vec<CoefficientDiff> = (0..n)
        .filter(|&k| poly.coeff(k) != reference.coeff(k))
        .map(|k| CoefficientDiff {
            power: k,
            fitted: poly.coeff(k),
            reference: reference.coeff(k),
        })
        .collect();
    Comparison {
        equal: diffs.is_empty(),
        diffs,
    }
}
