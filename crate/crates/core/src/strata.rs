//! Symbolic stratum sums.
//!
//! The building blocks are fixed polynomials; each case adds its strata,
//! removes the reducible locus where there is one, divides by the stabilizer
//! polynomial and adds back the reducible points of the quotient.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{exact_divide, EPolynomial};

fn poly(c: &[i128]) -> EPolynomial {
    EPolynomial::new(c.to_vec())
}

/// The E-polynomials every derivation is assembled from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingBlockTable {
    pub sl2: EPolynomial,
    pub pgl2: EPolynomial,
    pub w0: EPolynomial,
    pub w1: EPolynomial,
    pub w2: EPolynomial,
    pub w3: EPolynomial,
    pub w4_lambda: EPolynomial,
    pub w4: EPolynomial,
    pub x0: EPolynomial,
    pub x1: EPolynomial,
    pub x2_bar: EPolynomial,
    pub x2: EPolynomial,
    pub x3_bar: EPolynomial,
    pub x3: EPolynomial,
    pub x4_lambda_bar: EPolynomial,
    pub x4_lambda: EPolynomial,
    pub x4_bar: EPolynomial,
    pub x4_bar_mod_z2: EPolynomial,
    pub x4: EPolynomial,
    /// Unipotent stabilizer `U`.
    pub u: EPolynomial,
    /// Torus `C*`.
    pub c_star: EPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: EPolynomial,
    pub rhs: EPolynomial,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(name: &str, lhs: EPolynomial, rhs: EPolynomial) -> Self {
        let pass = lhs == rhs;
        IdentityCheck {
            name: name.to_string(),
            lhs,
            rhs,
            pass,
        }
    }
}

impl BuildingBlockTable {
    pub fn entries(&self) -> Vec<(&'static str, &EPolynomial)> {
        vec![
            ("SL2", &self.sl2),
            ("PGL2", &self.pgl2),
            ("W0", &self.w0),
            ("W1", &self.w1),
            ("W2", &self.w2),
            ("W3", &self.w3),
            ("W4_lambda", &self.w4_lambda),
            ("W4", &self.w4),
            ("X0", &self.x0),
            ("X1", &self.x1),
            ("X2_bar", &self.x2_bar),
            ("X2", &self.x2),
            ("X3_bar", &self.x3_bar),
            ("X3", &self.x3),
            ("X4_lambda_bar", &self.x4_lambda_bar),
            ("X4_lambda", &self.x4_lambda),
            ("X4_bar", &self.x4_bar),
            ("X4_bar/Z2", &self.x4_bar_mod_z2),
            ("X4", &self.x4),
            ("U", &self.u),
            ("C*", &self.c_star),
        ]
    }

    pub fn get(&self, name: &str) -> Option<&EPolynomial> {
        self.entries()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, p)| p)
    }

    /// Cross-identities between the entries.
    pub fn identity_checks(&self) -> Vec<IdentityCheck> {
        let q = EPolynomial::q();
        let one = EPolynomial::one();
        let q2m1 = &self.w2.clone();
        let q2pq = &self.w4_lambda.clone();
        let strata_sum = &(&(&(&self.x0 + &self.x1) + &self.x2) + &self.x3) + &self.x4;
        let w_sum = &(&(&(&self.sl2 - &self.w0) - &self.w1) - &self.w2) - &self.w3;
        let qm1 = &q - &one;
        vec![
            IdentityCheck::new(
                "X0 + X1 + X2 + X3 + X4 = SL2^2",
                strata_sum,
                &self.sl2 * &self.sl2,
            ),
            IdentityCheck::new(
                "X2 = (q^2 - 1) X2_bar",
                self.x2.clone(),
                q2m1 * &self.x2_bar,
            ),
            IdentityCheck::new(
                "X3 = (q^2 - 1) X3_bar",
                self.x3.clone(),
                q2m1 * &self.x3_bar,
            ),
            IdentityCheck::new(
                "X4_lambda = (q^2 + q) X4_lambda_bar",
                self.x4_lambda.clone(),
                q2pq * &self.x4_lambda_bar,
            ),
            IdentityCheck::new("W4 = SL2 - W0 - W1 - W2 - W3", self.w4.clone(), w_sum),
            IdentityCheck::new("X1 = PGL2", self.x1.clone(), self.pgl2.clone()),
            IdentityCheck::new(
                "X2_bar = q((q - 1)^2 - 4)",
                self.x2_bar.clone(),
                &q * &(&(&qm1 * &qm1) - &EPolynomial::constant(4)),
            ),
            IdentityCheck::new(
                "X3_bar = q(q^2 + 3q)",
                self.x3_bar.clone(),
                &q * &poly(&[0, 3, 1]),
            ),
            IdentityCheck::new(
                "X4_lambda_bar = (q - 1)(q^2 + 4q + 1)",
                self.x4_lambda_bar.clone(),
                &qm1 * &poly(&[1, 4, 1]),
            ),
        ]
    }
}

/// The transcribed table.
pub fn building_blocks() -> BuildingBlockTable {
    BuildingBlockTable {
        sl2: poly(&[0, -1, 0, 1]),
        pgl2: poly(&[0, -1, 0, 1]),
        w0: poly(&[1]),
        w1: poly(&[1]),
        w2: poly(&[-1, 0, 1]),
        w3: poly(&[-1, 0, 1]),
        w4_lambda: poly(&[0, 1, 1]),
        w4: poly(&[0, -1, -2, 1]),
        x0: poly(&[0, -4, -1, 4, 1]),
        x1: poly(&[0, -1, 0, 1]),
        x2_bar: poly(&[0, -3, -2, 1]),
        x2: poly(&[0, 3, 2, -4, -2, 1]),
        x3_bar: poly(&[0, 0, 3, 1]),
        x3: poly(&[0, 0, -3, -1, 3, 1]),
        x4_lambda_bar: poly(&[-1, -3, 3, 1]),
        x4_lambda: poly(&[0, -1, -4, 0, 4, 1]),
        x4_bar: poly(&[3, 5, -6, -3, 1]),
        x4_bar_mod_z2: poly(&[1, 3, -3, -2, 1]),
        x4: poly(&[0, 2, 3, 0, -4, -2, 1]),
        u: poly(&[0, 1]),
        c_star: poly(&[-1, 1]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseId {
    JPlusJPlus,
    JPlusJMinus,
    JPlusXi,
    XiXiGeneric,
    XiXiSpecial,
    XiXiEqual,
}

impl CaseId {
    pub const ALL: [CaseId; 6] = [
        CaseId::JPlusJPlus,
        CaseId::JPlusJMinus,
        CaseId::JPlusXi,
        CaseId::XiXiGeneric,
        CaseId::XiXiSpecial,
        CaseId::XiXiEqual,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseId::JPlusJPlus => "J+J+",
            CaseId::JPlusJMinus => "J+J-",
            CaseId::JPlusXi => "J+xi",
            CaseId::XiXiGeneric => "xixi-generic",
            CaseId::XiXiSpecial => "xixi-special",
            CaseId::XiXiEqual => "xixi-equal",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_lowercase();
        let norm = norm.replace('ξ', "xi").replace('_', "-");
        Ok(match norm.as_str() {
            "j+j+" | "jpjp" => CaseId::JPlusJPlus,
            "j+j-" | "jpjm" => CaseId::JPlusJMinus,
            "j+xi" | "jpxi" => CaseId::JPlusXi,
            "xixi-generic" | "xixi" => CaseId::XiXiGeneric,
            "xixi-special" => CaseId::XiXiSpecial,
            "xixi-equal" => CaseId::XiXiEqual,
            _ => {
                return Err(Error::InvalidParameter(alloc::format!(
                    "unknown case {s:?}"
                )))
            }
        })
    }
}

/// One line of a stratum sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub name: String,
    pub formula: String,
    pub polynomial: EPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: CaseId,
    pub strata: Vec<Stratum>,
    /// Sum of the strata.
    pub zbar: EPolynomial,
    /// Reducible locus removed before dividing, if any.
    pub reducible_locus: Option<EPolynomial>,
    /// `zbar` minus the reducible locus.
    pub zbar_star: EPolynomial,
    /// Stabilizer polynomial divided out (`q` or `q - 1`).
    pub divisor: EPolynomial,
    /// Points added back in the quotient for the reducibles.
    pub reducible_correction: Option<EPolynomial>,
    /// Polynomial of the full solution set, when the orbit map is a fibration
    /// over the barred set; for the case with a removed locus this is the
    /// irreducible part.
    pub z_full: Option<EPolynomial>,
    /// Polynomial of the quotient.
    pub r: EPolynomial,
    pub has_reducibles: bool,
}

fn stratum(name: &str, formula: &str, polynomial: EPolynomial) -> Stratum {
    Stratum {
        name: name.to_string(),
        formula: formula.to_string(),
        polynomial,
    }
}

/// Replays one case.
pub fn derive_case(case: CaseId) -> Result<CaseResult> {
    derive_case_with(&building_blocks(), case)
}

pub fn derive_case_with(b: &BuildingBlockTable, case: CaseId) -> Result<CaseResult> {
    let q = EPolynomial::q();
    let c = |k: i128| EPolynomial::constant(k);
    let qm1 = &q - &c(1);
    let qm2 = &q - &c(2);
    let two_qm1 = &(&q * &c(2)) - &c(1);
    let x4_rest = &b.x4_bar_mod_z2 - &b.x4_lambda_bar;

    let strata = match case {
        CaseId::JPlusJPlus => vec![
            stratum("z=0, x!=+-1", "(q-2) e(X2_bar)", &qm2 * &b.x2_bar),
            stratum("z=0, x=+-1", "e(X0)", b.x0.clone()),
            stratum("z^2=-4", "q e(X3_bar)", &q * &b.x3_bar),
            stratum("z^2!=0,-4", "q e(X4_bar/Z2)", &q * &b.x4_bar_mod_z2),
        ],
        CaseId::JPlusJMinus => vec![
            stratum("z=0, x!=+-1", "(q-2) e(X3_bar)", &qm2 * &b.x3_bar),
            stratum("z=0, x=+-1", "e(X1)", b.x1.clone()),
            stratum("z^2=-4", "q e(X2_bar)", &q * &b.x2_bar),
            stratum("z^2!=0,-4", "q e(X4_bar/Z2)", &q * &b.x4_bar_mod_z2),
        ],
        CaseId::JPlusXi => vec![
            stratum(
                "xz=0",
                "(2q-1) e(X4_lambda_bar)",
                &two_qm1 * &b.x4_lambda_bar,
            ),
            stratum("t=2", "(q-1) e(X2_bar)", &qm1 * &b.x2_bar),
            stratum("t=-2", "(q-1) e(X3_bar)", &qm1 * &b.x3_bar),
            stratum(
                "t generic",
                "(q-1)(e(X4_bar/Z2) - e(X4_lambda_bar))",
                &qm1 * &x4_rest,
            ),
        ],
        CaseId::XiXiGeneric => vec![
            stratum(
                "F1: t2=2",
                "(2q-1) e(X4_mu_bar)",
                &two_qm1 * &b.x4_lambda_bar,
            ),
            stratum(
                "F2: t2=lambda^2+lambda^-2",
                "(2q-1) e(X4_{mu lambda^2}_bar)",
                &two_qm1 * &b.x4_lambda_bar,
            ),
            stratum("F3: t1=2", "(q-1) e(X2_bar)", &qm1 * &b.x2_bar),
            stratum("F4: t1=-2", "(q-1) e(X3_bar)", &qm1 * &b.x3_bar),
            stratum(
                "F5: t1 generic",
                "(q-1)(e(X4_bar/Z2) - e(X4_mu_bar) - e(X4_{mu lambda^2}_bar))",
                &qm1 * &(&x4_rest - &b.x4_lambda_bar),
            ),
        ],
        CaseId::XiXiSpecial => vec![
            stratum(
                "F1: t2=2",
                "(2q-1) e(X4_mu_bar)",
                &two_qm1 * &b.x4_lambda_bar,
            ),
            stratum(
                "F2: t2=lambda^2+lambda^-2, t1=-2",
                "2(q-1) e(X3_bar) + e(X1)",
                &(&(&qm1 * &c(2)) * &b.x3_bar) + &b.x1,
            ),
            stratum("F3: t1=2", "(q-1) e(X2_bar)", &qm1 * &b.x2_bar),
            stratum(
                "F4: t1 generic",
                "(q-1)(e(X4_bar/Z2) - e(X4_mu_bar))",
                &qm1 * &x4_rest,
            ),
        ],
        CaseId::XiXiEqual => vec![
            stratum(
                "F1: t2=2",
                "(2q-1) e(X4_mu_bar)",
                &two_qm1 * &b.x4_lambda_bar,
            ),
            stratum(
                "F2: t2=t1=lambda^2+lambda^-2",
                "2(q-1) e(X2_bar) + e(X0)",
                &(&(&qm1 * &c(2)) * &b.x2_bar) + &b.x0,
            ),
            stratum("F3: t1=-2", "(q-1) e(X3_bar)", &qm1 * &b.x3_bar),
            stratum(
                "F4: t1 generic",
                "(q-1)(e(X4_bar/Z2) - e(X4_mu_bar))",
                &qm1 * &x4_rest,
            ),
        ],
    };

    let mut zbar = EPolynomial::zero();
    for s in &strata {
        zbar = zbar.checked_add(&s.polynomial)?;
    }

    let (reducible_locus, divisor, reducible_correction) = match case {
        CaseId::JPlusJPlus => (Some(&c(4) * &(&q * &q)), b.u.clone(), Some(c(4))),
        CaseId::JPlusJMinus => (None, b.u.clone(), None),
        CaseId::XiXiEqual => {
            let locus = &(&qm1 * &qm1) * &(&(&(&q * &q) * &c(2)) - &c(1));
            (Some(locus), b.c_star.clone(), Some(&qm1 * &qm1))
        }
        _ => (None, b.c_star.clone(), None),
    };
    let zbar_star = match &reducible_locus {
        Some(l) => zbar.checked_sub(l)?,
        None => zbar.clone(),
    };
    let mut r = exact_divide(&zbar_star, &divisor)?;
    if let Some(corr) = &reducible_correction {
        r = r.checked_add(corr)?;
    }
    let z_full = match case {
        CaseId::JPlusJPlus | CaseId::JPlusJMinus => Some(b.w2.checked_mul(&zbar_star)?),
        CaseId::JPlusXi | CaseId::XiXiGeneric | CaseId::XiXiSpecial => {
            Some(b.w4_lambda.checked_mul(&zbar)?)
        }
        CaseId::XiXiEqual => None,
    };
    Ok(CaseResult {
        case,
        strata,
        zbar,
        has_reducibles: reducible_locus.is_some(),
        reducible_locus,
        zbar_star,
        divisor,
        reducible_correction,
        z_full,
        r,
    })
}

/// A row of the results table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremEntry {
    pub c1: String,
    pub c2: String,
    pub polynomial: EPolynomial,
    /// `None` when no statement about reducibles is recorded.
    pub reducibles: Option<bool>,
    /// The derivation producing the entry; `None` for transcribed rows.
    pub derived_from: Option<CaseId>,
}

fn entry(
    c1: &str,
    c2: &str,
    polynomial: EPolynomial,
    reducibles: Option<bool>,
    derived_from: Option<CaseId>,
) -> TheoremEntry {
    TheoremEntry {
        c1: c1.to_string(),
        c2: c2.to_string(),
        polynomial,
        reducibles,
        derived_from,
    }
}

/// Two-puncture entries from the derivations (with their sign-symmetric
/// duplicates), followed by the transcribed one-puncture list.
pub fn theorem_table() -> Result<Vec<TheoremEntry>> {
    let mut rows = Vec::new();
    let pairs: [(&str, &str, CaseId); 7] = [
        ("J+", "J+", CaseId::JPlusJPlus),
        ("J-", "J-", CaseId::JPlusJPlus),
        ("J+", "J-", CaseId::JPlusJMinus),
        ("J+", "xi_lambda", CaseId::JPlusXi),
        ("J-", "xi_lambda", CaseId::JPlusXi),
        ("xi_lambda", "xi_mu", CaseId::XiXiGeneric),
        ("xi_lambda", "xi_lambda", CaseId::XiXiEqual),
    ];
    for (c1, c2, case) in pairs {
        let res = derive_case(case)?;
        rows.push(entry(c1, c2, res.r, Some(res.has_reducibles), Some(case)));
    }
    let one_puncture: [(&str, &str, &[i128]); 9] = [
        ("Id", "Id", &[1, 0, 1]),
        ("-Id", "-Id", &[1, 0, 1]),
        ("Id", "-Id", &[1]),
        ("Id", "J+", &[3, -2, 1]),
        ("-Id", "J-", &[3, -2, 1]),
        ("Id", "J-", &[0, 3, 1]),
        ("-Id", "J+", &[0, 3, 1]),
        ("Id", "xi_lambda", &[1, 4, 1]),
        ("-Id", "xi_lambda", &[1, 4, 1]),
    ];
    for (c1, c2, coeffs) in one_puncture {
        rows.push(entry(c1, c2, poly(coeffs), None, None));
    }
    Ok(rows)
}

/// Transcribed polynomials of the full solution sets with one trivial
/// puncture class.
pub fn one_puncture_solution_sets() -> Vec<(&'static str, EPolynomial)> {
    vec![
        ("Z00 = Z11", poly(&[0, -4, -1, 4, 1])),
        ("Z01", poly(&[0, -1, 0, 1])),
        ("Z02 = Z13", poly(&[0, 3, 2, -4, -2, 1])),
        ("Z03 = Z12", poly(&[0, 0, -3, -1, 3, 1])),
        ("Z04 = Z14", poly(&[0, -1, -4, 0, 4, 1])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> EPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn table_identities_hold() {
        let b = building_blocks();
        for check in b.identity_checks() {
            assert!(check.pass, "{}: {} vs {}", check.name, check.lhs, check.rhs);
        }
        assert_eq!(b.get("X2_bar").unwrap(), &p("q^3-2q^2-3q"));
        assert_eq!(b.get("W0").unwrap(), &EPolynomial::one());
        assert_eq!(b.w4, p("q^3-2q^2-q"));
        assert!(b.get("nope").is_none());
    }

    #[test]
    fn final_polynomials() {
        let expect = [
            (CaseId::JPlusJPlus, "q^4+q^3-q+7"),
            (CaseId::JPlusJMinus, "q^4-3q^2-6q"),
            (CaseId::JPlusXi, "q^4+q^3+2q^2+q+1"),
            (CaseId::XiXiGeneric, "q^4+2q^3+6q^2+2q+1"),
            (CaseId::XiXiSpecial, "q^4+2q^3+6q^2+2q+1"),
            (CaseId::XiXiEqual, "q^4+q^3+8q^2+q+1"),
        ];
        for (case, r) in expect {
            assert_eq!(derive_case(case).unwrap().r, p(r), "{case}");
        }
    }

    #[test]
    fn intermediate_polynomials() {
        let zbar = |c| derive_case(c).unwrap().zbar;
        assert_eq!(zbar(CaseId::JPlusJPlus), p("q^5+q^4+3q^2+3q"));
        assert_eq!(zbar(CaseId::JPlusJMinus), p("q^5-3q^3-6q^2"));
        assert_eq!(zbar(CaseId::JPlusXi), p("q^5+q^3-q^2-1"));
        assert_eq!(zbar(CaseId::XiXiGeneric), p("q^5+q^4+4q^3-4q^2-q-1"));
        assert_eq!(zbar(CaseId::XiXiSpecial), zbar(CaseId::XiXiGeneric));
        assert_eq!(zbar(CaseId::XiXiEqual), p("q^5+2q^4+2q^3-3q^2-q-1"));

        let jj = derive_case(CaseId::JPlusJPlus).unwrap();
        assert_eq!(jj.zbar_star, p("q^5+q^4-q^2+3q"));
        assert_eq!(jj.z_full.unwrap(), p("q^7+q^6-q^5-2q^4+3q^3+q^2-3q"));
        assert_eq!(
            derive_case(CaseId::JPlusJMinus).unwrap().z_full.unwrap(),
            p("q^7-4q^5-6q^4+3q^3+6q^2")
        );
        assert_eq!(
            derive_case(CaseId::JPlusXi).unwrap().z_full.unwrap(),
            p("q^7+q^6+q^5-q^3-q^2-q")
        );
        let eq = derive_case(CaseId::XiXiEqual).unwrap();
        assert_eq!(eq.zbar_star, p("q^5+6q^3-4q^2-3q"));
        assert_eq!(eq.reducible_locus.unwrap(), p("2q^4-4q^3+q^2+2q-1"));
    }

    #[test]
    fn stratum_lines() {
        let lines = |c| -> Vec<EPolynomial> {
            derive_case(c)
                .unwrap()
                .strata
                .into_iter()
                .map(|s| s.polynomial)
                .collect()
        };
        let f1 = p("2q^4+5q^3-9q^2+q+1");
        let f3 = p("q^4-3q^3-q^2+3q");
        let gen = lines(CaseId::XiXiGeneric);
        assert_eq!(
            gen,
            [
                f1.clone(),
                f1.clone(),
                f3.clone(),
                p("q^4+2q^3-3q^2"),
                p("q^5-5q^4-5q^3+18q^2-6q-3")
            ]
        );
        let spec = lines(CaseId::XiXiSpecial);
        let tail = p("q^5-4q^4-3q^3+12q^2-4q-2");
        assert_eq!(spec, [f1.clone(), p("2q^4+5q^3-6q^2-q"), f3, tail.clone()]);
        let eq = lines(CaseId::XiXiEqual);
        assert_eq!(eq[1], p("3q^4-2q^3-3q^2+2q"));
        assert_eq!(eq[3], tail);
    }

    #[test]
    fn theorem_rows() {
        let t = theorem_table().unwrap();
        let find = |a: &str, b: &str| t.iter().find(|e| e.c1 == a && e.c2 == b).unwrap().clone();
        let jm = find("J-", "J-");
        assert_eq!(jm.polynomial, p("q^4+q^3-q+7"));
        assert_eq!(jm.reducibles, Some(true));
        let gen = find("xi_lambda", "xi_mu");
        assert_eq!(gen.polynomial, p("q^4+2q^3+6q^2+2q+1"));
        assert_eq!(gen.reducibles, Some(false));
        assert_eq!(find("Id", "-Id").polynomial, EPolynomial::one());
        assert_eq!(find("xi_lambda", "xi_lambda").reducibles, Some(true));
        assert_eq!(find("J+", "J-").reducibles, Some(false));
    }

    #[test]
    fn case_ids_parse() {
        for c in CaseId::ALL {
            assert_eq!(c.as_str().parse::<CaseId>().unwrap(), c);
        }
        assert!("J+K".parse::<CaseId>().is_err());
    }

    #[test]
    fn inexact_division_surfaces_remainder() {
        let mut b = building_blocks();
        b.x0 = &b.x0 + &EPolynomial::one();
        assert_eq!(
            derive_case_with(&b, CaseId::JPlusJPlus),
            Err(Error::InexactDivision {
                remainder: EPolynomial::one()
            })
        );
    }
}
