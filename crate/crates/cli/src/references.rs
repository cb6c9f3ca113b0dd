//! Stated closed forms that the symbolic derivations are checked against.
//! Kept as text, independent of the code that derives them.

use charvar_core::strata::CaseId;
use charvar_core::EPolynomial;

fn p(s: &str) -> EPolynomial {
    EPolynomial::parse_in(s, 'q').expect("well-formed literal")
}

/// `(case, Zbar, e(R), has reducibles)` for every two-puncture case.
pub fn theorem_cases() -> Vec<(CaseId, EPolynomial, EPolynomial, bool)> {
    vec![
        (
            CaseId::JPlusJPlus,
            p("q^5+q^4+3q^2+3q"),
            p("q^4+q^3-q+7"),
            true,
        ),
        (
            CaseId::JPlusJMinus,
            p("q^5-3q^3-6q^2"),
            p("q^4-3q^2-6q"),
            false,
        ),
        (
            CaseId::JPlusXi,
            p("q^5+q^3-q^2-1"),
            p("q^4+q^3+2q^2+q+1"),
            false,
        ),
        (
            CaseId::XiXiGeneric,
            p("q^5+q^4+4q^3-4q^2-q-1"),
            p("q^4+2q^3+6q^2+2q+1"),
            false,
        ),
        (
            CaseId::XiXiSpecial,
            p("q^5+q^4+4q^3-4q^2-q-1"),
            p("q^4+2q^3+6q^2+2q+1"),
            false,
        ),
        (
            CaseId::XiXiEqual,
            p("q^5+2q^4+2q^3-3q^2-q-1"),
            p("q^4+q^3+8q^2+q+1"),
            true,
        ),
    ]
}
