use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::EPolynomial;
use crate::sl2::Sl2Element;

use super::engine::PrimeContext;

/// Union of the diagonal commutator fibers against two polynomial guesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyReport {
    pub prime: u32,
    /// `(λ, #{(A, B) : [A,B] = ξ_λ})` for every `λ ∉ {0, ±1}`.
    pub per_lambda: Vec<(u32, u64)>,
    pub union_count: u64,
    /// `q^4 - 3q^3 - 6q^2 + 5q + 3` at `q = p`.
    pub x4bar_eval: i128,
    /// `q^4 - 2q^3 - 3q^2 + 3q + 1` at `q = p`.
    pub x4bar_mod_z2_eval: i128,
    /// Whether every `λ` gives the same fiber.
    pub lambda_independent: bool,
}

pub fn x4bar_polynomial() -> EPolynomial {
    EPolynomial::new(alloc::vec![3, 5, -6, -3, 1])
}

pub fn x4bar_mod_z2_polynomial() -> EPolynomial {
    EPolynomial::new(alloc::vec![1, 3, -3, -2, 1])
}

/// Never judges; it only reports the three numbers side by side.
pub fn monodromy_probe(ctx: &PrimeContext) -> Result<MonodromyReport> {
    let prime = ctx.prime();
    let p = prime.get();
    if p < 5 {
        return Err(Error::InvalidParameter(alloc::format!(
            "the probe needs p >= 5, got {p}"
        )));
    }
    let per_lambda = prime
        .admissible_lambdas()
        .map(|l| Ok((l, ctx.count_commutator_fiber(&Sl2Element::xi(prime, l)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let union_count = per_lambda.iter().map(|&(_, n)| n).sum();
    let lambda_independent = per_lambda.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(MonodromyReport {
        prime: p,
        union_count,
        x4bar_eval: x4bar_polynomial().eval(p as i128)?,
        x4bar_mod_z2_eval: x4bar_mod_z2_polynomial().eval(p as i128)?,
        lambda_independent,
        per_lambda,
    })
}
