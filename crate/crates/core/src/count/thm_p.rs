//! Fibers of `P ↦ tr [P, D]` over the torus-orbit space.
//!
//! For `D = diag(λ, λ^{-1})` and the equation `η [P, D] = ξ_μ`, a matrix `P`
//! contributes when `δ = [P, D]` has trace `t2` and `η = ξ_μ δ^{-1}` has
//! trace `t1`. Right multiplication by diagonal matrices leaves `[P, D]`
//! unchanged and acts freely, so raw counts are divisible by `p - 1`.

use serde::{Deserialize, Serialize};

use crate::classes::check_lambda;
use crate::error::{Error, Result};
use crate::field::{inv_mod, Prime};
use crate::sl2::Sl2Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThmPFiber {
    pub t1: u32,
    pub t2: u32,
    /// Whether `(t1, t2)` satisfies the trace relation.
    pub on_relation: bool,
    /// Matrices `P` before dividing by the torus.
    pub raw: u64,
    /// Torus orbits.
    pub fiber: u64,
    /// Orbits whose `η` has `b c = 0`.
    pub bc_zero: u64,
}

/// `t1` from `μ(λ²-1) t1 + (1-μ²λ²) t2 = (1-μ²)(1+λ²)`.
pub fn trace_relation_t1(prime: Prime, lambda: u32, mu: u32, t2: u32) -> Result<u32> {
    let p = prime.get() as u64;
    let (l, m, t2) = (lambda as u64 % p, mu as u64 % p, t2 as u64 % p);
    let l2 = l * l % p;
    let m2 = m * m % p;
    let rhs = (1 + p - m2) % p * ((1 + l2) % p) % p;
    let coef2 = (1 + p - m2 * l2 % p) % p;
    let num = (rhs + p - coef2 * t2 % p) % p;
    let den = m * ((l2 + p - 1) % p) % p;
    let inv = inv_mod(den as u32, p as u32).ok_or(Error::ZeroInverse(p as u32))?;
    Ok((num * inv as u64 % p) as u32)
}

fn check_mu(mu: u32, prime: Prime) -> Result<()> {
    let m = mu % prime.get();
    if m == 0 || m == 1 {
        return Err(Error::InvalidParameter(alloc::format!(
            "mu = {mu} must avoid 0 and 1 modulo {prime}"
        )));
    }
    Ok(())
}

/// Enumerates all `P` for the given traces. Without an explicit `t1` the
/// relation-derived value is used; an explicit `t1` off the relation yields
/// an empty fiber.
pub fn thm_p_fiber(
    prime: Prime,
    group: &[Sl2Element],
    lambda: u32,
    mu: u32,
    t2: u32,
    t1: Option<u32>,
) -> Result<ThmPFiber> {
    check_lambda(lambda, prime)?;
    check_mu(mu, prime)?;
    let p = prime.get();
    let t2 = t2 % p;
    let derived = trace_relation_t1(prime, lambda, mu, t2)?;
    let t1 = t1.map_or(derived, |t| t % p);
    let d = Sl2Element::xi(prime, lambda % p)?;
    let xi_mu = Sl2Element::xi(prime, mu % p)?;
    let (mut raw, mut bc_zero) = (0u64, 0u64);
    for m in group {
        if m.modulus() != p {
            return Err(Error::ModulusMismatch(m.modulus(), p));
        }
        let delta = Sl2Element::commutator_raw(m, &d);
        if delta.trace() != t2 {
            continue;
        }
        let eta = xi_mu.mul_raw(&delta.inverse());
        if eta.trace() != t1 {
            continue;
        }
        raw += 1;
        let [_, b, c, _] = eta.entries();
        if b == 0 || c == 0 {
            bc_zero += 1;
        }
    }
    let torus = (p - 1) as u64;
    debug_assert_eq!(raw % torus, 0);
    Ok(ThmPFiber {
        t1,
        t2,
        on_relation: t1 == derived,
        raw,
        fiber: raw / torus,
        bc_zero: bc_zero / torus,
    })
}
