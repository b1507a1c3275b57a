//! Sieve-free arithmetic functions: Euler's totient and Ramanujan sums.
//!
//! These operate on single moduli via trial division, so they need no
//! precomputed tables and stay exact in integer arithmetic wherever the
//! closed forms are integral.

use crate::error::{Error, Result};
use crate::kahan::Accumulator;

/// Greatest common divisor (binary-free Euclid; inputs are small here).
pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Prime factorization of `n` by trial division, `(p, k)` pairs in
/// increasing prime order.
fn trial_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            factors.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Möbius function by trial division (for moduli, not sieve ranges).
fn mobius_small(n: u64) -> i64 {
    let factors = trial_factors(n);
    if factors.iter().any(|&(_, k)| k > 1) {
        return 0;
    }
    if factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler's totient `phi(q)`.
pub fn euler_phi(q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::OutOfRange("euler_phi requires q >= 1".into()));
    }
    let mut phi = q;
    for (p, _) in trial_factors(q) {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// Ramanujan sum `c_q(a)` in exact integer arithmetic via the closed form
/// `mu(q/g) * phi(q) / phi(q/g)` with `g = gcd(a, q)`.
pub fn ramanujan_sum_holder(q: u64, a: i64) -> Result<i64> {
    if q == 0 {
        return Err(Error::OutOfRange(
            "ramanujan_sum_holder requires q >= 1".into(),
        ));
    }
    let a_mod = a.rem_euclid(q as i64) as u64;
    let g = gcd(a_mod, q);
    let m = q / g;
    let mu = mobius_small(m);
    if mu == 0 {
        return Ok(0);
    }
    // phi(m) divides phi(q) whenever m divides q, so this division is exact.
    let ratio = euler_phi(q)? / euler_phi(m)?;
    Ok(mu * ratio as i64)
}

/// Ramanujan sum `c_q(a)` as the literal exponential sum
/// `sum over x in (Z/qZ)* of cos(2 pi a x / q)` (the sine parts cancel).
pub fn ramanujan_sum_expsum(q: u64, a: i64) -> Result<f64> {
    if q == 0 {
        return Err(Error::OutOfRange(
            "ramanujan_sum_expsum requires q >= 1".into(),
        ));
    }
    let a_mod = a.rem_euclid(q as i64) as u64;
    let mut acc = Accumulator::new();
    for x in 1..=q {
        if gcd(x, q) == 1 {
            let product = (x as u128 * a_mod as u128 % q as u128) as u64;
            let angle = std::f64::consts::TAU * product as f64 / q as f64;
            acc.add(angle.cos());
        }
    }
    Ok(acc.total())
}
