//! Linear smallest-prime-factor sieve with Möbius and von Mangoldt tables.
//!
//! [`SieveTables`] is built once per session and then shared immutably by the
//! summatory operators and the experiment harness. The builder runs the
//! linear (Euler) sieve, so every composite is crossed off exactly once and
//! the Möbius function comes out of the same pass for free.
//!
//! The von Mangoldt function is stored sparsely: a value-sorted list of all
//! prime powers `p^k <= limit`, each carrying its witness `(p, k)` and
//! `log p`. Below 10^8 that list has about 5.8 million entries, versus the
//! 10^8 zero-heavy slots a dense table would need, and one ascending scan of
//! it evaluates any Chebyshev-psi-style sum.

use crate::error::{Error, Result};

/// Hard ceiling on table construction: smallest-prime-factor entries are
/// stored as `u32`, so the sieve refuses anything beyond `u32::MAX`.
pub const MAX_SIEVE_LIMIT: u64 = u32::MAX as u64;

/// One prime power `p^k <= limit`: the support of the von Mangoldt function.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimePower {
    /// `p^k` itself.
    pub(crate) value: u64,
    /// The prime `p`.
    pub(crate) base: u64,
    /// The exponent `k >= 1`.
    pub(crate) exponent: u32,
    /// `ln p`, precomputed once so every scan sees identical bits.
    pub(crate) log_base: f64,
}

/// Prime factorization of `n` as `(prime, exponent)` pairs in increasing
/// prime order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// The factored integer.
    pub n: u64,
    /// `(p, k)` pairs with `p` strictly increasing; empty exactly for `n = 1`.
    pub factors: Vec<(u64, u32)>,
}

/// Shared arithmetic-function tables over `1..=limit`.
pub struct SieveTables {
    limit: u64,
    /// `spf[n]` = smallest prime factor of `n`; `spf[0] = spf[1] = 0`.
    spf: Vec<u32>,
    /// `mu[n]` = Möbius function of `n` (only ever -1, 0, or 1).
    pub(crate) mu: Vec<i8>,
    /// All prime powers `<= limit`, sorted by `value`.
    pub(crate) prime_powers: Vec<PrimePower>,
}

/// Builds the shared tables; convenience alias for [`SieveTables::build`].
pub fn build_sieve(limit: u64) -> Result<SieveTables> {
    SieveTables::build(limit)
}

impl SieveTables {
    /// Runs the linear sieve up to `limit` and assembles all tables.
    ///
    /// Fails with [`Error::SizeLimit`] when `limit` is zero or exceeds
    /// [`MAX_SIEVE_LIMIT`].
    pub fn build(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::SizeLimit("sieve limit must be at least 1".into()));
        }
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::SizeLimit(format!(
                "sieve limit {limit} exceeds the supported ceiling {MAX_SIEVE_LIMIT}"
            )));
        }

        let size = (limit as usize) + 1;
        let mut spf = vec![0u32; size];
        let mut mu = vec![0i8; size];
        mu[1] = 1;
        let mut primes: Vec<u64> = Vec::new();

        for i in 2..size {
            if spf[i] == 0 {
                spf[i] = i as u32;
                mu[i] = -1;
                primes.push(i as u64);
            }
            let spf_i = spf[i] as u64;
            for &p in &primes {
                if p > spf_i {
                    break;
                }
                let multiple = match (i as u64).checked_mul(p) {
                    Some(m) if m <= limit => m as usize,
                    _ => break,
                };
                spf[multiple] = p as u32;
                mu[multiple] = if p == spf_i { 0 } else { -mu[i] };
                if p == spf_i {
                    break;
                }
            }
        }

        let mut prime_powers = Vec::new();
        for &p in &primes {
            let log_base = (p as f64).ln();
            let mut value = p;
            let mut exponent = 1u32;
            loop {
                prime_powers.push(PrimePower {
                    value,
                    base: p,
                    exponent,
                    log_base,
                });
                match value.checked_mul(p) {
                    Some(next) if next <= limit => {
                        value = next;
                        exponent += 1;
                    }
                    _ => break,
                }
            }
        }
        prime_powers.sort_unstable_by_key(|pp| pp.value);

        Ok(Self {
            limit,
            spf,
            mu,
            prime_powers,
        })
    }

    /// Largest tabulated integer.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn check_range(&self, n: u64, what: &str) -> Result<()> {
        if n == 0 || n > self.limit {
            return Err(Error::OutOfRange(format!(
                "{what} requires 1 <= n <= {}, got {n}",
                self.limit
            )));
        }
        Ok(())
    }

    /// Möbius function of `n`.
    pub fn mobius(&self, n: u64) -> Result<i32> {
        self.check_range(n, "mobius")?;
        Ok(i32::from(self.mu[n as usize]))
    }

    /// Von Mangoldt function of `n`: `ln p` when `n = p^k`, zero otherwise.
    pub fn mangoldt(&self, n: u64) -> Result<f64> {
        self.check_range(n, "mangoldt")?;
        Ok(match self.prime_power_index(n) {
            Some(idx) => self.prime_powers[idx].log_base,
            None => 0.0,
        })
    }

    /// Smallest prime factor of `n >= 2`.
    pub fn smallest_prime_factor(&self, n: u64) -> Result<u64> {
        if n < 2 {
            return Err(Error::OutOfRange(format!(
                "smallest_prime_factor requires n >= 2, got {n}"
            )));
        }
        self.check_range(n, "smallest_prime_factor")?;
        Ok(u64::from(self.spf[n as usize]))
    }

    /// Whether `n` is prime.
    pub fn is_prime(&self, n: u64) -> Result<bool> {
        self.check_range(n, "is_prime")?;
        Ok(n >= 2 && u64::from(self.spf[n as usize]) == n)
    }

    /// The witness `(p, k)` when `n = p^k` is a prime power, else `None`.
    pub fn prime_power_witness(&self, n: u64) -> Result<Option<(u64, u32)>> {
        self.check_range(n, "prime_power_witness")?;
        Ok(self
            .prime_power_index(n)
            .map(|idx| (self.prime_powers[idx].base, self.prime_powers[idx].exponent)))
    }

    fn prime_power_index(&self, n: u64) -> Option<usize> {
        self.prime_powers
            .binary_search_by_key(&n, |pp| pp.value)
            .ok()
    }

    /// Index of the first prime power strictly greater than `x`; the prefix
    /// `prime_powers[..idx]` is exactly the support of psi up to `x`.
    pub(crate) fn prime_powers_upto(&self, x: u64) -> &[PrimePower] {
        let idx = self.prime_powers.partition_point(|pp| pp.value <= x);
        &self.prime_powers[..idx]
    }

    /// Prime factorization of `n` via repeated smallest-prime-factor lookups.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        self.check_range(n, "factorize")?;
        let mut factors = Vec::new();
        let mut rest = n;
        while rest > 1 {
            let p = u64::from(self.spf[rest as usize]);
            let mut exponent = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                exponent += 1;
            }
            factors.push((p, exponent));
        }
        Ok(Factorization { n, factors })
    }

    /// All divisors of `n` in increasing order.
    pub fn divisors(&self, n: u64) -> Result<Vec<u64>> {
        let factorization = self.factorize(n)?;
        let mut divisors = vec![1u64];
        for (p, k) in factorization.factors {
            let current = divisors.len();
            let mut power = 1u64;
            for _ in 0..k {
                power *= p;
                for i in 0..current {
                    divisors.push(divisors[i] * power);
                }
            }
        }
        divisors.sort_unstable();
        Ok(divisors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_limits() {
        assert!(matches!(SieveTables::build(0), Err(Error::SizeLimit(_))));
        assert!(matches!(
            SieveTables::build(MAX_SIEVE_LIMIT + 1),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn builds_the_trivial_table() {
        let t = SieveTables::build(1).unwrap();
        assert_eq!(t.limit(), 1);
        assert_eq!(t.mobius(1).unwrap(), 1);
        assert_eq!(t.mangoldt(1).unwrap(), 0.0);
        assert!(t.prime_power_witness(1).unwrap().is_none());
        assert!(matches!(t.mobius(2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn matches_hand_checked_values_up_to_thirty() {
        let t = SieveTables::build(30).unwrap();
        assert_eq!(t.mobius(30).unwrap(), -1); // 2 * 3 * 5
        assert_eq!(t.mobius(12).unwrap(), 0); // 2^2 * 3
        assert_eq!(t.mobius(6).unwrap(), 1);
        assert_eq!(t.mangoldt(8).unwrap(), 2.0f64.ln());
        assert_eq!(t.mangoldt(6).unwrap(), 0.0);
        assert_eq!(t.prime_power_witness(8).unwrap(), Some((2, 3)));
        assert_eq!(t.prime_power_witness(27).unwrap(), Some((3, 3)));
        assert_eq!(t.smallest_prime_factor(21).unwrap(), 3);
        assert!(t.is_prime(29).unwrap());
        assert!(!t.is_prime(1).unwrap());
        assert_eq!(
            t.factorize(24).unwrap(),
            Factorization {
                n: 24,
                factors: vec![(2, 3), (3, 1)]
            }
        );
        assert_eq!(t.divisors(28).unwrap(), vec![1, 2, 4, 7, 14, 28]);
    }

    #[test]
    fn prime_power_prefix_is_sorted_and_complete() {
        let t = SieveTables::build(100).unwrap();
        let prefix = t.prime_powers_upto(100);
        assert!(prefix.windows(2).all(|w| w[0].value < w[1].value));
        // pi(100) = 25 primes, plus the higher powers 4,8,16,32,64, then
        // 9,27,81, then 25 and 49: 35 prime powers up to 100.
        assert_eq!(prefix.len(), 35);
        assert_eq!(t.prime_powers_upto(2).len(), 1);
        assert_eq!(t.prime_powers_upto(1).len(), 0);
    }
}
