//! Dirichlet-series coefficient vectors and their convolution algebra.
//!
//! A [`CoefficientSeries`] stores `f(1), ..., f(limit)` densely. The Möbius
//! and von Mangoldt constructors read the shared sieve tables, so the
//! identities `mu * 1 = e` and `mu * log = Lambda` can be checked cell by
//! cell against independently built series.

use crate::error::{Error, Result};
use crate::sieve::SieveTables;

/// Arithmetic function tabulated on `1..=limit`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSeries {
    limit: u64,
    /// `values[n - 1]` is the coefficient at `n`.
    values: Vec<f64>,
}

impl CoefficientSeries {
    fn with_values(limit: u64, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), limit as usize);
        Self { limit, values }
    }

    /// Tabulates `f(n)` for `n = 1..=limit`, rejecting non-finite values.
    pub fn from_fn(limit: u64, f: impl Fn(u64) -> f64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::SizeLimit(
                "coefficient series limit must be at least 1".into(),
            ));
        }
        let mut values = Vec::with_capacity(limit as usize);
        for n in 1..=limit {
            let v = f(n);
            if !v.is_finite() {
                return Err(Error::Domain(format!(
                    "coefficient at n = {n} is not finite"
                )));
            }
            values.push(v);
        }
        Ok(Self::with_values(limit, values))
    }

    /// The constant function 1.
    pub fn ones(limit: u64) -> Result<Self> {
        Self::from_fn(limit, |_| 1.0)
    }

    /// The convolution unit `e`: 1 at `n = 1`, zero elsewhere.
    pub fn unit_indicator(limit: u64) -> Result<Self> {
        Self::from_fn(limit, |n| if n == 1 { 1.0 } else { 0.0 })
    }

    /// The Möbius function, copied from the sieve tables.
    pub fn mobius(tables: &SieveTables, limit: u64) -> Result<Self> {
        if limit > tables.limit() {
            return Err(Error::OutOfRange(format!(
                "mobius series limit {limit} exceeds the sieve limit {}",
                tables.limit()
            )));
        }
        Self::from_fn(limit, |n| f64::from(tables.mu[n as usize]))
    }

    /// The von Mangoldt function, expanded from the sparse prime-power list.
    pub fn mangoldt(tables: &SieveTables, limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::SizeLimit(
                "coefficient series limit must be at least 1".into(),
            ));
        }
        if limit > tables.limit() {
            return Err(Error::OutOfRange(format!(
                "mangoldt series limit {limit} exceeds the sieve limit {}",
                tables.limit()
            )));
        }
        let mut values = vec![0.0; limit as usize];
        for pp in tables.prime_powers_upto(limit) {
            values[(pp.value - 1) as usize] = pp.log_base;
        }
        Ok(Self::with_values(limit, values))
    }

    /// Largest tabulated argument.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Coefficient at `n` (panics outside `1..=limit`; use is index-like).
    pub fn get(&self, n: u64) -> f64 {
        assert!(
            n >= 1 && n <= self.limit,
            "coefficient index {n} outside 1..={}",
            self.limit
        );
        self.values[(n - 1) as usize]
    }

    pub(crate) fn values(&self) -> &[f64] {
        &self.values
    }

    /// Restriction to `1..=limit` of a longer series.
    pub(crate) fn truncated(&self, limit: u64) -> Result<Self> {
        if limit == 0 || limit > self.limit {
            return Err(Error::OutOfRange(format!(
                "cannot truncate a series of length {} to {limit}",
                self.limit
            )));
        }
        Ok(Self::with_values(
            limit,
            self.values[..limit as usize].to_vec(),
        ))
    }
}

/// Dirichlet convolution `(f * g)(n) = sum over d | n of f(d) g(n/d)`,
/// computed over the full table in `O(limit log limit)` by iterating each
/// `d` over its multiples.
pub fn dirichlet_convolution(
    f: &CoefficientSeries,
    g: &CoefficientSeries,
) -> Result<CoefficientSeries> {
    if f.limit != g.limit {
        return Err(Error::ShapeMismatch(format!(
            "cannot convolve series of lengths {} and {}",
            f.limit, g.limit
        )));
    }
    let n = f.limit as usize;
    let mut out = vec![0.0f64; n];
    for d in 1..=n {
        let fd = f.values[d - 1];
        if fd == 0.0 {
            continue;
        }
        let mut multiple = d;
        let mut quotient = 1usize;
        while multiple <= n {
            out[multiple - 1] += fd * g.values[quotient - 1];
            multiple += d;
            quotient += 1;
        }
    }
    Ok(CoefficientSeries::with_values(f.limit, out))
}

/// A pair `(f, g)` tied by Möbius inversion: `f(n) = sum over d | n of g(d)`.
#[derive(Clone, Debug)]
pub struct MobiusPair {
    f: CoefficientSeries,
    g: CoefficientSeries,
}

impl MobiusPair {
    /// Builds the pair from `g` by computing `f = g * 1`.
    pub fn from_g(g: CoefficientSeries) -> Result<Self> {
        let ones = CoefficientSeries::ones(g.limit())?;
        let f = dirichlet_convolution(&g, &ones)?;
        Ok(Self { f, g })
    }

    /// Accepts an existing pair after verifying the inversion identity on
    /// every cell (tolerance `1e-9`).
    pub fn new(f: CoefficientSeries, g: CoefficientSeries) -> Result<Self> {
        if f.limit() != g.limit() {
            return Err(Error::ShapeMismatch(format!(
                "mobius pair lengths differ: {} vs {}",
                f.limit(),
                g.limit()
            )));
        }
        let ones = CoefficientSeries::ones(g.limit())?;
        let expected = dirichlet_convolution(&g, &ones)?;
        for n in 1..=f.limit() {
            let got = f.get(n);
            let want = expected.get(n);
            if (got - want).abs() > 1e-9 {
                return Err(Error::Normalization(format!(
                    "f({n}) = {got} does not equal the divisor sum of g ({want})"
                )));
            }
        }
        Ok(Self { f, g })
    }

    /// The summed side `f`.
    pub fn f(&self) -> &CoefficientSeries {
        &self.f
    }

    /// The generating side `g`.
    pub fn g(&self) -> &CoefficientSeries {
        &self.g
    }
}
