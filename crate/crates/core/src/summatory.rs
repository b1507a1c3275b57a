//! Summatory operators over the sieve tables: prime counting, Chebyshev
//! psi (whole line and progressions), Mertens sums, the Möbius-psi
//! convolution summatory, mean values of coefficient series, exact
//! progression power sums, and discrete Abel summation.
//!
//! All floating sums go through the compensated accumulator and iterate in
//! a fixed ascending order, so every function here is bitwise reproducible.

use crate::error::{Error, Result};
use crate::kahan::Accumulator;
use crate::report::{validate_checkpoints, Checkpoint, ConvergenceReport};
use crate::series::CoefficientSeries;
use crate::sieve::SieveTables;

fn check_x(x: u64, tables: &SieveTables, what: &str) -> Result<()> {
    if x == 0 || x > tables.limit() {
        return Err(Error::OutOfRange(format!(
            "{what} requires 1 <= x <= {}, got {x}",
            tables.limit()
        )));
    }
    Ok(())
}

fn check_residue(q: u64, a: u64, what: &str) -> Result<()> {
    if q == 0 {
        return Err(Error::OutOfRange(format!("{what} requires q >= 1")));
    }
    if a >= q {
        return Err(Error::Normalization(format!(
            "{what} requires a residue a < q, got a = {a}, q = {q}"
        )));
    }
    Ok(())
}

/// Number of primes `<= x`.
pub fn prime_pi(x: u64, tables: &SieveTables) -> Result<u64> {
    check_x(x, tables, "prime_pi")?;
    Ok(tables
        .prime_powers_upto(x)
        .iter()
        .filter(|pp| pp.exponent == 1)
        .count() as u64)
}

/// Number of primes `<= x` congruent to `a` modulo `q`.
pub fn prime_pi_ap(x: u64, q: u64, a: u64, tables: &SieveTables) -> Result<u64> {
    check_residue(q, a, "prime_pi_ap")?;
    check_x(x, tables, "prime_pi_ap")?;
    Ok(tables
        .prime_powers_upto(x)
        .iter()
        .filter(|pp| pp.exponent == 1 && pp.value % q == a)
        .count() as u64)
}

/// Prime counting recovered from the von Mangoldt function by partial
/// summation: `sum over p^k <= x of log p / log(p^k)` equals `pi(x)` once
/// the `k >= 2` terms are subtracted again, because each genuine prime
/// contributes exactly 1.
pub fn pi_via_partial_summation(x: u64, tables: &SieveTables) -> Result<f64> {
    if x < 2 {
        return Err(Error::OutOfRange(format!(
            "pi_via_partial_summation requires x >= 2, got {x}"
        )));
    }
    check_x(x, tables, "pi_via_partial_summation")?;
    let mut full = Accumulator::new();
    let mut higher = Accumulator::new();
    for pp in tables.prime_powers_upto(x) {
        let term = pp.log_base / (pp.value as f64).ln();
        full.add(term);
        if pp.exponent >= 2 {
            higher.add(term);
        }
    }
    Ok(full.total() - higher.total())
}

/// One ascending sweep over the prime powers `<= xs.last()`, snapshotting
/// the compensated partial sum of `log p` at every checkpoint. The `filter`
/// decides which prime powers contribute (whole line versus progression);
/// because snapshots never touch the accumulator, a single-checkpoint call
/// and a multi-checkpoint call produce bitwise identical values.
fn psi_prefix_sums(
    tables: &SieveTables,
    xs: &[u64],
    filter: impl Fn(u64) -> bool,
) -> Vec<(u64, f64)> {
    let last = *xs.last().expect("validated nonempty");
    let mut acc = Accumulator::new();
    let mut points = Vec::with_capacity(xs.len());
    let mut pending = xs.iter().peekable();
    for pp in tables.prime_powers_upto(last) {
        while let Some(&&x) = pending.peek() {
            if pp.value > x {
                points.push((x, acc.total()));
                pending.next();
            } else {
                break;
            }
        }
        if filter(pp.value) {
            acc.add(pp.log_base);
        }
    }
    for &x in pending {
        points.push((x, acc.total()));
    }
    points
}

/// Chebyshev `psi(x) = sum over prime powers p^k <= x of log p`.
pub fn chebyshev_psi(x: u64, tables: &SieveTables) -> Result<f64> {
    check_x(x, tables, "chebyshev_psi")?;
    Ok(psi_prefix_sums(tables, &[x], |_| true)[0].1)
}

/// Chebyshev psi restricted to the progression `n = a (mod q)`.
pub fn psi_ap(x: u64, q: u64, a: u64, tables: &SieveTables) -> Result<f64> {
    check_residue(q, a, "psi_ap")?;
    check_x(x, tables, "psi_ap")?;
    Ok(psi_prefix_sums(tables, &[x], |v| v % q == a)[0].1)
}

/// Chebyshev psi sampled along a checkpoint grid, with the progression it
/// was restricted to (if any).
#[derive(Clone, Debug, PartialEq)]
pub struct PsiCheckpointSeries {
    progression: Option<(u64, u64)>,
    points: Vec<(u64, f64)>,
}

impl PsiCheckpointSeries {
    /// `(x, psi(x))` pairs in increasing `x` order.
    pub fn points(&self) -> &[(u64, f64)] {
        &self.points
    }

    /// The `(q, a)` progression, or `None` for the whole line.
    pub fn progression(&self) -> Option<(u64, u64)> {
        self.progression
    }
}

/// Whole-line psi at every checkpoint, via one sweep of the prime powers.
pub fn psi_checkpoints(xs: &[u64], tables: &SieveTables) -> Result<PsiCheckpointSeries> {
    validate_checkpoints(xs, tables.limit())?;
    Ok(PsiCheckpointSeries {
        progression: None,
        points: psi_prefix_sums(tables, xs, |_| true),
    })
}

/// Progression psi at every checkpoint, via one sweep of the prime powers.
pub fn psi_ap_checkpoints(
    xs: &[u64],
    q: u64,
    a: u64,
    tables: &SieveTables,
) -> Result<PsiCheckpointSeries> {
    check_residue(q, a, "psi_ap_checkpoints")?;
    validate_checkpoints(xs, tables.limit())?;
    Ok(PsiCheckpointSeries {
        progression: Some((q, a)),
        points: psi_prefix_sums(tables, xs, |v| v % q == a),
    })
}

/// Mertens function `M(x) = sum over n <= x of mu(n)`, exact in `i64`.
pub fn mertens(x: u64, tables: &SieveTables) -> Result<i64> {
    check_x(x, tables, "mertens")?;
    let mut sum = 0i64;
    for n in 1..=x as usize {
        sum += i64::from(tables.mu[n]);
    }
    Ok(sum)
}

/// Mertens function at every checkpoint, via one scan of the Möbius table.
pub fn mertens_checkpoints(xs: &[u64], tables: &SieveTables) -> Result<Vec<(u64, i64)>> {
    validate_checkpoints(xs, tables.limit())?;
    let last = *xs.last().expect("validated nonempty");
    let mut sum = 0i64;
    let mut points = Vec::with_capacity(xs.len());
    let mut pending = xs.iter().peekable();
    for n in 1..=last {
        sum += i64::from(tables.mu[n as usize]);
        while let Some(&&x) = pending.peek() {
            if x == n {
                points.push((x, sum));
                pending.next();
            } else {
                break;
            }
        }
    }
    Ok(points)
}

/// Summatory function of the convolution of Möbius and von Mangoldt, in the
/// divisor-swapped form `S(x) = sum over d <= x of mu(d) * psi(floor(x/d))`.
///
/// Evaluation groups equal quotients `v = floor(x/d)` into blocks: inside a
/// block the psi factor is constant, so the Möbius factors collapse to a
/// Mertens increment and only `O(sqrt x)` distinct psi values are needed.
/// Block contributions are accumulated in increasing `d` order; the psi
/// values themselves come from one ascending prime-power sweep.
pub fn conv_summatory(x: u64, tables: &SieveTables) -> Result<f64> {
    check_x(x, tables, "conv_summatory")?;

    struct Block {
        coefficient: i64,
        quotient: u64,
    }

    let mut blocks: Vec<Block> = Vec::new();
    let mut mertens_before = 0i64;
    let mut running = 0i64;
    let mut scanned = 0u64;
    let mut d = 1u64;
    while d <= x {
        let quotient = x / d;
        let block_end = x / quotient;
        while scanned < block_end {
            scanned += 1;
            running += i64::from(tables.mu[scanned as usize]);
        }
        blocks.push(Block {
            coefficient: running - mertens_before,
            quotient,
        });
        mertens_before = running;
        d = block_end + 1;
    }

    // Quotients decrease strictly across blocks; reverse them into an
    // ascending grid and fetch all psi values in one sweep.
    let quotients: Vec<u64> = blocks.iter().rev().map(|b| b.quotient).collect();
    let psi_points = psi_prefix_sums(tables, &quotients, |_| true);

    let mut acc = Accumulator::new();
    for (i, block) in blocks.iter().enumerate() {
        let (_, psi) = psi_points[blocks.len() - 1 - i];
        acc.add(block.coefficient as f64 * psi);
    }
    Ok(acc.total())
}

/// Partial-sum trajectory of the mean value `x^{-1} sum over n <= x of f(n)`.
///
/// When `predicted` is absent the final checkpoint's normalized value is
/// used as the reference, so the last deviation is exactly zero.
pub fn mean_value_estimate(
    f: &CoefficientSeries,
    checkpoints: &[u64],
    predicted: Option<f64>,
) -> Result<ConvergenceReport> {
    validate_checkpoints(checkpoints, f.limit())?;
    if let Some(p) = predicted {
        if !p.is_finite() {
            return Err(Error::Domain("predicted mean value must be finite".into()));
        }
    }
    let last = *checkpoints.last().expect("validated nonempty");
    let mut acc = Accumulator::new();
    let mut raws = Vec::with_capacity(checkpoints.len());
    let mut idx = 0usize;
    let values = f.values();
    for n in 1..=last {
        acc.add(values[(n - 1) as usize]);
        if checkpoints[idx] == n {
            raws.push(acc.total());
            idx += 1;
        }
    }
    let reference = match predicted {
        Some(p) => p,
        None => *raws.last().expect("nonempty") / last as f64,
    };
    let report_points = checkpoints
        .iter()
        .zip(&raws)
        .map(|(&x, &raw)| {
            let normalized = raw / x as f64;
            Checkpoint {
                x,
                raw,
                normalized,
                deviation: Some(normalized - reference),
            }
        })
        .collect();
    Ok(ConvergenceReport {
        description: "mean value of the coefficient series over 1..=x".into(),
        checkpoints: report_points,
        predicted_limit: Some(reference),
    })
}

/// Exact and leading-order values of a progression power sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerSum {
    /// `sum over n <= x, n = a (mod q), n >= 0 of n`, exactly.
    pub exact: u128,
    /// The asymptotic main term `x^2 / (2q)`.
    pub leading: f64,
}

/// Sums the arithmetic progression `a, a + q, a + 2q, ...` up to `x`,
/// exactly in integer arithmetic: with `m = floor((x - a) / q)` the sum is
/// `q * m(m+1)/2 + a(m+1)`; an empty progression (`a > x`) sums to zero.
pub fn power_sum_ap(x: u64, q: u64, a: u64) -> Result<PowerSum> {
    if q == 0 {
        return Err(Error::OutOfRange("power_sum_ap requires q >= 1".into()));
    }
    if x == 0 {
        return Err(Error::OutOfRange("power_sum_ap requires x >= 1".into()));
    }
    let leading = (x as f64) * (x as f64) / (2.0 * q as f64);
    if a > x {
        return Ok(PowerSum { exact: 0, leading });
    }
    let m = ((x - a) / q) as u128;
    let overflow = || Error::OutOfRange("power sum exceeds 128 bits".into());
    let triangle = m.checked_mul(m + 1).ok_or_else(overflow)? / 2;
    let exact = (q as u128)
        .checked_mul(triangle)
        .and_then(|v| v.checked_add(a as u128 * (m + 1)))
        .ok_or_else(overflow)?;
    Ok(PowerSum { exact, leading })
}

/// Discrete Abel (partial) summation: given the partial sums
/// `values[t - 1] = R(t) = sum over n <= t of f(n)` on the integer grid
/// `t = 1..=x` and a weight `w`, returns
/// `sum over n <= x of f(n) w(n) = w(x) R(x) - sum over t < x of R(t) (w(t+1) - w(t))`.
pub fn abel_summation(values: &[f64], weight: impl Fn(u64) -> f64) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::Usage(
            "abel_summation needs partial sums on a grid of at least two points".into(),
        ));
    }
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::Domain(format!(
                "partial sum at t = {} is not finite",
                i + 1
            )));
        }
    }
    let x = values.len() as u64;
    let mut acc = Accumulator::new();
    for t in 1..x {
        let step = weight(t + 1) - weight(t);
        if !step.is_finite() {
            return Err(Error::Domain(format!(
                "weight difference at t = {t} is not finite"
            )));
        }
        acc.add(-(values[(t - 1) as usize] * step));
    }
    let boundary = weight(x);
    if !boundary.is_finite() {
        return Err(Error::Domain("weight at the endpoint is not finite".into()));
    }
    Ok(boundary * values[(x - 1) as usize] + acc.total())
}
