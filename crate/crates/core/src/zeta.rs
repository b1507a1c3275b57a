//! Zeta-function numerics around the pole at `s = 1`.
//!
//! Three evaluation regimes cover the half-plane the experiments need:
//!
//! * **Euler-Maclaurin** ([`zeta_em`], [`zeta_prime_em`]) for `Re(s) > 1`
//!   away from the pole (`|s - 1| >= 0.4`): truncated Dirichlet sum plus
//!   endpoint and three Bernoulli correction terms, with a rigorous
//!   remainder bound reported alongside the value.
//! * **Laurent/Taylor at `s = 1`** ([`zeta_taylor_eval`],
//!   [`zeta_prime_taylor_eval`]) inside the disc `|s - 1| < 0.5`, driven by
//!   Stieltjes constants from [`stieltjes_constants`]. The two regimes
//!   overlap on the annulus `0.4 <= |s - 1| < 0.5`.
//! * **The pole-cancelling ratio** ([`neg_zeta_prime_over_zeta_sq`]), which
//!   is regular at `s = 1` with value exactly 1 and switches between the
//!   first two regimes automatically.
//!
//! The derivative evaluators differentiate each Euler-Maclaurin correction
//! term analytically; no finite differences are used anywhere.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kahan::Accumulator;
use crate::sieve::SieveTables;

/// The Euler-Mascheroni constant (the zeroth Stieltjes constant).
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// Radius of the Laurent disc around `s = 1` inside which the Taylor
/// evaluators are valid.
const LAURENT_RADIUS: f64 = 0.5;

/// Minimum distance from the pole accepted by the Euler-Maclaurin
/// evaluators. Strictly below [`LAURENT_RADIUS`], so the two regimes
/// overlap on the annulus `0.4 <= |s - 1| < 0.5` and can be checked
/// against each other there.
const EM_MIN_POLE_DISTANCE: f64 = 0.4;

/// `B_{2k} / (2k)!` for `k = 1, 2, 3`: the three Bernoulli correction
/// factors used by every Euler-Maclaurin evaluation in this module.
const BERNOULLI_TERMS: [f64; 3] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30_240.0];

/// `|B_8 / 8!|`, the factor in the remainder bound after three corrections.
const EM_REMAINDER_COEFF: f64 = 1.0 / 1_209_600.0;

/// Euler-Maclaurin needs a handful of terms before the correction series
/// makes sense.
const MIN_EM_TERMS: u64 = 8;

/// Fixed summation length used when the ratio evaluator falls back to
/// Euler-Maclaurin.
const RATIO_EM_TERMS: u64 = 10_000;

/// Stieltjes summation must be long enough for the tail corrections to be
/// meaningful.
const STIELTJES_MIN_TERMS: u64 = 10_000;

/// Highest supported Stieltjes order.
const MAX_STIELTJES_ORDER: u32 = 4;

/// A complex number as a plain value pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexValue {
    /// Real part.
    pub re: f64,
    /// Imaginary part.
    pub im: f64,
}

impl ComplexValue {
    /// Builds a complex value from its parts.
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_complex(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }

    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Result of evaluating a Dirichlet series partially: the point, the number
/// of terms summed, the value, and a rigorous bound on the truncated tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesEvaluation {
    /// Evaluation point.
    pub s: ComplexValue,
    /// Number of terms the truncated sum used.
    pub terms_used: u64,
    /// The computed value.
    pub value: ComplexValue,
    /// Upper bound on the magnitude of the omitted tail.
    pub tail_bound: f64,
}

/// Compensated accumulator for complex terms (one Neumaier sum per part).
struct ComplexAccumulator {
    re: Accumulator,
    im: Accumulator,
}

impl ComplexAccumulator {
    fn new() -> Self {
        Self {
            re: Accumulator::new(),
            im: Accumulator::new(),
        }
    }

    fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

/// `base^{-s}` for `base >= 1`, via `exp(-s ln base)`.
fn power_neg(base: f64, s: Complex64) -> Complex64 {
    let log = base.ln();
    let scale = (-s.re * log).exp();
    let angle = -s.im * log;
    Complex64::new(scale * angle.cos(), scale * angle.sin())
}

/// Rising factorial `(s)(s+1)...(s+m-1)`.
fn pochhammer(s: Complex64, m: u32) -> Complex64 {
    let mut product = Complex64::new(1.0, 0.0);
    for j in 0..m {
        product *= s + f64::from(j);
    }
    product
}

/// Logarithmic derivative of the rising factorial:
/// `sum over j < m of 1 / (s + j)`.
fn pochhammer_harmonic(s: Complex64, m: u32) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..m {
        sum += one / (s + f64::from(j));
    }
    sum
}

/// Remainder bound after three Bernoulli corrections:
/// `|B_8/8!| * |(s)_7| * N^{-sigma-7} * |s+7| / (sigma+7)`.
fn em_tail_bound(s: Complex64, nf: f64) -> f64 {
    EM_REMAINDER_COEFF
        * pochhammer(s, 7).norm()
        * nf.powf(-s.re - 7.0)
        * ((s + 7.0).norm() / (s.re + 7.0))
}

/// Euler-Maclaurin zeta evaluation without domain guards. The formula
/// itself analytically continues a little past `Re(s) = 1`, which the
/// pole-cancelling ratio relies on along the `Re(s) = 1` line.
pub(crate) fn zeta_em_raw(s: Complex64, terms: u64) -> (Complex64, f64) {
    let nf = terms as f64;
    let mut acc = ComplexAccumulator::new();
    for k in 1..terms {
        acc.add(power_neg(k as f64, s));
    }
    let n_pow = power_neg(nf, s); // N^{-s}
    let mut value = acc.total() + n_pow * nf / (s - 1.0) + n_pow * 0.5;
    let mut shift = nf.recip(); // N^{-1}, N^{-3}, N^{-5}
    for (i, coeff) in BERNOULLI_TERMS.iter().enumerate() {
        let m = (2 * i + 1) as u32;
        value += *coeff * pochhammer(s, m) * n_pow * shift;
        shift /= nf * nf;
    }
    (value, em_tail_bound(s, nf))
}

/// Euler-Maclaurin zeta derivative without domain guards; every correction
/// term of [`zeta_em_raw`] is differentiated analytically in `s`.
pub(crate) fn zeta_prime_em_raw(s: Complex64, terms: u64) -> (Complex64, f64) {
    let nf = terms as f64;
    let ln_n = nf.ln();
    let mut acc = ComplexAccumulator::new();
    for k in 2..terms {
        let kf = k as f64;
        acc.add(-kf.ln() * power_neg(kf, s));
    }
    let n_pow = power_neg(nf, s); // N^{-s}
    let n_pow1 = n_pow * nf; // N^{1-s}
    let sm1 = s - 1.0;
    let mut value = acc.total() - ln_n * n_pow1 / sm1 - n_pow1 / (sm1 * sm1) - ln_n * n_pow * 0.5;
    let mut shift = nf.recip();
    for (i, coeff) in BERNOULLI_TERMS.iter().enumerate() {
        let m = (2 * i + 1) as u32;
        let poch = pochhammer(s, m);
        let poch_deriv = poch * pochhammer_harmonic(s, m);
        value += *coeff * n_pow * shift * (poch_deriv - poch * ln_n);
        shift /= nf * nf;
    }
    (value, em_tail_bound(s, nf) * (ln_n + 2.0))
}

fn check_em_domain(s: ComplexValue, terms: u64) -> Result<Complex64> {
    if !s.is_finite() {
        return Err(Error::Domain("evaluation point must be finite".into()));
    }
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "Euler-Maclaurin zeta requires Re(s) > 1, got Re(s) = {}",
            s.re
        )));
    }
    let z = s.to_complex();
    if (z - 1.0).norm() < EM_MIN_POLE_DISTANCE {
        return Err(Error::Domain(format!(
            "s = {} + {}i is closer to the pole than |s - 1| = {EM_MIN_POLE_DISTANCE}; \
             use the Taylor evaluators there",
            s.re, s.im
        )));
    }
    if terms < MIN_EM_TERMS {
        return Err(Error::Usage(format!(
            "Euler-Maclaurin evaluation needs at least {MIN_EM_TERMS} terms, got {terms}"
        )));
    }
    Ok(z)
}

/// Riemann zeta by Euler-Maclaurin summation for `Re(s) > 1` with
/// `|s - 1| >= 0.5`. The reported `tail_bound` rigorously dominates the
/// truncation error of the three-term Bernoulli correction.
pub fn zeta_em(s: ComplexValue, terms: u64) -> Result<SeriesEvaluation> {
    let z = check_em_domain(s, terms)?;
    let (value, tail_bound) = zeta_em_raw(z, terms);
    Ok(SeriesEvaluation {
        s,
        terms_used: terms,
        value: ComplexValue::from_complex(value),
        tail_bound,
    })
}

/// Derivative of zeta by analytically differentiated Euler-Maclaurin
/// summation, on the same domain as [`zeta_em`].
pub fn zeta_prime_em(s: ComplexValue, terms: u64) -> Result<SeriesEvaluation> {
    let z = check_em_domain(s, terms)?;
    let (value, tail_bound) = zeta_prime_em_raw(z, terms);
    Ok(SeriesEvaluation {
        s,
        terms_used: terms,
        value: ComplexValue::from_complex(value),
        tail_bound,
    })
}

/// Evaluates a polynomial (ascending coefficients) by Horner's rule.
fn poly_eval(coefficients: &[f64], x: f64) -> f64 {
    let mut value = 0.0;
    for &c in coefficients.iter().rev() {
        value = value * x + c;
    }
    value
}

/// Given `P_m` with `f^(m)(t) = P_m(ln t) / t^(m+1)` for `f(t) = ln^k t / t`,
/// returns `P_{m+1} = P_m' - (m + 1) P_m`.
fn poly_step(p: &[f64], m: usize) -> Vec<f64> {
    let mut next = vec![0.0; p.len()];
    for i in 1..p.len() {
        next[i - 1] += p[i] * i as f64;
    }
    for i in 0..p.len() {
        next[i] -= (m as f64 + 1.0) * p[i];
    }
    next
}

/// Laurent data of zeta at `s = 1`: the (simple) pole and the Stieltjes
/// constants `gamma_0..=gamma_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentExpansionAtOne {
    stieltjes: Vec<f64>,
}

impl LaurentExpansionAtOne {
    /// Wraps externally computed Stieltjes constants. Requires constants
    /// through order 2 at least, and checks that `gamma_0` matches the
    /// Euler-Mascheroni constant to `1e-6` (any genuine computation does).
    pub fn new(stieltjes: Vec<f64>) -> Result<Self> {
        if stieltjes.len() < 3 {
            return Err(Error::Usage(
                "the Laurent expansion needs Stieltjes constants through order 2".into(),
            ));
        }
        for (k, g) in stieltjes.iter().enumerate() {
            if !g.is_finite() {
                return Err(Error::Domain(format!(
                    "Stieltjes constant gamma_{k} is not finite"
                )));
            }
        }
        if (stieltjes[0] - EULER_MASCHERONI).abs() > 1e-6 {
            return Err(Error::Domain(format!(
                "gamma_0 = {} is not within 1e-6 of the Euler-Mascheroni constant",
                stieltjes[0]
            )));
        }
        Ok(Self { stieltjes })
    }

    /// The constants `gamma_0, gamma_1, ...` in order.
    pub fn stieltjes(&self) -> &[f64] {
        &self.stieltjes
    }

    /// Highest available order `K`.
    pub fn order(&self) -> usize {
        self.stieltjes.len() - 1
    }

    /// Coefficient of `1/(s - 1)`; the pole of zeta is simple with
    /// residue one.
    pub fn pole_coefficient(&self) -> f64 {
        1.0
    }
}

/// Stieltjes constants `gamma_0..=gamma_max(k_max, 2)` by Euler-Maclaurin
/// acceleration of `sum over n <= N of ln^k n / n - ln^(k+1) N / (k+1)`.
///
/// One pass over `n` feeds all orders simultaneously; the endpoint and
/// three Bernoulli corrections for `f(t) = ln^k t / t` use the exact
/// polynomial recurrence for the derivatives of `f`.
pub fn stieltjes_constants(k_max: u32, terms: u64) -> Result<LaurentExpansionAtOne> {
    if k_max > MAX_STIELTJES_ORDER {
        return Err(Error::UnsupportedOrder(format!(
            "Stieltjes constants are supported through order {MAX_STIELTJES_ORDER}, got {k_max}"
        )));
    }
    if terms < STIELTJES_MIN_TERMS {
        return Err(Error::Usage(format!(
            "stieltjes_constants needs at least {STIELTJES_MIN_TERMS} terms, got {terms}"
        )));
    }
    let order = k_max.max(2) as usize;
    let nf = terms as f64;
    let ln_n = nf.ln();

    let mut sums = vec![Accumulator::new(); order + 1];
    for n in 1..=terms {
        let x = n as f64;
        let log = x.ln();
        let mut term = x.recip();
        sums[0].add(term);
        for sum in sums.iter_mut().skip(1) {
            term *= log;
            sum.add(term);
        }
    }

    let mut gammas = Vec::with_capacity(order + 1);
    for (k, sum) in sums.iter().enumerate() {
        let mut value = sum.total() - ln_n.powi(k as i32 + 1) / (k as f64 + 1.0);
        // P_0 = L^k represents f(t) = ln^k t / t itself.
        let mut poly = vec![0.0f64; k + 1];
        poly[k] = 1.0;
        value -= 0.5 * poly_eval(&poly, ln_n) / nf;
        let mut next_power = nf; // N^(m+1) tracked incrementally
        for (j, coeff) in BERNOULLI_TERMS.iter().enumerate() {
            // Advance from P_{2j-1} to P_{2j+1} (from P_0 to P_1 first).
            let start = if j == 0 { 0 } else { 2 * j - 1 };
            for m in start..(2 * j + 1) {
                poly = poly_step(&poly, m);
                next_power *= nf;
            }
            value -= coeff * poly_eval(&poly, ln_n) / next_power;
        }
        gammas.push(value);
    }
    LaurentExpansionAtOne::new(gammas)
}

fn check_taylor_domain(s: ComplexValue) -> Result<Complex64> {
    if !s.is_finite() {
        return Err(Error::Domain("evaluation point must be finite".into()));
    }
    let w = s.to_complex() - 1.0;
    let radius = w.norm();
    if radius == 0.0 {
        return Err(Error::Pole("zeta has a simple pole at s = 1".into()));
    }
    if radius >= LAURENT_RADIUS {
        return Err(Error::Domain(format!(
            "s = {} + {}i lies outside the Laurent disc |s - 1| < {LAURENT_RADIUS}; \
             use the Euler-Maclaurin evaluators there",
            s.re, s.im
        )));
    }
    Ok(w)
}

/// Zeta inside the Laurent disc:
/// `1/(s-1) + sum over n of (-1)^n gamma_n (s-1)^n / n!`.
pub fn zeta_taylor_eval(
    s: ComplexValue,
    expansion: &LaurentExpansionAtOne,
) -> Result<ComplexValue> {
    let w = check_taylor_domain(s)?;
    let one = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut monomial = one; // w^n / n!
    let mut sign = 1.0;
    for (n, gamma) in expansion.stieltjes().iter().enumerate() {
        sum += sign * gamma * monomial;
        monomial = monomial * w / (n as f64 + 1.0);
        sign = -sign;
    }
    Ok(ComplexValue::from_complex(one / w + sum))
}

/// Zeta derivative inside the Laurent disc:
/// `-1/(s-1)^2 + sum over n >= 1 of (-1)^n gamma_n (s-1)^(n-1) / (n-1)!`.
pub fn zeta_prime_taylor_eval(
    s: ComplexValue,
    expansion: &LaurentExpansionAtOne,
) -> Result<ComplexValue> {
    let w = check_taylor_domain(s)?;
    let one = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut monomial = one; // w^(n-1) / (n-1)!
    let mut sign = -1.0;
    for (n, gamma) in expansion.stieltjes().iter().enumerate().skip(1) {
        sum += sign * gamma * monomial;
        monomial = monomial * w / (n as f64);
        sign = -sign;
    }
    Ok(ComplexValue::from_complex(-(one / (w * w)) + sum))
}

/// The pole-cancelling ratio `-zeta'(s) / zeta(s)^2`, regular on
/// `Re(s) >= 1` with value exactly 1 at `s = 1`.
///
/// Inside the Laurent disc the `(s-1)^2` factors are cancelled symbolically:
/// with `A = zeta'(s) + (s-1)^{-2}` and `B = zeta(s) - (s-1)^{-1}` summed
/// from the Stieltjes constants, the ratio equals
/// `(1 - w^2 A) / (1 + w B)^2` with `w = s - 1`, which needs no division by
/// small quantities. Outside the disc the Euler-Maclaurin evaluators are
/// used with a fixed summation length.
pub fn neg_zeta_prime_over_zeta_sq(
    s: ComplexValue,
    expansion: &LaurentExpansionAtOne,
) -> Result<ComplexValue> {
    if !s.is_finite() {
        return Err(Error::Domain("evaluation point must be finite".into()));
    }
    if s.re < 1.0 {
        return Err(Error::Domain(format!(
            "the ratio is evaluated on Re(s) >= 1, got Re(s) = {}",
            s.re
        )));
    }
    if s.re == 1.0 && s.im == 0.0 {
        return Ok(ComplexValue::new(1.0, 0.0));
    }
    let z = s.to_complex();
    let w = z - 1.0;
    if w.norm() < LAURENT_RADIUS {
        let gammas = expansion.stieltjes();
        let one = Complex64::new(1.0, 0.0);

        // A = sum over n >= 1 of (-1)^n gamma_n w^(n-1) / (n-1)!
        let mut a = Complex64::new(0.0, 0.0);
        let mut monomial = one;
        let mut sign = -1.0;
        for (n, gamma) in gammas.iter().enumerate().skip(1) {
            a += sign * gamma * monomial;
            monomial = monomial * w / (n as f64);
            sign = -sign;
        }

        // B = sum over n >= 0 of (-1)^n gamma_n w^n / n!
        let mut b = Complex64::new(0.0, 0.0);
        let mut monomial = one;
        let mut sign = 1.0;
        for (n, gamma) in gammas.iter().enumerate() {
            b += sign * gamma * monomial;
            monomial = monomial * w / (n as f64 + 1.0);
            sign = -sign;
        }

        let numerator = one - w * w * a;
        let denominator = one + w * b;
        Ok(ComplexValue::from_complex(
            numerator / (denominator * denominator),
        ))
    } else {
        let (zeta, _) = zeta_em_raw(z, RATIO_EM_TERMS);
        let (zeta_prime, _) = zeta_prime_em_raw(z, RATIO_EM_TERMS);
        Ok(ComplexValue::from_complex(-zeta_prime / (zeta * zeta)))
    }
}

/// Partial sum of the von Mangoldt Dirichlet series
/// `sum over n <= N of Lambda(n) n^{-s}` (which converges to
/// `-zeta'(s)/zeta(s)` for `Re(s) > 1`), with the integral-comparison tail
/// bound `N^{1-sigma} (ln N / (sigma-1) + (sigma-1)^{-2}) + ln N * N^{-sigma}`.
pub fn lambda_series_partial(
    s: ComplexValue,
    series_length: u64,
    tables: &SieveTables,
) -> Result<SeriesEvaluation> {
    if !s.is_finite() {
        return Err(Error::Domain("evaluation point must be finite".into()));
    }
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "the von Mangoldt series converges only for Re(s) > 1, got Re(s) = {}",
            s.re
        )));
    }
    if series_length == 0 || series_length > tables.limit() {
        return Err(Error::OutOfRange(format!(
            "series length must lie in 1..={}, got {series_length}",
            tables.limit()
        )));
    }
    let z = s.to_complex();
    let mut acc = ComplexAccumulator::new();
    for pp in tables.prime_powers_upto(series_length) {
        acc.add(pp.log_base * power_neg(pp.value as f64, z));
    }
    let sigma = s.re;
    let nf = series_length as f64;
    let ln_n = nf.ln();
    let tail_bound = nf.powf(1.0 - sigma) * (ln_n / (sigma - 1.0) + (sigma - 1.0).powi(-2))
        + ln_n * nf.powf(-sigma);
    Ok(SeriesEvaluation {
        s,
        terms_used: series_length,
        value: ComplexValue::from_complex(acc.total()),
        tail_bound,
    })
}
