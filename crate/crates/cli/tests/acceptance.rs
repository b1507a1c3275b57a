//! Acceptance gate: twelve frozen criteria, one test per criterion.
//!
//! Each test re-derives its reference data from oracles that share no code
//! with the library (trial division, boolean Eratosthenes sieve, naive
//! double loops, direct enumeration, frozen high-precision constants) and
//! ends by printing one machine-greppable PASS line. Tolerances are pinned
//! here and must not be retuned to make a red criterion green.

use std::process::Command;
use std::sync::LazyLock;

use primelab_core::harness::{
    verify_dirichlet_ap, verify_lemma6, verify_pnt, verify_thm9, verify_wintner, ExperimentOptions,
    GSpec, Outcome,
};
use primelab_core::series::{dirichlet_convolution, CoefficientSeries};
use primelab_core::summatory::{
    chebyshev_psi, conv_summatory, mertens, pi_via_partial_summation, power_sum_ap, prime_pi,
    psi_ap,
};
use primelab_core::zeta::{
    lambda_series_partial, neg_zeta_prime_over_zeta_sq, stieltjes_constants, zeta_em, ComplexValue,
};
use primelab_core::SieveTables;

static TABLES: LazyLock<SieveTables> = LazyLock::new(|| SieveTables::build(1_000_000).unwrap());

const DECADES: [u64; 4] = [1_000, 10_000, 100_000, 1_000_000];
// Frozen references from an independent 50-digit run.
const ZETA_2: f64 = 1.644_934_066_848_226_4;
const ZETA_PRIME_2: f64 = -0.937_548_254_315_843_8;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn real(x: f64) -> ComplexValue {
    ComplexValue::new(x, 0.0)
}

fn opts() -> ExperimentOptions {
    ExperimentOptions::default()
}

/// Criterion 1 — exact identities: mu * 1 = unit indicator and
/// 1 * Lambda = log, cell by cell to 1e-9 at N = 1e6; the log-weighted
/// prime count agrees with the direct count to 1e-6 relative at every
/// decade checkpoint.
#[test]
fn criterion_01_exact_identities() {
    let n = 1_000_000u64;
    let mob = CoefficientSeries::mobius(&TABLES, n).unwrap();
    let ones = CoefficientSeries::ones(n).unwrap();
    let e = dirichlet_convolution(&mob, &ones).unwrap();
    assert!((e.get(1) - 1.0).abs() < 1e-9);
    for m in 2..=n {
        assert!(e.get(m).abs() < 1e-9, "mu*1 nonzero at {m}");
    }

    let lam = CoefficientSeries::mangoldt(&TABLES, n).unwrap();
    let log = dirichlet_convolution(&ones, &lam).unwrap();
    for m in 1..=n {
        assert!(
            (log.get(m) - (m as f64).ln()).abs() < 1e-9,
            "1*Lambda != log at {m}"
        );
    }

    for x in DECADES {
        let direct = prime_pi(x, &TABLES).unwrap() as f64;
        let weighted = pi_via_partial_summation(x, &TABLES).unwrap();
        assert!(
            (weighted - direct).abs() < 1e-6 * direct,
            "partial-summation count off at {x}"
        );
    }
    println!(
        "criterion 01 PASS: convolution identities and the partial-summation prime count hold"
    );
}

/// Criterion 2 — pi(1e6) = 78498 against an independent boolean sieve;
/// pi(x) log x / x strictly decreases across the decades and lands at
/// 1.084 +/- 0.001.
#[test]
fn criterion_02_prime_counting_trend() {
    let limit = 1_000_000usize;
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut p = 2usize;
    while p * p <= limit {
        if is_prime[p] {
            let mut m = p * p;
            while m <= limit {
                is_prime[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    let oracle_count = is_prime.iter().filter(|&&b| b).count() as u64;
    assert_eq!(oracle_count, 78_498);
    assert_eq!(prime_pi(1_000_000, &TABLES).unwrap(), 78_498);

    let mut prev = f64::INFINITY;
    let mut last = 0.0;
    for x in DECADES {
        let ratio = prime_pi(x, &TABLES).unwrap() as f64 * (x as f64).ln() / x as f64;
        assert!(ratio < prev, "ratio must decrease at x = {x}");
        prev = ratio;
        last = ratio;
    }
    assert!((last - 1.084).abs() <= 0.001, "final ratio {last}");

    let v = verify_pnt(1_000_000, &TABLES, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Pass);
    println!("criterion 02 PASS: pi(1e6) = 78498 and the log-weighted ratio trend holds");
}

/// Criterion 3 — psi(1e6)/1e6 within [0.99, 1.01] and |psi/x - 1|
/// decreasing across the last two decade transitions.
#[test]
fn criterion_03_psi_mean() {
    let devs: Vec<f64> = DECADES
        .iter()
        .map(|&x| (chebyshev_psi(x, &TABLES).unwrap() / x as f64 - 1.0).abs())
        .collect();
    let final_ratio = chebyshev_psi(1_000_000, &TABLES).unwrap() / 1e6;
    assert!(
        (0.99..=1.01).contains(&final_ratio),
        "psi/x = {final_ratio}"
    );
    assert!(
        devs[2] < devs[1] && devs[3] < devs[2],
        "deviations {devs:?}"
    );
    println!("criterion 03 PASS: psi(1e6)/1e6 = {final_ratio:.6} with shrinking deviations");
}

/// Criterion 4 — conv_summatory equals the naive double-loop oracle to
/// 1e-9 for every x <= 1e4, and |S(1e6)|/1e6 is below 0.05 and below the
/// 1e3 value.
#[test]
fn criterion_04_convolution_summatory() {
    // Trial-division oracle values, accumulated incrementally.
    fn mobius_oracle(n: u64) -> f64 {
        let mut m = n;
        let mut v = 0u32;
        let mut p = 2u64;
        while p * p <= m {
            if m.is_multiple_of(p) {
                m /= p;
                v += 1;
                if m.is_multiple_of(p) {
                    return 0.0;
                }
            }
            p += 1;
        }
        if m > 1 {
            v += 1;
        }
        if v.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
    fn mangoldt_oracle(n: u64) -> f64 {
        let mut m = n;
        let mut p = 2u64;
        while p * p <= m {
            if m.is_multiple_of(p) {
                while m.is_multiple_of(p) {
                    m /= p;
                }
                return if m == 1 { (p as f64).ln() } else { 0.0 };
            }
            p += 1;
        }
        if m > 1 {
            (m as f64).ln()
        } else {
            0.0
        }
    }

    let mut naive = 0.0f64;
    for x in 1..=10_000u64 {
        // Add (mu * Lambda)(x) by direct divisor enumeration.
        let mut d = 1u64;
        while d * d <= x {
            if x % d == 0 {
                naive += mobius_oracle(d) * mangoldt_oracle(x / d);
                if x / d != d {
                    naive += mobius_oracle(x / d) * mangoldt_oracle(d);
                }
            }
            d += 1;
        }
        let got = conv_summatory(x, &TABLES).unwrap();
        assert!(
            (got - naive).abs() < 1e-9,
            "S({x}) = {got} vs naive {naive}"
        );
    }

    let s_1e3 = conv_summatory(1_000, &TABLES).unwrap().abs() / 1e3;
    let s_1e6 = conv_summatory(1_000_000, &TABLES).unwrap().abs() / 1e6;
    assert!(s_1e6 < 0.05, "|S|/x at 1e6 is {s_1e6}");
    assert!(s_1e6 < s_1e3);
    println!("criterion 04 PASS: S(x) matches the naive oracle and |S(1e6)|/1e6 = {s_1e6:.6}");
}

/// Criterion 5 — |M(1e6)|/1e6 equals 2.12e-4 (exact integer 212 against an
/// independent multiplicative sieve), with the decreasing normalized trend
/// over the final decade transitions.
#[test]
fn criterion_05_mertens() {
    // Independent oracle: multiplicative sieve over prime multiples,
    // a different algorithm from the library's linear spf sieve.
    let limit = 1_000_000usize;
    let mut mu = vec![1i8; limit + 1];
    let mut sieved = vec![false; limit + 1];
    for p in 2..=limit {
        if !sieved[p] {
            let mut m = p;
            while m <= limit {
                if m > p {
                    sieved[m] = true;
                }
                mu[m] = -mu[m];
                m += p;
            }
            if let Some(p2) = p.checked_mul(p) {
                let mut m = p2;
                while m <= limit {
                    mu[m] = 0;
                    m += p2;
                }
            }
        }
    }
    let oracle_m: i64 = (1..=limit).map(|n| mu[n] as i64).sum();
    assert_eq!(oracle_m, 212);
    assert_eq!(mertens(1_000_000, &TABLES).unwrap(), 212);
    assert!((212f64 / 1e6 - 2.12e-4).abs() < 1e-9);

    let v = verify_lemma6(1_000_000, &TABLES, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Pass);
    println!("criterion 05 PASS: M(1e6) = 212 against the independent sieve, trend holds");
}

/// Criterion 6 — Wintner instance g(d) = 1/d: the empirical mean of
/// sigma(n)/n is within 1e-3 of zeta(2) at x = 1e5, and zeta_em(2) matches
/// 1.6449341 +/- 1e-6.
#[test]
fn criterion_06_wintner_instance() {
    let z2 = zeta_em(real(2.0), 10_000).unwrap().value.re;
    assert!((z2 - 1.644_934_1).abs() < 1e-6, "zeta(2) = {z2}");

    // Brute-force empirical mean of f = 1 * (1/d), i.e. sigma(n)/n.
    let x = 100_000u64;
    let mut f = vec![0.0f64; x as usize + 1];
    for d in 1..=x {
        let g = 1.0 / d as f64;
        let mut m = d;
        while m <= x {
            f[m as usize] += g;
            m += d;
        }
    }
    let mean = f[1..].iter().sum::<f64>() / x as f64;
    assert!((mean - z2).abs() < 1e-3, "empirical mean {mean} vs {z2}");

    let v = verify_wintner(&GSpec::ReciprocalDivisor, z2, 100_000, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Pass);
    let dev = v.report.checkpoints.last().unwrap().deviation.unwrap();
    assert!(dev.abs() < 1e-3);
    println!("criterion 06 PASS: mean of sigma(n)/n within 1e-3 of zeta(2) at 1e5");
}

/// Criterion 7 — the inner series of the mean-value reduction:
/// |sum_{n<=1e6} -mu(n) log(n)/n - 1| < 0.1 with per-decade |deviation|
/// decreasing over the final two transitions.
#[test]
fn criterion_07_inner_series() {
    // Direct natural-order accumulation, independent of the harness.
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    let mut devs = Vec::new();
    let mut next = 0usize;
    for n in 1..=1_000_000u64 {
        let term = -(TABLES.mobius(n).unwrap() as f64) * (n as f64).ln() / n as f64;
        let y = term - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        if next < DECADES.len() && n == DECADES[next] {
            devs.push((acc - 1.0).abs());
            next += 1;
        }
    }
    assert!(devs[3] < 0.1, "|c0(1e6) - 1| = {}", devs[3]);
    assert!(devs[2] < devs[1] && devs[3] < devs[2], "devs {devs:?}");

    let v = verify_thm9(1_000_000, &TABLES, &opts()).unwrap();
    assert_eq!(v.outcome, Outcome::Pass);
    println!("criterion 07 PASS: inner series c0(1e6) within 0.1 of 1, trend holds");
}

/// Criterion 8 — progressions: for q in {3,4,5,7} and every residue a
/// coprime to q, psi(1e6;q,a)*phi(q)/1e6 lies in [0.95, 1.05]; for prime q
/// the q-normalized form stays above 0.95.
#[test]
fn criterion_08_progressions() {
    for q in [3u64, 4, 5, 7] {
        let phi = (1..=q).filter(|&a| gcd(a, q) == 1).count() as f64;
        for a in 1..q {
            if gcd(a, q) != 1 {
                continue;
            }
            let psi = psi_ap(1_000_000, q, a, &TABLES).unwrap();
            let phi_ratio = psi * phi / 1e6;
            assert!(
                (0.95..=1.05).contains(&phi_ratio),
                "phi-ratio for ({q},{a}) is {phi_ratio}"
            );
            if q != 4 {
                let q_ratio = psi * q as f64 / 1e6;
                assert!(q_ratio >= 0.95, "q-ratio for ({q},{a}) is {q_ratio}");
            }
            let v = verify_dirichlet_ap(q, a, 1_000_000, &TABLES, &opts()).unwrap();
            assert_eq!(v.outcome, Outcome::Pass, "verdict for ({q},{a})");
        }
    }
    println!("criterion 08 PASS: all coprime classes mod 3,4,5,7 equidistribute within 0.05");
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Criterion 9 — Ramanujan sums: the Holder closed form equals the
/// exponential-sum definition with pre-rounding gap below 1e-9 for all
/// q <= 50, 0 <= a <= q, and c_q(0) = phi(q).
#[test]
fn criterion_09_ramanujan_sums() {
    use primelab_core::arith::{euler_phi, ramanujan_sum_expsum, ramanujan_sum_holder};
    for q in 1..=50u64 {
        for a in 0..=q as i64 {
            let exact = ramanujan_sum_holder(q, a).unwrap() as f64;
            let trig = ramanujan_sum_expsum(q, a).unwrap();
            assert!(
                (exact - trig).abs() < 1e-9,
                "c_{q}({a}) gap {}",
                (exact - trig).abs()
            );
        }
        assert_eq!(
            ramanujan_sum_holder(q, 0).unwrap(),
            euler_phi(q).unwrap() as i64
        );
    }
    println!("criterion 09 PASS: Holder form equals the exponential sum for all q <= 50");
}

/// Criterion 10 — progression power sums: the closed form equals direct
/// enumeration for all x <= 1e4, q <= 50, a < q; the normalized deviation
/// stays below 0.05 at x = 1e5 for every q <= 100.
#[test]
fn criterion_10_power_sums() {
    for q in 1..=50u64 {
        for a in 0..q {
            let mut running: u128 = 0;
            let mut next = a;
            for x in 1..=10_000u64 {
                while next <= x {
                    running += next as u128;
                    next += q;
                }
                assert_eq!(
                    power_sum_ap(x, q, a).unwrap().exact,
                    running,
                    "closed form off at x={x} q={q} a={a}"
                );
            }
        }
    }
    let x = 100_000u64;
    for q in 1..=100u64 {
        for a in 0..q {
            let s = power_sum_ap(x, q, a).unwrap();
            let dev = (s.exact as f64 - s.leading).abs() / ((x as f64) * (x as f64) / q as f64);
            assert!(dev < 0.05, "deviation {dev} at q={q} a={a}");
        }
    }
    println!("criterion 10 PASS: progression power sums exact to 1e4 and tight at 1e5");
}

/// Criterion 11 — zeta numerics: gamma_0 within 1e-8 of the
/// limit-definition oracle; -zeta'/zeta^2 equals 1 exactly at s = 1 and
/// stays within 1e-4 of 1 at s = 1 + 1e-6; the Lambda-series residual at
/// s = 2, N = 1e6 is below 1e-4.
#[test]
fn criterion_11_zeta_numerics() {
    // Limit-definition oracle for gamma_0: harmonic sum minus the midpoint
    // logarithm, summed smallest-terms-first for accuracy.
    let n = 10_000_000u64;
    let mut harmonic = 0.0f64;
    for k in (1..=n).rev() {
        harmonic += 1.0 / k as f64;
    }
    let oracle_gamma = harmonic - ((n as f64) + 0.5).ln();
    assert!((oracle_gamma - EULER_GAMMA).abs() < 1e-9, "oracle sanity");

    let exp = stieltjes_constants(4, 10_000_000).unwrap();
    let gamma0 = exp.stieltjes()[0];
    assert!(
        (gamma0 - oracle_gamma).abs() < 1e-8,
        "gamma_0 = {gamma0} vs oracle {oracle_gamma}"
    );

    let at_pole = neg_zeta_prime_over_zeta_sq(real(1.0), &exp).unwrap();
    assert_eq!(at_pole.re, 1.0);
    assert_eq!(at_pole.im, 0.0);
    let near = neg_zeta_prime_over_zeta_sq(real(1.0 + 1e-6), &exp).unwrap();
    assert!((near.re - 1.0).abs() < 1e-4);

    let series = lambda_series_partial(real(2.0), 1_000_000, &TABLES).unwrap();
    let residual = (series.value.re - (-ZETA_PRIME_2 / ZETA_2)).abs();
    assert!(residual < 1e-4, "Lambda-series residual {residual}");
    println!(
        "criterion 11 PASS: gamma_0, the pole-cancelling ratio, and the Lambda series check out"
    );
}

/// Criterion 12 — determinism: consecutive CLI runs of verify commands
/// produce byte-identical standard output.
#[test]
fn criterion_12_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_primelab");
    for args in [
        ["verify", "pnt", "--limit", "1000000"],
        ["verify", "lemma6", "--limit", "1000000"],
    ] {
        let run = || {
            Command::new(bin)
                .args(args)
                .output()
                .expect("failed to spawn the CLI binary")
        };
        let first = run();
        let second = run();
        assert!(
            first.status.success(),
            "{:?} exited with {:?}: {}",
            args,
            first.status,
            String::from_utf8_lossy(&first.stderr)
        );
        assert_eq!(first.status.code(), second.status.code());
        assert_eq!(
            first.stdout, second.stdout,
            "stdout differs between runs of {args:?}"
        );
        assert!(!first.stdout.is_empty());
    }
    println!("criterion 12 PASS: verify runs are byte-identical across invocations");
}
