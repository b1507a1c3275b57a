//! Subcommand dispatch: validates arguments, builds tables, runs
//! experiments, and routes the rendered output.

use std::str::FromStr;

use primelab_core::arith::euler_phi;
use primelab_core::harness::{
    verify_axer, verify_dirichlet_ap, verify_lemma11, verify_lemma5, verify_lemma6, verify_pnt,
    verify_psi_mean, verify_thm10_formula, verify_thm9, verify_wintner, ExperimentOptions, GSpec,
    Outcome, TheoremVerdict,
};
use primelab_core::report::CheckpointGrid;
use primelab_core::summatory::{
    mertens_checkpoints, prime_pi, psi_ap_checkpoints, psi_checkpoints,
};
use primelab_core::zeta::{stieltjes_constants, zeta_em, zeta_taylor_eval, ComplexValue};
use primelab_core::{Error, SieveTables};

use crate::config::{
    Cli, Command, Experiment, OutputArgs, ProgressionArgs, StieltjesArgs, TableArgs, VerifyArgs,
    ZetaArgs,
};
use crate::output::{emit, make_row, render, Row};

/// Sieve sizes above this need --allow-large (roughly 1.7 GB of tables).
const LARGE_SIEVE_THRESHOLD: u64 = 100_000_000;
/// Default progression for dirichlet, thm10, and lemma11.
const DEFAULT_MODULUS: u64 = 3;
const DEFAULT_RESIDUE: u64 = 1;
/// Default inner-series length for thm10.
const THM10_DEFAULT_TERMS: u64 = 10_000_000;
/// Truncation for zeta values used as predicted limits.
const PREDICTION_TERMS: u64 = 10_000;
/// Laurent-disc radius around s = 1 (mirrors the library's domain split).
const LAURENT_RADIUS: f64 = 0.5;
/// Expansion order used when zeta is evaluated through the Laurent disc.
const DISC_ORDER: u32 = 4;
/// Floor on the reference-sum length behind the Laurent route.
const DISC_MIN_TERMS: u64 = 10_000;

/// How a successful run ended.
pub enum Completion {
    /// Table emitted; experiment (if any) did not fail.
    Clean,
    /// Experiment ran to completion and its verdict is FAIL.
    FailedVerdict,
}

/// Failure modes with distinct exit codes.
pub enum RunError {
    /// Invalid arguments or a domain/range rejection (exit 2).
    Usage(String),
    /// The output file could not be written (exit 3).
    Io(std::io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

type RunResult<T> = Result<T, RunError>;

/// Executes one parsed invocation.
pub fn run(cli: Cli) -> RunResult<Completion> {
    match cli.command {
        Command::Sieve(args) => run_sieve(&args),
        Command::Psi(args) => run_psi(&args),
        Command::Pi(args) => run_pi(&args),
        Command::Mertens(args) => run_mertens(&args),
        Command::Zeta(args) => run_zeta(&args),
        Command::Stieltjes(args) => run_stieltjes(&args),
        Command::Verify(args) => run_verify(&args),
    }
}

// ---------------------------------------------------------------------------
// Shared validation
// ---------------------------------------------------------------------------

fn validate_table_args(args: &TableArgs) -> RunResult<Vec<u64>> {
    if args.limit == 0 {
        return Err(RunError::Usage("--limit must be at least 1".into()));
    }
    if let Some(t) = args.tolerance {
        if t.is_nan() || t <= 0.0 {
            return Err(RunError::Usage(format!(
                "--tolerance must be positive, got {t}"
            )));
        }
    }
    let grid = CheckpointGrid::from_str(&args.checkpoints)?;
    Ok(grid.checkpoints(args.limit)?)
}

fn check_memory_guard(size: u64, allow_large: bool) -> RunResult<()> {
    if size > LARGE_SIEVE_THRESHOLD && !allow_large {
        return Err(RunError::Usage(format!(
            "a table of size {size} exceeds the {LARGE_SIEVE_THRESHOLD}-entry memory \
             guard; pass --allow-large to proceed"
        )));
    }
    Ok(())
}

fn build_tables(limit: u64, allow_large: bool) -> RunResult<SieveTables> {
    check_memory_guard(limit, allow_large)?;
    Ok(SieveTables::build(limit)?)
}

fn emit_rows(rows: &[Row], out: &OutputArgs) -> RunResult<()> {
    let table = render(rows, out.format);
    emit(&table, out.output.as_deref())?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Table subcommands
// ---------------------------------------------------------------------------

fn run_sieve(args: &TableArgs) -> RunResult<Completion> {
    let xs = validate_table_args(args)?;
    let tables = build_tables(args.limit, args.allow_large)?;
    let predicted = 1.0
        / zeta_em(ComplexValue::new(2.0, 0.0), PREDICTION_TERMS)?
            .value
            .re;

    let mut rows = Vec::with_capacity(xs.len());
    let mut squarefree = 0u64;
    let mut next = 0usize;
    for n in 1..=args.limit {
        if tables.mobius(n)? != 0 {
            squarefree += 1;
        }
        if xs[next] == n {
            let raw = squarefree as f64;
            let normalized = raw / n as f64;
            rows.push(make_row(
                n,
                raw,
                normalized,
                Some(predicted),
                Some(normalized - predicted),
            ));
            next += 1;
            if next == xs.len() {
                break;
            }
        }
    }
    emit_rows(&rows, &args.out)?;
    Ok(Completion::Clean)
}

fn run_psi(args: &ProgressionArgs) -> RunResult<Completion> {
    let table = &args.table;
    let xs = validate_table_args(table)?;
    let tables = build_tables(table.limit, table.allow_large)?;

    let rows: Vec<Row> = match (args.modulus, args.residue) {
        (Some(q), Some(a)) => {
            let predicted = 1.0 / euler_phi(q)? as f64;
            let series = psi_ap_checkpoints(&xs, q, a, &tables)?;
            series
                .points()
                .iter()
                .map(|&(x, psi)| {
                    let normalized = psi / x as f64;
                    make_row(
                        x,
                        psi,
                        normalized,
                        Some(predicted),
                        Some(normalized - predicted),
                    )
                })
                .collect()
        }
        _ => {
            let series = psi_checkpoints(&xs, &tables)?;
            series
                .points()
                .iter()
                .map(|&(x, psi)| {
                    let normalized = psi / x as f64;
                    make_row(x, psi, normalized, Some(1.0), Some(normalized - 1.0))
                })
                .collect()
        }
    };
    emit_rows(&rows, &table.out)?;
    Ok(Completion::Clean)
}

fn run_pi(args: &TableArgs) -> RunResult<Completion> {
    let xs = validate_table_args(args)?;
    let tables = build_tables(args.limit, args.allow_large)?;

    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let raw = prime_pi(x, &tables)? as f64;
        let normalized = raw * (x as f64).ln() / x as f64;
        rows.push(make_row(
            x,
            raw,
            normalized,
            Some(1.0),
            Some(normalized - 1.0),
        ));
    }
    emit_rows(&rows, &args.out)?;
    Ok(Completion::Clean)
}

fn run_mertens(args: &TableArgs) -> RunResult<Completion> {
    let xs = validate_table_args(args)?;
    let tables = build_tables(args.limit, args.allow_large)?;

    let rows: Vec<Row> = mertens_checkpoints(&xs, &tables)?
        .iter()
        .map(|&(x, m)| {
            let raw = m as f64;
            let normalized = raw / x as f64;
            make_row(x, raw, normalized, Some(0.0), Some(normalized - 0.0))
        })
        .collect();
    emit_rows(&rows, &args.out)?;
    Ok(Completion::Clean)
}

// ---------------------------------------------------------------------------
// Zeta-side subcommands
// ---------------------------------------------------------------------------

fn parse_complex(text: &str) -> RunResult<ComplexValue> {
    let mut parts = text.splitn(2, ',');
    let re_text = parts.next().unwrap_or_default().trim();
    let re: f64 = re_text
        .parse()
        .map_err(|_| RunError::Usage(format!("cannot parse real part from --s \"{text}\"")))?;
    let im: f64 = match parts.next() {
        Some(part) => part.trim().parse().map_err(|_| {
            RunError::Usage(format!("cannot parse imaginary part from --s \"{text}\""))
        })?,
        None => 0.0,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(RunError::Usage("--s must be finite".into()));
    }
    Ok(ComplexValue::new(re, im))
}

fn run_zeta(args: &ZetaArgs) -> RunResult<Completion> {
    let s = parse_complex(&args.s)?;
    if s.re == 1.0 && s.im == 0.0 {
        return Err(RunError::Usage(
            "s = 1 is the pole of zeta; evaluate at a nearby point instead".into(),
        ));
    }
    let distance = ((s.re - 1.0).powi(2) + s.im.powi(2)).sqrt();
    let (x, value) = if distance < LAURENT_RADIUS {
        let terms = args.terms.max(DISC_MIN_TERMS);
        let expansion = stieltjes_constants(DISC_ORDER, terms)?;
        (terms, zeta_taylor_eval(s, &expansion)?)
    } else {
        let eval = zeta_em(s, args.terms)?;
        (eval.terms_used, eval.value)
    };
    let rows = vec![make_row(x, value.re, value.im, None, None)];
    emit_rows(&rows, &args.out)?;
    Ok(Completion::Clean)
}

fn run_stieltjes(args: &StieltjesArgs) -> RunResult<Completion> {
    let expansion = stieltjes_constants(args.limit, args.terms)?;
    let constants = expansion.stieltjes();

    let mut rows = Vec::with_capacity(args.limit as usize + 1);
    let mut factorial = 1.0f64;
    for (k, &gamma) in constants.iter().enumerate().take(args.limit as usize + 1) {
        if k > 0 {
            factorial *= k as f64;
        }
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let normalized = sign * gamma / factorial;
        rows.push(make_row(k, gamma, normalized, None, None));
    }
    emit_rows(&rows, &args.out)?;
    Ok(Completion::Clean)
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

fn run_verify(args: &VerifyArgs) -> RunResult<Completion> {
    let table = &args.table;
    if table.limit == 0 {
        return Err(RunError::Usage("--limit must be at least 1".into()));
    }
    let grid = CheckpointGrid::from_str(&table.checkpoints)?;
    let options = ExperimentOptions {
        grid,
        tolerance: table.tolerance,
    };
    let q = args.modulus.unwrap_or(DEFAULT_MODULUS);
    let a = args.residue.unwrap_or(DEFAULT_RESIDUE);

    let verdict: TheoremVerdict = match args.experiment {
        Experiment::Pnt => {
            let tables = build_tables(table.limit, table.allow_large)?;
            verify_pnt(table.limit, &tables, &options)?
        }
        Experiment::PsiMean => {
            let tables = build_tables(table.limit, table.allow_large)?;
            verify_psi_mean(table.limit, &tables, &options)?
        }
        Experiment::Lemma5 => {
            let tables = build_tables(table.limit, table.allow_large)?;
            verify_lemma5(table.limit, &tables, &options)?
        }
        Experiment::Lemma6 => {
            let tables = build_tables(table.limit, table.allow_large)?;
            verify_lemma6(table.limit, &tables, &options)?
        }
        Experiment::Lemma11 => verify_lemma11(q, a, table.limit, &options)?,
        Experiment::Wintner => {
            check_memory_guard(table.limit, table.allow_large)?;
            let predicted = zeta_em(ComplexValue::new(2.0, 0.0), PREDICTION_TERMS)?
                .value
                .re;
            verify_wintner(&GSpec::ReciprocalDivisor, predicted, table.limit, &options)?
        }
        Experiment::Axer => {
            let tables = build_tables(table.limit, table.allow_large)?;
            verify_axer(table.limit, &tables, &options)?
        }
        Experiment::Thm9 => {
            let tables = build_tables(table.limit, table.allow_large)?;
            verify_thm9(table.limit, &tables, &options)?
        }
        Experiment::Dirichlet => {
            let tables = build_tables(table.limit, table.allow_large)?;
            verify_dirichlet_ap(q, a, table.limit, &tables, &options)?
        }
        Experiment::Thm10 => {
            let terms = args.terms.unwrap_or(THM10_DEFAULT_TERMS);
            let tables = build_tables(table.limit.max(terms), table.allow_large)?;
            verify_thm10_formula(q, a, table.limit, terms, &tables, &options)?
        }
    };

    let rows: Vec<Row> = verdict
        .report
        .checkpoints
        .iter()
        .map(|c| {
            make_row(
                c.x,
                c.raw,
                c.normalized,
                verdict.report.predicted_limit,
                c.deviation,
            )
        })
        .collect();
    emit_rows(&rows, &table.out)?;

    let label = match verdict.outcome {
        Outcome::Pass => "PASS",
        Outcome::Fail => "FAIL",
        Outcome::Advisory => "ADVISORY",
    };
    eprintln!("{}: {label}", verdict.experiment_name);
    eprintln!("criteria: {}", verdict.criteria);
    for (key, value) in &verdict.parameters {
        eprintln!("{key} = {value}");
    }

    Ok(match verdict.outcome {
        Outcome::Fail => Completion::FailedVerdict,
        _ => Completion::Clean,
    })
}
