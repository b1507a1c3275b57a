//! Command-line surface: clap argument types shared by the subcommands.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Top-level invocation.
#[derive(Parser, Debug)]
#[command(
    name = "primelab",
    version,
    about = "Deterministic tables and convergence experiments for multiplicative number theory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// One subcommand per table or experiment family.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate the squarefree density along a checkpoint grid.
    Sieve(TableArgs),
    /// Tabulate psi(x)/x, optionally restricted to one progression.
    Psi(ProgressionArgs),
    /// Tabulate the prime-counting ratio pi(x) log(x) / x.
    Pi(TableArgs),
    /// Tabulate the Mertens ratio M(x)/x.
    Mertens(TableArgs),
    /// Evaluate zeta(s) at one point (Laurent expansion near s = 1,
    /// Euler-Maclaurin elsewhere).
    Zeta(ZetaArgs),
    /// Tabulate the generalized Euler constants gamma_0..gamma_k.
    Stieltjes(StieltjesArgs),
    /// Run one named convergence experiment; table on stdout, verdict on
    /// stderr, exit 1 on FAIL.
    Verify(VerifyArgs),
}

/// Output routing shared by every table-producing subcommand.
#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Table format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    /// Write the table to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Delimiter choice for the emitted table.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    /// Comma-separated values.
    Csv,
    /// Tab-separated values.
    Tsv,
}

/// Arguments common to the range-tabulating subcommands.
#[derive(Args, Debug)]
pub struct TableArgs {
    /// Largest x tabulated; also the sieve size.
    #[arg(long, default_value_t = 1_000_000)]
    pub limit: u64,
    /// Checkpoint grid: "geometric:B" for powers of B, or an explicit
    /// strictly increasing list "x1,x2,...".
    #[arg(long, default_value = "geometric:10")]
    pub checkpoints: String,
    /// Override the experiment's frozen pass tolerance (verify only; must
    /// be positive).
    #[arg(long, allow_negative_numbers = true)]
    pub tolerance: Option<f64>,
    /// Permit sieve sizes above the 100,000,000-entry memory guard.
    #[arg(long)]
    pub allow_large: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Table arguments plus an optional arithmetic progression.
#[derive(Args, Debug)]
pub struct ProgressionArgs {
    #[command(flatten)]
    pub table: TableArgs,
    /// Progression modulus q; restricts the sum to n = a (mod q).
    #[arg(long, requires = "residue")]
    pub modulus: Option<u64>,
    /// Progression residue a; requires --modulus and a < q.
    #[arg(long, requires = "modulus")]
    pub residue: Option<u64>,
}

/// Point evaluation of zeta.
#[derive(Args, Debug)]
pub struct ZetaArgs {
    /// Evaluation point: "re" or "re,im".
    #[arg(long)]
    pub s: String,
    /// Euler-Maclaurin truncation length (direct terms before the
    /// correction tail).
    #[arg(long, default_value_t = 10_000)]
    pub terms: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Tabulation of generalized Euler constants.
#[derive(Args, Debug)]
pub struct StieltjesArgs {
    /// Highest constant order k to tabulate (0..=4).
    #[arg(long, default_value_t = 4)]
    pub limit: u32,
    /// Length of the compensated reference sum.
    #[arg(long, default_value_t = 10_000_000)]
    pub terms: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// One convergence experiment run.
#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Which experiment to run.
    #[arg(value_enum)]
    pub experiment: Experiment,
    #[command(flatten)]
    pub table: TableArgs,
    /// Progression modulus for dirichlet, thm10, and lemma11 (default 3).
    #[arg(long, requires = "residue")]
    pub modulus: Option<u64>,
    /// Progression residue for dirichlet, thm10, and lemma11 (default 1).
    #[arg(long, requires = "modulus")]
    pub residue: Option<u64>,
    /// Inner-series length for thm10 (default 10,000,000).
    #[arg(long)]
    pub terms: Option<u64>,
}

/// The experiment registry exposed on the command line.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// Prime-counting ratio pi(x) log(x)/x against 1.
    Pnt,
    /// Chebyshev psi(x)/x against 1.
    PsiMean,
    /// Averaged Mobius-psi convolution |S(x)|/x against 0.
    Lemma5,
    /// Mertens ratio |M(x)|/x against 0.
    Lemma6,
    /// Progression power sums normalized by x^2/q against 1/2.
    Lemma11,
    /// Mean value of 1 * g for g = 1/d against zeta(2).
    Wintner,
    /// Mean value of 1 * mu with the linear-growth hypothesis tracked.
    Axer,
    /// Partial sums of -mu(n) log(n)/n against 1.
    Thm9,
    /// Progression psi ratio psi(x; q, a) phi(q)/x against 1.
    Dirichlet,
    /// Divisor-sum density formula against the empirical progression density.
    Thm10,
}
