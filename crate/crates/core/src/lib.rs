//! Deterministic numerics for multiplicative number theory.
//!
//! The crate is organized around four layers:
//!
//! * [`build_sieve`] produces the shared [`SieveTables`]: smallest prime
//!   factors, Möbius values, and a sorted prime-power table from one linear
//!   sieve pass.
//! * [`series`] and [`summatory`] turn those tables into coefficient
//!   sequences, Dirichlet convolutions, and compensated partial-sum sweeps
//!   (Chebyshev psi, Mertens, progression variants, Abel summation).
//! * [`zeta`] evaluates the Riemann zeta function and its derivative by
//!   Euler--Maclaurin summation with explicit tail bounds, extracts
//!   generalized Euler constants, and provides Laurent-expansion evaluation
//!   near the pole at 1.
//! * [`harness`] packages limiting statements as convergence experiments
//!   with frozen pass criteria and reproducible, printable verdicts.
//!
//! Every floating-point reduction uses compensated summation and iterates
//! in a documented deterministic order, so identical inputs produce
//! bit-identical outputs across runs on the same target.

mod error;
mod kahan;
mod sieve;

pub mod arith;
pub mod harness;
pub mod report;
pub mod series;
pub mod summatory;
pub mod zeta;

pub use error::{Error, Result};
pub use sieve::{build_sieve, Factorization, SieveTables, MAX_SIEVE_LIMIT};
