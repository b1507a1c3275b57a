//! Convergence reports, checkpoint grids, and deterministic float formatting.
//!
//! Every experiment in the crate reports the same shape: a sequence of
//! checkpoints, each with the raw quantity, a normalized value, and the
//! deviation from the predicted limit. Formatting is centralized in
//! [`format_significant`] so tables and summaries are reproducible byte for
//! byte.

use std::str::FromStr;

use crate::error::{Error, Result};

/// Geometric grids start at this value; smaller limits get a single
/// checkpoint at the limit itself.
pub const GEOMETRIC_GRID_START: u64 = 1_000;

/// One evaluation point of a convergence experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Checkpoint {
    /// Argument the quantity was evaluated at.
    pub x: u64,
    /// The raw quantity (a count, a signed sum, ...).
    pub raw: f64,
    /// The normalized quantity expected to converge.
    pub normalized: f64,
    /// `normalized` minus the predicted limit, when a prediction exists.
    pub deviation: Option<f64>,
}

/// Checkpointed trajectory of a quantity expected to converge.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    /// Human-readable statement of what is being tracked.
    pub description: String,
    /// Evaluation points in increasing `x` order.
    pub checkpoints: Vec<Checkpoint>,
    /// The limit the normalized quantity should approach, if predicted.
    pub predicted_limit: Option<f64>,
}

/// Where a convergence experiment samples its quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckpointGrid {
    /// Powers of `base` from [`GEOMETRIC_GRID_START`] up to the limit, with
    /// the limit itself appended when it is not already a grid point.
    Geometric {
        /// Ratio between consecutive checkpoints; must be at least 2.
        base: u64,
    },
    /// An explicit, strictly increasing list of checkpoints.
    Explicit(Vec<u64>),
}

impl Default for CheckpointGrid {
    fn default() -> Self {
        CheckpointGrid::Geometric { base: 10 }
    }
}

impl CheckpointGrid {
    /// Materializes the grid for a concrete limit.
    pub fn checkpoints(&self, limit: u64) -> Result<Vec<u64>> {
        if limit == 0 {
            return Err(Error::Usage("checkpoint limit must be at least 1".into()));
        }
        match self {
            CheckpointGrid::Geometric { base } => {
                let base = *base;
                if base < 2 {
                    return Err(Error::Usage(format!(
                        "geometric checkpoint base must be at least 2, got {base}"
                    )));
                }
                if limit < GEOMETRIC_GRID_START {
                    return Ok(vec![limit]);
                }
                let mut value = 1u64;
                while value < GEOMETRIC_GRID_START {
                    value = value.saturating_mul(base);
                }
                let mut xs = Vec::new();
                while value <= limit {
                    xs.push(value);
                    match value.checked_mul(base) {
                        Some(next) => value = next,
                        None => break,
                    }
                }
                if xs.last() != Some(&limit) {
                    xs.push(limit);
                }
                Ok(xs)
            }
            CheckpointGrid::Explicit(xs) => {
                validate_checkpoints(xs, limit)?;
                Ok(xs.clone())
            }
        }
    }
}

/// Shared validation for explicit checkpoint lists: nonempty, strictly
/// increasing, starting at 1 or later, and bounded by `limit`.
pub(crate) fn validate_checkpoints(xs: &[u64], limit: u64) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::Usage("checkpoint list is empty".into()));
    }
    if xs[0] == 0 {
        return Err(Error::Usage("checkpoints must be at least 1".into()));
    }
    for pair in xs.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::Usage(format!(
                "checkpoints must be strictly increasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    let last = *xs.last().expect("nonempty");
    if last > limit {
        return Err(Error::OutOfRange(format!(
            "checkpoint {last} exceeds the available limit {limit}"
        )));
    }
    Ok(())
}

impl FromStr for CheckpointGrid {
    type Err = Error;

    /// Parses `"geometric:B"` or a comma-separated explicit list.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("geometric:") {
            let base: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("cannot parse geometric base from {rest:?}")))?;
            if base < 2 {
                return Err(Error::Usage(format!(
                    "geometric checkpoint base must be at least 2, got {base}"
                )));
            }
            return Ok(CheckpointGrid::Geometric { base });
        }
        let mut xs = Vec::new();
        for piece in s.split(',') {
            let x: u64 = piece
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("cannot parse checkpoint from {piece:?}")))?;
            xs.push(x);
        }
        if xs.is_empty() || xs[0] == 0 {
            return Err(Error::Usage("checkpoints must be at least 1".into()));
        }
        for pair in xs.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::Usage(
                    "explicit checkpoints must be strictly increasing".into(),
                ));
            }
        }
        Ok(CheckpointGrid::Explicit(xs))
    }
}

/// Formats a float with ten significant digits in scientific notation
/// (`-1.000000000e-1` style); negative zero is normalized so equal values
/// always print identically.
pub fn format_significant(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.9e}")
}
