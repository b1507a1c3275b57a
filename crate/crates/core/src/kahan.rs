//! Compensated floating-point accumulation.
//!
//! Every floating sum in the crate funnels through [`Accumulator`], a
//! Neumaier-style compensated summer. Besides the accuracy gain, routing all
//! sums through one type keeps evaluation order fixed, which is what makes
//! repeated runs bitwise reproducible.

/// Neumaier compensated accumulator.
///
/// The compensation term also absorbs the case where a new term is larger in
/// magnitude than the running sum, which plain Kahan summation mishandles.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Adds one term, updating the compensation for the rounding error of
    /// this addition.
    pub(crate) fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - t) + term;
        } else {
            self.compensation += (term - t) + self.sum;
        }
        self.sum = t;
    }

    /// Current compensated total.
    pub(crate) fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::Accumulator;

    #[test]
    fn recovers_catastrophic_cancellation() {
        let mut acc = Accumulator::new();
        for term in [1e100, 1.0, -1e100] {
            acc.add(term);
        }
        assert_eq!(acc.total(), 1.0);
    }

    #[test]
    fn beats_naive_summation_on_repeated_decimals() {
        let mut acc = Accumulator::new();
        let mut naive = 0.0f64;
        for _ in 0..1_000_000 {
            acc.add(0.1);
            naive += 0.1;
        }
        let compensated_err = (acc.total() - 100_000.0).abs();
        let naive_err = (naive - 100_000.0).abs();
        assert!(compensated_err < 1e-9);
        assert!(compensated_err < naive_err);
    }

    #[test]
    fn exact_integers_stay_exact() {
        let mut acc = Accumulator::new();
        for n in 1..=1000 {
            acc.add(f64::from(n));
        }
        assert_eq!(acc.total(), 500_500.0);
    }
}
