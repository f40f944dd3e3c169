//! Compensated (Neumaier) accumulation.

/// Running sum carrying the rounding error of every addition.
///
/// Each step is the error-free `TwoSum`-style update of Kahan-Babuska-Neumaier,
/// so the result does not depend on the magnitude ordering of the terms and
/// only on the order they are fed in.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let s: CompensatedSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.total(), 2.0);
    }

    #[test]
    fn harmonic_partial_sum() {
        let naive: f64 = (1..=100_000).map(|k| 1.0 / k as f64).sum();
        let comp: CompensatedSum = (1..=100_000).map(|k| 1.0 / k as f64).collect();
        // H_100000 to 20 digits.
        let exact = 12.090_146_129_863_427_947;
        assert!((comp.total() - exact).abs() <= 2e-15);
        assert!((comp.total() - exact).abs() <= (naive - exact).abs());
    }
}
