//! Shared numerical kernels: compensated summation, truncated Taylor jets,
//! Gauss–Jacobi quadrature, safeguarded root finding, and least squares.

mod fit;
mod jet;
mod quad;
mod roots;

pub use fit::{fit_exponent, least_squares};
pub use jet::Jet;
pub use quad::gauss_jacobi_unit;
pub use roots::{solve_decreasing, Bracket, RootReport};

/// Neumaier-compensated accumulator; error stays at a few ulps of the
/// result regardless of term count.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sums an iterator with compensation.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = Kahan::new();
    for x in iter {
        acc.add(x);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_beats_naive_on_descending_series() {
        // sum_{n=1}^{10^6} n^{-2} ascending vs descending should agree
        let n = 1_000_000u64;
        let desc = kahan_sum((1..=n).map(|k| 1.0 / (k as f64 * k as f64)));
        let asc = kahan_sum((1..=n).rev().map(|k| 1.0 / (k as f64 * k as f64)));
        assert!((desc - asc).abs() < 1e-15);
    }
}
