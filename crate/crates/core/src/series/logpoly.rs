//! Container for truncated expansions with terms `c · log^j(N) / N^{i + k·δ̄}`.

use super::{rat_to_f64, Rational};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize)]
pub struct LogPolySeries {
    /// δ̄ ≥ 0 as an exact rational exponent step.
    #[serde(serialize_with = "ser_rational")]
    delta_bar: Rational,
    /// (i, k, j) → coefficient of `log^j(N) / N^{i + k δ̄}`.
    terms: BTreeMap<(u32, u32, u32), f64>,
    /// Truncation orders: max i and max k carried.
    order_i: u32,
    order_k: u32,
    /// When true, insertion enforces `j ≤ k - 1` (the shape of
    /// pressure-root expansions in the polynomial-tail case).
    bounded_log_powers: bool,
}

fn ser_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{r}"))
}

impl LogPolySeries {
    pub fn new(delta_bar: Rational, order_i: u32, order_k: u32, bounded_log_powers: bool) -> Self {
        LogPolySeries {
            delta_bar,
            terms: BTreeMap::new(),
            order_i,
            order_k,
            bounded_log_powers,
        }
    }

    pub fn delta_bar(&self) -> &Rational {
        &self.delta_bar
    }

    pub fn set_term(&mut self, i: u32, k: u32, j: u32, coeff: f64) -> Result<()> {
        if i > self.order_i || k > self.order_k {
            return Err(Error::InvalidParameter(format!(
                "term (i={i}, k={k}) outside truncation ({}, {})",
                self.order_i, self.order_k
            )));
        }
        if self.bounded_log_powers && (k == 0 || j > k - 1) {
            return Err(Error::InvalidParameter(format!(
                "log power j={j} violates j <= k-1 with k={k}"
            )));
        }
        if coeff == 0.0 {
            self.terms.remove(&(i, k, j));
        } else {
            self.terms.insert((i, k, j), coeff);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &f64)> {
        self.terms.iter()
    }

    /// Evaluates `Σ c_{i,k,j} log^j(N) / N^{i + k δ̄}` at a concrete N.
    pub fn eval(&self, n: f64) -> f64 {
        let ln_n = n.ln();
        let db = rat_to_f64(&self.delta_bar);
        let mut acc = 0.0;
        for (&(i, k, j), &c) in &self.terms {
            let exponent = i as f64 + k as f64 * db;
            acc += c * ln_n.powi(j as i32) * n.powf(-exponent);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, rat_int};

    #[test]
    fn evaluation_matches_term_by_term() {
        let mut s = LogPolySeries::new(rat_int(1), 3, 3, true);
        s.set_term(1, 1, 0, -0.5).unwrap();
        s.set_term(0, 2, 1, 2.25).unwrap();
        let n: f64 = 40.0;
        let by_hand = -0.5 / (n * n) + 2.25 * n.ln() / (n * n);
        assert!((s.eval(n) - by_hand).abs() <= 1e-16 * by_hand.abs());
    }

    #[test]
    fn log_power_shape_enforced() {
        let mut s = LogPolySeries::new(rat(1, 2), 2, 2, true);
        assert!(s.set_term(0, 1, 0, 1.0).is_ok());
        assert!(s.set_term(0, 1, 1, 1.0).is_err()); // j > k-1
        assert!(s.set_term(0, 0, 0, 1.0).is_err()); // k = 0 has no log budget
    }
}
