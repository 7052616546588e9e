//! Safeguarded scalar root finding for smooth strictly decreasing functions.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct RootReport {
    pub root: f64,
    /// Function value at the returned root.
    pub residual: f64,
    pub evaluations: usize,
}

/// Finds the root of a strictly decreasing `f` on `[lo, hi]` with
/// `f(lo) > 0 > f(hi)`: three bisection steps to tame the initial bracket,
/// then secant iterations clipped back to bisection whenever a step would
/// leave the bracket.
pub fn solve_decreasing<F>(mut f: F, bracket: Bracket, x_tol: f64) -> Result<RootReport>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut evals = 0usize;
    let mut lo = bracket.lo;
    let mut hi = bracket.hi;
    let mut flo = f(lo)?;
    evals += 1;
    if flo <= 0.0 {
        // root at or below lo
        return Ok(RootReport {
            root: lo,
            residual: flo,
            evaluations: evals,
        });
    }
    let mut fhi = f(hi)?;
    evals += 1;
    if fhi >= 0.0 {
        return Err(Error::Numerical(format!(
            "root bracket [{lo}, {hi}] does not straddle zero (f(hi) = {fhi})"
        )));
    }

    for _ in 0..3 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        evals += 1;
        if fm > 0.0 {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }

    // Secant on the bracket endpoints, safeguarded by the sign bracket.
    let (mut x0, mut f0, mut x1, mut f1) = (lo, flo, hi, fhi);
    for _ in 0..80 {
        let denom = f1 - f0;
        let mut x2 = if denom != 0.0 {
            x1 - f1 * (x1 - x0) / denom
        } else {
            0.5 * (lo + hi)
        };
        if !(x2 > lo && x2 < hi) {
            x2 = 0.5 * (lo + hi);
        }
        let f2 = f(x2)?;
        evals += 1;
        if f2 > 0.0 {
            lo = x2;
        } else {
            hi = x2;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if (hi - lo) <= x_tol || f2 == 0.0 || (x1 - x0).abs() <= x_tol * x1.abs().max(1.0) {
            return Ok(RootReport {
                root: x2,
                residual: f2,
                evaluations: evals,
            });
        }
    }
    Err(Error::NonConvergence(
        "secant iteration exceeded 80 steps".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_root_of_decreasing_exponential() {
        // f(x) = e^{-x} - x, root near 0.5671
        let rep = solve_decreasing(
            |x| Ok((-x).exp() - x),
            Bracket { lo: 0.0, hi: 1.0 },
            1e-15,
        )
        .unwrap();
        assert!((rep.root - 0.567_143_290_409_783_8).abs() < 1e-14);
    }

    #[test]
    fn steep_left_edge_is_safeguarded() {
        // mimics pressure blowing up at the abscissa
        let rep = solve_decreasing(
            |x: f64| Ok(1.0 / (x * x) - 300.0),
            Bracket {
                lo: 1e-3,
                hi: 10.0,
            },
            1e-14,
        )
        .unwrap();
        assert!((rep.root - (1.0 / 300f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn root_at_lower_edge_returns_edge() {
        let rep = solve_decreasing(|x: f64| Ok(-x), Bracket { lo: 0.0, hi: 1.0 }, 1e-14).unwrap();
        assert_eq!(rep.root, 0.0);
    }
}
