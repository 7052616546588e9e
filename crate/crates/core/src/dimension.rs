//! Dimension of the limit set as the pressure root `P(E, δ) = 0`, located
//! by bracketed secant iteration over a ladder of doubling grids.

use crate::alphabet::AlphabetSpec;
use crate::numeric::{solve_decreasing, Bracket};
use crate::series::{bernoulli, rat_to_f64, BernoulliSign};
use crate::spectral::pressure;
use crate::{Error, Result};
use serde::Serialize;

/// Result of a dimension computation.
#[derive(Debug, Clone, Serialize)]
pub struct DimensionResult {
    pub delta: f64,
    /// Richardson-style `|δ_m - δ_{2m}|` from the last grid doubling.
    pub error_estimate: f64,
    pub grid_size: usize,
    /// `|P(δ)|` at the finest grid.
    pub pressure_residual: f64,
}

const GRID_LADDER: [usize; 5] = [16, 32, 64, 128, 256];

/// Hausdorff dimension via Bowen's formula. Grids double from 16 nodes
/// until consecutive roots agree within `tol` (at most 256 nodes). The
/// empty alphabet reports `-∞`.
pub fn bowen_dimension(alphabet: &AlphabetSpec, tol: f64) -> Result<DimensionResult> {
    if alphabet.is_empty() {
        return Ok(DimensionResult {
            delta: f64::NEG_INFINITY,
            error_estimate: 0.0,
            grid_size: 0,
            pressure_residual: 0.0,
        });
    }
    let bracket = initial_bracket(alphabet)?;

    let mut prev: Option<(f64, f64)> = None; // (delta, residual)
    let mut err = f64::INFINITY;
    let mut result = None;
    for (ri, &m) in GRID_LADDER.iter().enumerate() {
        let f = |s: f64| -> Result<f64> {
            let p = pressure(alphabet, s, m)?;
            if p.is_infinite() {
                return Err(Error::Divergent {
                    s,
                    abscissa: alphabet.abscissa(),
                });
            }
            Ok(p)
        };
        // warm start near the previous root when available
        let report = match prev {
            Some((d, _)) => {
                let pad = (10.0 * err).max(1e-9);
                let local = Bracket {
                    lo: (d - pad).max(bracket.lo),
                    hi: (d + pad).min(bracket.hi),
                };
                match solve_decreasing(f, local, 1e-15) {
                    Ok(r) => r,
                    Err(_) => solve_decreasing(f, bracket, 1e-15)?,
                }
            }
            None => solve_decreasing(f, bracket, 1e-15)?,
        };
        if let Some((d_prev, _)) = prev {
            err = (report.root - d_prev).abs();
        }
        prev = Some((report.root, report.residual.abs()));
        result = Some(DimensionResult {
            delta: report.root,
            error_estimate: err,
            grid_size: m,
            pressure_residual: report.residual.abs(),
        });
        if ri > 0 && err < tol {
            return Ok(result.unwrap());
        }
    }
    let last = result.unwrap();
    if last.error_estimate < tol {
        Ok(last)
    } else {
        Err(Error::NonConvergence(format!(
            "dimension tolerance {tol:.1e} unreachable at max grid 256 \
             (last doubling gap {:.1e})",
            last.error_estimate
        )))
    }
}

fn initial_bracket(alphabet: &AlphabetSpec) -> Result<Bracket> {
    let hi = 1.0 + 1e-6;
    if alphabet.is_finite() {
        return Ok(Bracket { lo: 0.0, hi });
    }
    let theta = alphabet.abscissa();
    if theta > 0.0 {
        // polynomial tails: pressure blows up at the abscissa
        return Ok(Bracket {
            lo: theta + 1e-6,
            hi,
        });
    }
    // quasi-geometric tails: the abscissa is 0 but enumeration cost grows
    // like 1/s, so probe downwards from a modest start
    let mut lo = 0.05;
    for _ in 0..6 {
        match pressure(alphabet, lo, 16) {
            Ok(p) if p > 0.0 => return Ok(Bracket { lo, hi }),
            Ok(_) => lo *= 0.25,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Numerical(
        "could not bracket the pressure root above the abscissa".into(),
    ))
}

/// `Σ_{n ≥ N} (n+x)^{-2s}` by Euler–Maclaurin with an explicit remainder
/// bound: returns `(value, bound)` with the true sum inside
/// `value ± bound`. Requires `2s > 1` and even `p` in 2..=16.
pub fn hurwitz_tail(s: f64, n: u64, x: f64, p: usize) -> Result<(f64, f64)> {
    if 2.0 * s <= 1.0 {
        return Err(Error::Divergent { s, abscissa: 0.5 });
    }
    if p < 2 || p > 16 || p % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "order must be even in 2..=16, got {p}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("tail start must be >= 1".into()));
    }
    let two_s = 2.0 * s;
    let z = n as f64 + x;
    let mut value = z.powf(1.0 - two_s) / (two_s - 1.0) + 0.5 * z.powf(-two_s);
    // Σ_{i} B_{2i}/(2i)! (2s)_{2i-1} z^{-(2s+2i-1)}
    let mut poch = 1.0; // (2s)_k
    let mut k = 0usize;
    for i in 1..=(p / 2) {
        while k < 2 * i - 1 {
            poch *= two_s + k as f64;
            k += 1;
        }
        let b2i = rat_to_f64(&bernoulli(2 * i, BernoulliSign::Minus)?);
        let fact: f64 = (1..=(2 * i)).map(|t| t as f64).product();
        value += b2i / fact * poch * z.powf(-(two_s + 2.0 * i as f64 - 1.0));
    }
    while k < p {
        poch *= two_s + k as f64;
        k += 1;
    }
    let zeta_p = match p {
        2 => std::f64::consts::PI * std::f64::consts::PI / 6.0,
        4 => 1.082_323_233_711_138_2,
        _ => 1.005,
    };
    let remainder = 2.0 * zeta_p / std::f64::consts::TAU.powi(p as i32) * poch
        * z.powf(-(two_s + p as f64 - 1.0))
        / (two_s + p as f64 - 1.0);
    Ok((value, remainder))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::parse_alphabet;
    use crate::numeric::Kahan;
    use crate::spectral;
    use crate::transfer::{assemble, make_grid};

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn hurwitz_tail_zeta_values() {
        // forced analytically: zeta(2) and zeta(2) - 1
        let (v, r) = hurwitz_tail(1.0, 1, 0.0, 8).unwrap();
        assert!((v - PI * PI / 6.0).abs() <= r + 1e-15, "v = {v}, r = {r}");
        let (v, r) = hurwitz_tail(1.0, 1, 1.0, 8).unwrap();
        assert!((v - (PI * PI / 6.0 - 1.0)).abs() <= r + 1e-15);
        // divergent request
        assert!(hurwitz_tail(0.5, 10, 0.0, 8).is_err());
        assert!(hurwitz_tail(1.0, 1, 0.0, 7).is_err());
    }

    #[test]
    fn hurwitz_tail_matches_brute_force() {
        // (s, N, x) = (0.6, 50, 0.37): 10^7-term sum plus midpoint closure
        let (v, r) = hurwitz_tail(0.6, 50, 0.37, 8).unwrap();
        let mut acc = Kahan::new();
        let m = 10_000_000u64;
        for n in (50..=m).rev() {
            acc.add((n as f64 + 0.37).powf(-1.2));
        }
        let mid = m as f64 + 0.5 + 0.37;
        let oracle = acc.value() + mid.powf(-0.2) / 0.2;
        // the midpoint-closed oracle carries ~1e-9 of its own error
        assert!((v - oracle).abs() <= r + 2e-9, "v = {v}, oracle = {oracle}");
    }

    #[test]
    fn single_map_dimension_is_zero() {
        let a = parse_alphabet("set:1").unwrap();
        let d = bowen_dimension(&a, 1e-10).unwrap();
        assert!(d.delta.abs() < 1e-12, "delta = {}", d.delta);
    }

    #[test]
    fn full_alphabet_dimension_is_one() {
        let a = parse_alphabet("geq:1").unwrap();
        let d = bowen_dimension(&a, 1e-10).unwrap();
        assert!((d.delta - 1.0).abs() < 1e-10, "delta = {}", d.delta);
        assert!(d.pressure_residual < 1e-10);
    }

    #[test]
    fn bounded_by_two_dimension_matches_independent_bisection() {
        let a = parse_alphabet("leq:2").unwrap();
        let d = bowen_dimension(&a, 1e-9).unwrap();
        assert!((d.delta - 0.5312805).abs() < 1e-6);
        assert!(d.error_estimate < 1e-9);

        // independent check: plain bisection on a separately assembled
        // operator at m = 96
        let grid = make_grid(96).unwrap();
        let (mut lo, mut hi) = (0.3f64, 0.8f64);
        for _ in 0..52 {
            let mid = 0.5 * (lo + hi);
            let op = assemble(&a, mid, &grid, 8).unwrap();
            let t = spectral::dominant_eigentriple(&op, 1e-8).unwrap();
            if t.lambda > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        assert!(
            (d.delta - oracle).abs() < 1e-9,
            "delta = {}, oracle = {oracle}",
            d.delta
        );
    }

    #[test]
    fn empty_alphabet_reports_minus_infinity() {
        let d = bowen_dimension(&AlphabetSpec::empty(), 1e-9).unwrap();
        assert_eq!(d.delta, f64::NEG_INFINITY);
    }

    #[test]
    fn nested_alphabets_are_monotone() {
        let d2 = bowen_dimension(&parse_alphabet("leq:2").unwrap(), 1e-9)
            .unwrap()
            .delta;
        let d3 = bowen_dimension(&parse_alphabet("leq:3").unwrap(), 1e-9)
            .unwrap()
            .delta;
        let d4 = bowen_dimension(&parse_alphabet("leq:4").unwrap(), 1e-9)
            .unwrap()
            .delta;
        assert!(d2 < d3 && d3 < d4 && d4 < 1.0);

        let g10 = bowen_dimension(&parse_alphabet("geq:10").unwrap(), 1e-9)
            .unwrap()
            .delta;
        let g20 = bowen_dimension(&parse_alphabet("geq:20").unwrap(), 1e-9)
            .unwrap()
            .delta;
        assert!(g20 < g10 && g10 < 1.0);
        assert!(g20 > 0.5);
    }

    #[test]
    fn jarnik_and_good_bounds_hold_spot_checks() {
        let n = 8u64;
        let d = bowen_dimension(&parse_alphabet(&format!("leq:{n}")).unwrap(), 1e-9)
            .unwrap()
            .delta;
        let nf = n as f64;
        assert!(1.0 - 4.0 / (nf * 2f64.ln()) <= d);
        assert!(d <= 1.0 - 1.0 / (8.0 * nf * nf.ln()));

        let n = 20u64;
        let d = bowen_dimension(&parse_alphabet(&format!("geq:{n}")).unwrap(), 1e-9)
            .unwrap()
            .delta;
        let nf = n as f64;
        assert!(0.5 + 1.0 / (2.0 * (nf + 2.0).ln()) <= d);
        assert!(d <= 0.5 + (nf - 1.0).ln().ln() / (2.0 * (nf - 1.0).ln()));
    }

    #[test]
    fn fibonacci_tail_dimension_brackets() {
        let d = bowen_dimension(&parse_alphabet("fib:geq:20").unwrap(), 1e-9)
            .unwrap()
            .delta;
        assert!(d > 0.0 && d < 0.5, "delta = {d}");
    }
}
