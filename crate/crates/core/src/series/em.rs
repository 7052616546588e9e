//! Euler–Maclaurin boundary polynomials and the symbolic tail expansion of
//! `Σ_{n ⪰ N} n^{-(1+α)}`.

use super::{bernoulli, rat_int, BernoulliSign, Polynomial, Rational};
use crate::{Error, Result};
use num_traits::Zero;

/// The printed boundary polynomial `P_i^±(α) = (B_i^± / i!) · C(-(1+α), i-1)`.
///
/// `P_1^± = ±1/2`, `P_2^± = -(1+α)/12`, and `P_i^± = 0` for odd `i ≥ 3`
/// because the odd Bernoulli numbers vanish.
pub fn em_polynomial(i: usize, sign: BernoulliSign) -> Result<Polynomial> {
    if i == 0 || i > 32 {
        return Err(Error::InvalidParameter(format!(
            "boundary polynomial index {i} out of range 1..=32"
        )));
    }
    let b = bernoulli(i, sign)?;
    if b.is_zero() {
        return Ok(Polynomial::zero());
    }
    let mut fact_i = Rational::from(rat_int(1));
    for k in 1..=i {
        fact_i *= rat_int(k as i64);
    }
    Ok(falling_binomial(i - 1).scale(&(b / fact_i)))
}

/// `C(-(1+α), k)` as an exact polynomial in `α` of degree `k`.
pub fn falling_binomial(k: usize) -> Polynomial {
    let mut p = Polynomial::constant(rat_int(1));
    for r in 0..k {
        // factor (-(1+α) - r) = (-(1+r)) + (-1)·α
        p = p.mul(&Polynomial::linear(rat_int(-(1 + r as i64)), rat_int(-1)));
    }
    let mut fact = Rational::from(rat_int(1));
    for r in 1..=k {
        fact *= rat_int(r as i64);
    }
    p.scale(&(Rational::from(rat_int(1)) / fact))
}

/// Asymptotic tail expansion
/// `Σ_{n ⪰ N} n^{-(1+α)} ≈ N^{-α}/α + Σ_i c_i(α) N^{-(i+α)}`
/// carried with exact α-polynomial coefficients and an explicit remainder
/// order. The `i = 1` coefficient is `±1/2` depending on whether the sum
/// includes its lower endpoint; even `i = 2k` carry
/// `B_{2k}/(2k)! · (1+α)_{2k-1}`, and odd `i ≥ 3` vanish.
#[derive(Debug, Clone)]
pub struct EmTailExpansion {
    order: usize,
    sign: BernoulliSign,
    /// `coeffs[i - 1]` multiplies `N^{-(i+α)}`, for `i = 1..=order`.
    coeffs: Vec<Polynomial>,
}

impl EmTailExpansion {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn sign(&self) -> BernoulliSign {
        self.sign
    }

    /// Coefficient polynomial of `N^{-(i+α)}` (1-based `i`).
    pub fn coefficient(&self, i: usize) -> &Polynomial {
        &self.coeffs[i - 1]
    }

    /// Evaluates the expansion and its remainder bound at numeric `(α, N)`.
    /// Returns `(value, remainder_bound)`; the true tail differs from
    /// `value` by at most `remainder_bound` for `α > 0`.
    pub fn evaluate(&self, alpha: f64, n: f64) -> Result<(f64, f64)> {
        if alpha <= 0.0 {
            return Err(Error::Divergent {
                s: alpha,
                abscissa: 0.0,
            });
        }
        if n < 1.0 {
            return Err(Error::InvalidParameter("tail start must be >= 1".into()));
        }
        let mut value = n.powf(-alpha) / alpha;
        for (idx, c) in self.coeffs.iter().enumerate() {
            let i = idx + 1;
            value += c.eval_f64(alpha) * n.powf(-(i as f64 + alpha));
        }
        let p = self.order;
        // |R_p| <= 2 zeta(p)/(2pi)^p * (1+α)_p * N^{-(p+α)}/(p+α)
        let mut poch = 1.0;
        for r in 0..p {
            poch *= 1.0 + alpha + r as f64;
        }
        let zeta_p = zeta_even_bound(p);
        let tau = std::f64::consts::TAU;
        let remainder =
            2.0 * zeta_p / tau.powi(p as i32) * poch * n.powf(-(p as f64 + alpha)) / (p as f64 + alpha);
        Ok((value, remainder))
    }
}

/// Upper bound on `ζ(p)` for `p ≥ 2` (exact enough for remainder bounds).
pub(crate) fn zeta_even_bound(p: usize) -> f64 {
    // ζ(2) for p = 2, else a safe cap: ζ is decreasing in p and < ζ(2).
    match p {
        0 | 1 => f64::INFINITY,
        2 => std::f64::consts::PI * std::f64::consts::PI / 6.0,
        3 => 1.2021,
        4 => 1.0824,
        _ => 1.05,
    }
}

/// Builds the expansion at remainder order `p` (even, `2 ≤ p ≤ 16`).
pub fn em_tail(p: usize, sign: BernoulliSign) -> Result<EmTailExpansion> {
    if p < 2 || p > 16 || p % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "tail order must be even in 2..=16, got {p}"
        )));
    }
    let mut coeffs = Vec::with_capacity(p);
    for i in 1..=p {
        if i == 1 {
            let half = match sign {
                BernoulliSign::Plus => super::rat(1, 2),
                BernoulliSign::Minus => super::rat(-1, 2),
            };
            coeffs.push(Polynomial::constant(half));
        } else if i % 2 == 0 {
            // B_i / i! * (1+α)(2+α)...(i-1+α)
            let b = bernoulli(i, sign)?;
            let mut fact = Rational::from(rat_int(1));
            for k in 1..=i {
                fact *= rat_int(k as i64);
            }
            let mut poly = Polynomial::constant(b / fact);
            for r in 1..i {
                poly = poly.mul(&Polynomial::linear(rat_int(r as i64), rat_int(1)));
            }
            coeffs.push(poly);
        } else {
            coeffs.push(Polynomial::zero());
        }
    }
    Ok(EmTailExpansion {
        order: p,
        sign,
        coeffs,
    })
}
