//! Exact-rational series infrastructure.
//!
//! Everything here is exact: Bernoulli numbers, Euler–Maclaurin boundary
//! polynomials, truncated multivariate power series, and the log-power
//! container used to report asymptotic expansions. Floats enter only at
//! evaluation time.

mod bernoulli;
mod em;
mod logpoly;
mod poly;
mod truncated;

pub use bernoulli::{bernoulli, BernoulliSign};
pub use em::{em_polynomial, em_tail, EmTailExpansion};
pub use logpoly::LogPolySeries;
pub use poly::Polynomial;
pub use truncated::TruncatedSeries;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational scalar; always stored reduced with a
/// positive denominator (guaranteed by the backing implementation).
pub type Rational = BigRational;

/// Rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Nearest f64 (numerator/denominator in floating point, good to 1 ulp for
/// the magnitudes used here).
pub fn rat_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back to a quotient of rounded parts for huge operands
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}
