//! Bernoulli numbers over exact rationals.

use super::{rat_int, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use std::sync::OnceLock;

/// Which value `B_1` takes; all other indices agree between conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BernoulliSign {
    /// `B_1 = +1/2` (sums that include their lower endpoint).
    Plus,
    /// `B_1 = -1/2` (sums that exclude it).
    Minus,
}

const MAX_INDEX: usize = 64;

fn table() -> &'static Vec<Rational> {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_0 = 1, and for n >= 1:  B_n = -1/(n+1) * sum_{k<n} C(n+1, k) B_k
        let mut b: Vec<Rational> = Vec::with_capacity(MAX_INDEX + 1);
        b.push(rat_int(1));
        for n in 1..=MAX_INDEX {
            let mut acc = Rational::zero();
            let mut binom = BigInt::from(1); // C(n+1, k), k = 0
            for (k, bk) in b.iter().enumerate().take(n) {
                acc += Rational::from(binom.clone()) * bk;
                // C(n+1, k+1) = C(n+1, k) * (n+1-k)/(k+1)
                binom = binom * BigInt::from((n + 1 - k) as i64) / BigInt::from((k + 1) as i64);
            }
            b.push(-acc / rat_int((n + 1) as i64));
        }
        b
    })
}

/// Exact `B_n` with the minus convention at `n = 1`; `n <= 64`.
pub fn bernoulli(n: usize, sign: BernoulliSign) -> Result<Rational> {
    if n > MAX_INDEX {
        return Err(Error::InvalidParameter(format!(
            "Bernoulli index {n} exceeds supported maximum {MAX_INDEX}"
        )));
    }
    let mut value = table()[n].clone();
    if n == 1 && sign == BernoulliSign::Plus {
        value = -value;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0, BernoulliSign::Minus).unwrap(), rat_int(1));
        assert_eq!(bernoulli(1, BernoulliSign::Minus).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(1, BernoulliSign::Plus).unwrap(), rat(1, 2));
        assert_eq!(bernoulli(2, BernoulliSign::Minus).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(4, BernoulliSign::Minus).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(6, BernoulliSign::Minus).unwrap(), rat(1, 42));
        assert_eq!(bernoulli(8, BernoulliSign::Minus).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(12, BernoulliSign::Minus).unwrap(), rat(-691, 2730));
    }

    #[test]
    fn odd_indices_vanish() {
        for n in (3..=63).step_by(2) {
            assert!(bernoulli(n, BernoulliSign::Minus).unwrap().is_zero());
        }
    }

    #[test]
    fn index_cap_enforced() {
        assert!(bernoulli(65, BernoulliSign::Minus).is_err());
    }
}
