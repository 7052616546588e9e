//! Truncated multivariate power series over exact rationals.
//!
//! Truncation is per-variable (inclusive maximum exponent), with an
//! optional cap on total degree for work where only total order matters.
//! Arithmetic is exact and closed under truncation: multiplying and then
//! truncating agrees with truncating first, at equal truncation degrees.

use super::{rat_to_f64, Rational};
use crate::{Error, Result};
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Vec<String>,
    trunc: Vec<u32>,
    total_cap: Option<u32>,
    coeffs: BTreeMap<Vec<u32>, Rational>,
}

impl TruncatedSeries {
    pub fn zero(vars: &[&str], trunc: &[u32]) -> Self {
        assert_eq!(vars.len(), trunc.len());
        TruncatedSeries {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            trunc: trunc.to_vec(),
            total_cap: None,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn with_total_cap(mut self, cap: u32) -> Self {
        self.total_cap = Some(cap);
        self.retain_in_bounds();
        self
    }

    pub fn constant(vars: &[&str], trunc: &[u32], c: Rational) -> Self {
        let mut s = Self::zero(vars, trunc);
        if !c.is_zero() {
            s.coeffs.insert(vec![0; s.vars.len()], c);
        }
        s
    }

    /// The series `x_i` for the i-th variable.
    pub fn variable(vars: &[&str], trunc: &[u32], index: usize) -> Self {
        let mut s = Self::zero(vars, trunc);
        let mut exp = vec![0u32; s.vars.len()];
        exp[index] = 1;
        if trunc[index] >= 1 {
            s.coeffs.insert(exp, Rational::one());
        }
        s
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn truncation(&self) -> &[u32] {
        &self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.coeffs.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set_coefficient(&mut self, exps: Vec<u32>, c: Rational) {
        if !self.in_bounds(&exps) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&exps);
        } else {
            self.coeffs.insert(exps, c);
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn in_bounds(&self, exps: &[u32]) -> bool {
        if exps.iter().zip(&self.trunc).any(|(e, t)| e > t) {
            return false;
        }
        if let Some(cap) = self.total_cap {
            if exps.iter().sum::<u32>() > cap {
                return false;
            }
        }
        true
    }

    fn retain_in_bounds(&mut self) {
        let trunc = self.trunc.clone();
        let cap = self.total_cap;
        self.coeffs.retain(|exps, _| {
            exps.iter().zip(&trunc).all(|(e, t)| e <= t)
                && cap.map_or(true, |c| exps.iter().sum::<u32>() <= c)
        });
    }

    fn check_compatible(&self, rhs: &TruncatedSeries) -> Result<()> {
        if self.vars != rhs.vars || self.trunc != rhs.trunc || self.total_cap != rhs.total_cap {
            return Err(Error::InvalidParameter(
                "series have incompatible variable sets or truncation".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (exps, c) in &rhs.coeffs {
            let entry = out.coefficient(exps) + c;
            out.set_coefficient(exps.clone(), entry);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> TruncatedSeries {
        let mut out = self.clone();
        if s.is_zero() {
            out.coeffs.clear();
            return out;
        }
        for c in out.coeffs.values_mut() {
            *c = c.clone() * s;
        }
        out
    }

    pub fn mul(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(rhs)?;
        let mut out = Self {
            vars: self.vars.clone(),
            trunc: self.trunc.clone(),
            total_cap: self.total_cap,
            coeffs: BTreeMap::new(),
        };
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if !out.in_bounds(&exps) {
                    continue;
                }
                let prod = ca * cb;
                match out.coeffs.get_mut(&exps) {
                    Some(c) => *c += prod,
                    None => {
                        out.coeffs.insert(exps, prod);
                    }
                }
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<TruncatedSeries> {
        let mut out = Self::constant(
            &self.vars.iter().map(String::as_str).collect::<Vec<_>>(),
            &self.trunc,
            Rational::one(),
        );
        out.total_cap = self.total_cap;
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Highest total degree that can carry a term under the truncation.
    fn degree_budget(&self) -> u32 {
        let sum: u32 = self.trunc.iter().sum();
        self.total_cap.map_or(sum, |c| c.min(sum))
    }

    /// `exp(self)`; requires a vanishing constant term so the result stays
    /// rational.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::InvalidParameter(
                "series exp needs a zero constant term".into(),
            ));
        }
        let budget = self.degree_budget();
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let mut out = Self::constant(&vars, &self.trunc, Rational::one());
        out.total_cap = self.total_cap;
        let mut power = out.clone();
        let mut fact = Rational::one();
        for k in 1..=budget.max(1) {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            fact *= super::rat_int(k as i64);
            out = out.add(&power.scale(&(Rational::one() / fact.clone())))?;
        }
        Ok(out)
    }

    /// `log(self)`; requires constant term exactly 1.
    pub fn log(&self) -> Result<TruncatedSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::InvalidParameter(
                "series log needs a unit constant term".into(),
            ));
        }
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let one = Self::constant(&vars, &self.trunc, Rational::one());
        let mut one = one;
        one.total_cap = self.total_cap;
        let t = self.sub(&one)?;
        let budget = self.degree_budget();
        let mut out = Self::zero(&vars, &self.trunc);
        out.total_cap = self.total_cap;
        let mut power = one;
        for k in 1..=budget.max(1) {
            power = power.mul(&t)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&super::rat(sign, k as i64)))?;
        }
        Ok(out)
    }

    /// Substitutes `subs[i]` for the i-th variable. Every substituted
    /// series must share the target's variable set and have a vanishing
    /// constant term, which keeps truncation consistent.
    pub fn compose(&self, subs: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        if subs.len() != self.vars.len() {
            return Err(Error::InvalidParameter(
                "compose needs one substitution per variable".into(),
            ));
        }
        for s in subs {
            if !s.constant_term().is_zero() {
                return Err(Error::InvalidParameter(
                    "compose substitutions need zero constant terms".into(),
                ));
            }
        }
        for w in subs.windows(2) {
            w[0].check_compatible(&w[1])?;
        }
        let template = &subs[0];
        let vars: Vec<&str> = template.vars.iter().map(String::as_str).collect();
        let mut out = Self::zero(&vars, &template.trunc);
        out.total_cap = template.total_cap;

        // memoized powers per variable
        let mut powers: Vec<Vec<TruncatedSeries>> = subs
            .iter()
            .map(|s| {
                let mut one =
                    Self::constant(&vars, &template.trunc, Rational::one());
                one.total_cap = template.total_cap;
                vec![one, s.clone()]
            })
            .collect();

        for (exps, c) in &self.coeffs {
            let mut term = Self::constant(&vars, &template.trunc, c.clone());
            term.total_cap = template.total_cap;
            for (i, &e) in exps.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Compositional inverse of a univariate series with zero constant term
    /// and invertible linear coefficient: returns `g` with
    /// `self(g(x)) = x` up to truncation.
    pub fn reversion(&self) -> Result<TruncatedSeries> {
        if self.vars.len() != 1 {
            return Err(Error::InvalidParameter(
                "reversion is defined for univariate series".into(),
            ));
        }
        if !self.constant_term().is_zero() {
            return Err(Error::InvalidParameter(
                "reversion needs a zero constant term".into(),
            ));
        }
        let a1 = self.coefficient(&[1]);
        if a1.is_zero() {
            return Err(Error::InvalidParameter(
                "reversion needs an invertible linear coefficient".into(),
            ));
        }
        let order = self.trunc[0];
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let mut g = Self::zero(&vars, &self.trunc);
        g.total_cap = self.total_cap;
        g.set_coefficient(vec![1], Rational::one() / a1.clone());
        for n in 2..=order {
            // coefficient of x^n in self(g) must vanish; it is linear in g_n
            // with slope a1, everything else already determined.
            let composed = self.compose(std::slice::from_ref(&g))?;
            let err = composed.coefficient(&[n]);
            if err.is_zero() {
                continue;
            }
            let gn = g.coefficient(&[n]) - err / a1.clone();
            g.set_coefficient(vec![n], gn);
        }
        Ok(g)
    }

    /// Evaluates in floating point at the given variable values.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (exps, c) in &self.coeffs {
            let mut term = rat_to_f64(c);
            for (e, x) in exps.iter().zip(point) {
                term *= x.powi(*e as i32);
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, e) in self.vars.iter().zip(exps) {
                match e {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{e}")?,
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// JSON form: a list of `{"exponents": [...], "coefficient": "p/q"}`.
impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Term<'a> {
            exponents: &'a [u32],
            coefficient: String,
        }
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (exps, c) in &self.coeffs {
            seq.serialize_element(&Term {
                exponents: exps,
                coefficient: format!("{c}"),
            })?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, rat_int};

    fn x_series(order: u32) -> TruncatedSeries {
        TruncatedSeries::variable(&["x"], &[order], 0)
    }

    #[test]
    fn exp_log_inverse_pair() {
        // exp(log(1+x)) = 1+x at any truncation
        let one = TruncatedSeries::constant(&["x"], &[12], rat_int(1));
        let one_plus_x = one.add(&x_series(12)).unwrap();
        let round = one_plus_x.log().unwrap().exp().unwrap();
        assert_eq!(round, one_plus_x);
    }

    #[test]
    fn binomial_series_of_inverse_square() {
        // (1+x)^(-2) = sum (-1)^k (k+1) x^k: via exp(-2 log(1+x))
        let one = TruncatedSeries::constant(&["x"], &[10], rat_int(1));
        let one_plus_x = one.add(&x_series(10)).unwrap();
        let s = one_plus_x.log().unwrap().scale(&rat_int(-2)).exp().unwrap();
        for k in 0..=10u32 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(s.coefficient(&[k]), rat_int(sign * (k as i64 + 1)));
        }
    }

    #[test]
    fn reversion_inverts_composition() {
        // f(x) = x + x^2/2 + x^3/6 (truncated e^x - 1); f(g(x)) = x
        let mut f = TruncatedSeries::zero(&["x"], &[8]);
        f.set_coefficient(vec![1], rat_int(1));
        f.set_coefficient(vec![2], rat(1, 2));
        f.set_coefficient(vec![3], rat(1, 6));
        f.set_coefficient(vec![4], rat(1, 24));
        f.set_coefficient(vec![5], rat(1, 120));
        f.set_coefficient(vec![6], rat(1, 720));
        f.set_coefficient(vec![7], rat(1, 5040));
        f.set_coefficient(vec![8], rat(1, 40320));
        let g = f.reversion().unwrap();
        // g should be log(1+x) = x - x^2/2 + x^3/3 - ...
        for k in 1..=8u32 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(g.coefficient(&[k]), rat(sign, k as i64), "k = {k}");
        }
        let id = f.compose(std::slice::from_ref(&g)).unwrap();
        assert_eq!(id.coefficient(&[1]), rat_int(1));
        for k in 2..=8u32 {
            assert!(id.coefficient(&[k]).is_zero());
        }
    }

    #[test]
    fn truncate_then_multiply_commutes() {
        // ring-axiom style randomized-ish check on sparse series
        let mut a = TruncatedSeries::zero(&["x", "y"], &[5, 5]);
        let mut b = TruncatedSeries::zero(&["x", "y"], &[5, 5]);
        a.set_coefficient(vec![1, 0], rat_int(3));
        a.set_coefficient(vec![0, 2], rat(-1, 7));
        a.set_coefficient(vec![4, 1], rat(22, 3));
        b.set_coefficient(vec![0, 1], rat_int(2));
        b.set_coefficient(vec![3, 3], rat(5, 11));
        b.set_coefficient(vec![2, 0], rat(-9, 2));
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        assert_eq!(ab, ba);
        // distributivity
        let c = a.add(&b).unwrap().mul(&a).unwrap();
        let c2 = a.mul(&a).unwrap().add(&b.mul(&a).unwrap()).unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn log_rejects_non_unit_constant() {
        let two = TruncatedSeries::constant(&["x"], &[4], rat_int(2));
        assert!(two.log().is_err());
        assert!(x_series(4).log().is_err());
    }

    #[test]
    fn serializes_to_fraction_strings() {
        let mut s = TruncatedSeries::zero(&["x"], &[3]);
        s.set_coefficient(vec![2], rat(-3, 4));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"[{"exponents":[2],"coefficient":"-3/4"}]"#);
    }
}
