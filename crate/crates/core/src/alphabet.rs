//! Digit alphabets `E ⊆ ℕ` for the Gauss iterated function system.
//!
//! An alphabet is described symbolically (finite set, initial range,
//! cofinite tail, polynomial sequence tail, quasi-geometric sequence) and
//! enumerated on demand: an explicit prefix plus an optional tail
//! descriptor that downstream code closes in near-exact form.
//!
//! Grammar (components joined by `|`):
//!
//! ```text
//! set:a,b,c                     explicit digits
//! leq:N                         {1, ..., N}
//! geq:N                         {N, N+1, ...}
//! poly:c_d,...,c_0:geq:N        s_n = Σ c_k n^k for n ≥ N
//! poly:c_d,...,c_0:leq:N:from:M s_n for M ≤ n ≤ N
//! fib:geq:N                     Fibonacci numbers F_n for n ≥ N
//! fib:leq:N:from:M              F_n for M ≤ n ≤ N
//! geom:a,l:geq:N                s_n = a·l^n for n ≥ N
//! empty                         the empty alphabet
//! ```

use crate::numeric::{Jet, Kahan};
use crate::series::{bernoulli, rat_to_f64, BernoulliSign};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::collections::HashSet;
use std::fmt;

/// Golden ratio.
pub(crate) const PHI: f64 = 1.618033988749894848204586834365638118_f64;

/// Symbolic description of an alphabet.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphabetSpec {
    /// Explicit digits, strictly increasing.
    FiniteSet(Vec<u64>),
    /// `{1, ..., N}`.
    RangeLeq(u64),
    /// `{N, N+1, ...}`.
    TailGeq(u64),
    /// `s_n = Σ coeffs[k] n^k` over an index range; coefficients stored
    /// low-to-high.
    PolySeq { coeffs: Vec<i64>, range: SeqRange },
    /// Quasi-geometric integer sequence over an index range.
    QuasiGeom { kind: QgKind, range: SeqRange },
    Union(Vec<AlphabetSpec>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqRange {
    From(u64),
    Slice { from: u64, to: u64 },
}

impl SeqRange {
    pub fn start(&self) -> u64 {
        match self {
            SeqRange::From(n) => *n,
            SeqRange::Slice { from, .. } => *from,
        }
    }

    pub fn end(&self) -> Option<u64> {
        match self {
            SeqRange::From(_) => None,
            SeqRange::Slice { to, .. } => Some(*to),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QgKind {
    /// Fibonacci recurrence `s_n = s_{n-1} + s_{n-2}`, `s_1 = s_2 = 1`;
    /// Binet parameters `a = 1/√5, λ = φ, b = -1, ρ = -φ^{-2}`.
    Fibonacci,
    /// Pure powers `s_n = a · ratio^n` (`b = 0`).
    Geometric { a: u64, ratio: u64 },
}

/// Binet-form parameters `s_n = a λ^n (1 + b ρ^n)`, kept for asymptotics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinetParams {
    pub a: f64,
    pub lambda: f64,
    pub b: f64,
    pub rho: f64,
}

impl QgKind {
    pub fn binet(&self) -> BinetParams {
        match self {
            QgKind::Fibonacci => BinetParams {
                a: 1.0 / 5f64.sqrt(),
                lambda: PHI,
                b: -1.0,
                rho: -1.0 / (PHI * PHI),
            },
            QgKind::Geometric { a, ratio } => BinetParams {
                a: *a as f64,
                lambda: *ratio as f64,
                b: 0.0,
                rho: 0.0,
            },
        }
    }
}

/// One enumerated digit. `value` is the best f64 view, `ln` an accurate
/// natural log (meaningful even when the digit exceeds 2^53), and `exact`
/// the integer itself when it fits a u64.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Element {
    pub value: f64,
    pub ln: f64,
    pub exact: Option<u64>,
}

impl Element {
    fn from_u64(v: u64) -> Self {
        let value = v as f64;
        Element {
            value,
            ln: value.ln(),
            exact: Some(v),
        }
    }

    fn from_big(v: &BigUint) -> Result<Self> {
        let value = v.to_f64().unwrap_or(f64::INFINITY);
        if !value.is_finite() {
            return Err(Error::Numerical(
                "alphabet element exceeds the f64 range".into(),
            ));
        }
        Ok(Element {
            value,
            ln: value.ln(),
            exact: v.to_u64(),
        })
    }
}

/// Tail decay classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// `s_n ~ leading · n^degree`.
    Polynomial { degree: u32, leading: f64 },
    /// `s_n` grows by a factor `ratio > 1` per index.
    Geometric { ratio: f64 },
}

/// Residual tail left after the explicit prefix, closed downstream either
/// by Euler–Maclaurin (polynomial growth) or geometric truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct TailDescriptor {
    pub class: DecayClass,
    /// First sequence index not covered by the explicit prefix.
    pub start_index: u64,
    pub(crate) seq: TailSequence,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TailSequence {
    Poly(Vec<i64>),
    Qg(QgKind),
}

/// Explicit prefix plus residual tails (one per infinite component).
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub explicit: Vec<Element>,
    pub tail: Vec<TailDescriptor>,
}

/// Parses the grammar above.
pub fn parse_alphabet(spec: &str) -> Result<AlphabetSpec> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::Syntax("empty alphabet spec".into()));
    }
    let parts: Vec<&str> = spec.split('|').collect();
    let mut comps = Vec::with_capacity(parts.len());
    for part in parts {
        comps.push(parse_component(part.trim())?);
    }
    let spec = if comps.len() == 1 {
        comps.pop().unwrap()
    } else {
        AlphabetSpec::Union(comps)
    };
    spec.validate()?;
    Ok(spec)
}

fn parse_u64(tok: &str, what: &str) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| Error::Syntax(format!("expected integer for {what}, got '{tok}'")))
}

fn parse_component(part: &str) -> Result<AlphabetSpec> {
    if part == "empty" {
        return Ok(AlphabetSpec::FiniteSet(Vec::new()));
    }
    let toks: Vec<&str> = part.split(':').collect();
    match toks.as_slice() {
        ["set", list] => {
            let mut vals = Vec::new();
            for item in list.split(',') {
                vals.push(parse_u64(item.trim(), "set element")?);
            }
            Ok(AlphabetSpec::FiniteSet(vals))
        }
        ["leq", n] => Ok(AlphabetSpec::RangeLeq(parse_u64(n, "leq bound")?)),
        ["geq", n] => Ok(AlphabetSpec::TailGeq(parse_u64(n, "geq start")?)),
        ["poly", coeffs, rest @ ..] => {
            let mut cs: Vec<i64> = Vec::new();
            for item in coeffs.split(',') {
                cs.push(item.trim().parse::<i64>().map_err(|_| {
                    Error::Syntax(format!("bad polynomial coefficient '{item}'"))
                })?);
            }
            cs.reverse(); // grammar is high-to-low, storage low-to-high
            let range = parse_range(rest)?;
            Ok(AlphabetSpec::PolySeq { coeffs: cs, range })
        }
        ["fib", rest @ ..] => Ok(AlphabetSpec::QuasiGeom {
            kind: QgKind::Fibonacci,
            range: parse_range(rest)?,
        }),
        ["geom", params, rest @ ..] => {
            let ps: Vec<&str> = params.split(',').collect();
            if ps.len() != 2 {
                return Err(Error::Syntax(format!(
                    "geom needs 'a,ratio', got '{params}'"
                )));
            }
            let a = parse_u64(ps[0].trim(), "geom scale")?;
            let ratio = parse_u64(ps[1].trim(), "geom ratio")?;
            Ok(AlphabetSpec::QuasiGeom {
                kind: QgKind::Geometric { a, ratio },
                range: parse_range(rest)?,
            })
        }
        _ => Err(Error::Syntax(format!("unrecognized component '{part}'"))),
    }
}

fn parse_range(rest: &[&str]) -> Result<SeqRange> {
    match rest {
        ["geq", n] => Ok(SeqRange::From(parse_u64(n, "range start")?)),
        ["leq", n, "from", m] => {
            let to = parse_u64(n, "range end")?;
            let from = parse_u64(m, "range start")?;
            if from > to {
                return Err(Error::InvalidParameter(format!(
                    "range start {from} exceeds end {to}"
                )));
            }
            Ok(SeqRange::Slice { from, to })
        }
        _ => Err(Error::Syntax(format!(
            "expected 'geq:N' or 'leq:N:from:M', got '{}'",
            rest.join(":")
        ))),
    }
}

impl AlphabetSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        parse_alphabet(spec)
    }

    pub fn empty() -> Self {
        AlphabetSpec::FiniteSet(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        match self {
            AlphabetSpec::FiniteSet(v) => v.is_empty(),
            AlphabetSpec::Union(cs) => cs.iter().all(|c| c.is_empty()),
            _ => false,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            AlphabetSpec::FiniteSet(_) | AlphabetSpec::RangeLeq(_) => true,
            AlphabetSpec::TailGeq(_) => false,
            AlphabetSpec::PolySeq { range, .. } | AlphabetSpec::QuasiGeom { range, .. } => {
                range.end().is_some()
            }
            AlphabetSpec::Union(cs) => cs.iter().all(|c| c.is_finite()),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            AlphabetSpec::FiniteSet(vals) => {
                let mut seen = HashSet::new();
                for &v in vals {
                    if v == 0 {
                        return Err(Error::InvalidAlphabet("digit 0 is not allowed".into()));
                    }
                    if !seen.insert(v) {
                        return Err(Error::InvalidAlphabet(format!("duplicate digit {v}")));
                    }
                }
                Ok(())
            }
            AlphabetSpec::RangeLeq(n) | AlphabetSpec::TailGeq(n) => {
                if *n == 0 {
                    return Err(Error::InvalidParameter("bound must be positive".into()));
                }
                Ok(())
            }
            AlphabetSpec::PolySeq { coeffs, range } => validate_poly(coeffs, range.start()),
            AlphabetSpec::QuasiGeom { kind, range } => {
                match kind {
                    QgKind::Fibonacci => {
                        if range.start() < 2 {
                            return Err(Error::InvalidParameter(
                                "Fibonacci tails start at index 2 (F_1 = F_2 = 1 repeat)".into(),
                            ));
                        }
                    }
                    QgKind::Geometric { a, ratio } => {
                        if *a == 0 || *ratio < 2 {
                            return Err(Error::InvalidParameter(
                                "geom needs a >= 1 and ratio >= 2".into(),
                            ));
                        }
                    }
                }
                Ok(())
            }
            AlphabetSpec::Union(cs) => {
                for c in cs {
                    if matches!(c, AlphabetSpec::Union(_)) {
                        return Err(Error::Syntax("nested unions are not supported".into()));
                    }
                    c.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Leaf components (a union is flattened, everything else is itself).
    pub(crate) fn components(&self) -> Vec<AlphabetSpec> {
        match self {
            AlphabetSpec::Union(cs) => cs.clone(),
            other => vec![other.clone()],
        }
    }

    /// Infimum of `s` with `Σ n^{-2s}` finite: -∞ for finite alphabets,
    /// `1/(2d)` for degree-d polynomial tails, `0` for quasi-geometric
    /// tails; unions take the maximum over components.
    pub fn abscissa(&self) -> f64 {
        let mut theta = f64::NEG_INFINITY;
        for c in self.components() {
            let t = match c {
                AlphabetSpec::TailGeq(_) => 0.5,
                AlphabetSpec::PolySeq { ref coeffs, range } if range.end().is_none() => {
                    1.0 / (2.0 * (coeffs.len() as f64 - 1.0))
                }
                AlphabetSpec::QuasiGeom { range, .. } if range.end().is_none() => 0.0,
                _ => f64::NEG_INFINITY,
            };
            theta = theta.max(t);
        }
        theta
    }
}

fn validate_poly(coeffs: &[i64], start: u64) -> Result<()> {
    if coeffs.len() < 2 || *coeffs.last().unwrap() <= 0 {
        return Err(Error::InvalidAlphabet(
            "polynomial sequences need degree >= 1 with positive leading coefficient".into(),
        ));
    }
    // beyond this index the derivative is dominated by the leading term
    let d = (coeffs.len() - 1) as f64;
    let lead = *coeffs.last().unwrap() as f64;
    let lower: f64 = coeffs[..coeffs.len() - 1]
        .iter()
        .enumerate()
        .map(|(k, &c)| k as f64 * c.abs() as f64)
        .sum();
    let safe = (lower / (d * lead) + 1.0).ceil() as u64;
    let mut prev: Option<i128> = None;
    let mut n = start;
    loop {
        let v = eval_poly_i128(coeffs, n)?;
        if v < 1 {
            return Err(Error::InvalidAlphabet(format!(
                "sequence value {v} at index {n} is not positive"
            )));
        }
        if let Some(p) = prev {
            if v <= p {
                return Err(Error::InvalidAlphabet(format!(
                    "sequence is not strictly increasing at index {n}"
                )));
            }
        }
        prev = Some(v);
        if n >= safe || n >= start + 4096 {
            break;
        }
        n += 1;
    }
    Ok(())
}

fn eval_poly_i128(coeffs: &[i64], n: u64) -> Result<i128> {
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc
            .checked_mul(n as i128)
            .and_then(|a| a.checked_add(c as i128))
            .ok_or_else(|| Error::Numerical("polynomial sequence value overflow".into()))?;
    }
    Ok(acc)
}

pub(crate) fn poly_value(coeffs: &[i64], n: u64) -> Result<u64> {
    let v = eval_poly_i128(coeffs, n)?;
    u64::try_from(v).map_err(|_| Error::Numerical("sequence value outside u64".into()))
}

/// Iterator over quasi-geometric elements as exact big integers.
pub(crate) struct QgIter {
    kind: QgKind,
    index: u64,
    // Fibonacci state: (F_{index-1}, F_{index})
    prev: BigUint,
    curr: BigUint,
}

impl QgIter {
    pub(crate) fn new(kind: QgKind, start: u64) -> Self {
        match kind {
            QgKind::Fibonacci => {
                // walk up to (F_{start-1}, F_start)
                let (mut a, mut b) = (BigUint::from(0u32), BigUint::from(1u32));
                for _ in 1..start {
                    let next = &a + &b;
                    a = b;
                    b = next;
                }
                QgIter {
                    kind,
                    index: start,
                    prev: a,
                    curr: b,
                }
            }
            QgKind::Geometric { a, ratio } => {
                let v = BigUint::from(a) * BigUint::from(ratio).pow(start as u32);
                QgIter {
                    kind,
                    index: start,
                    prev: BigUint::from(0u32),
                    curr: v,
                }
            }
        }
    }

    pub(crate) fn index(&self) -> u64 {
        self.index
    }

    pub(crate) fn value(&self) -> &BigUint {
        &self.curr
    }

    pub(crate) fn advance(&mut self) {
        match self.kind {
            QgKind::Fibonacci => {
                let next = &self.prev + &self.curr;
                self.prev = std::mem::replace(&mut self.curr, next);
            }
            QgKind::Geometric { ratio, .. } => {
                self.curr = &self.curr * BigUint::from(ratio);
            }
        }
        self.index += 1;
    }
}

/// Hard cap on explicit prefixes; tails are meant to be closed in
/// near-exact form, never brute-forced.
pub(crate) const MAX_PREFIX: usize = 1 << 22;

pub(crate) struct PrefixPolicy {
    pub weight_tol: f64,
    pub s: f64,
    /// Polynomial tails hand off at the first element >= this value.
    pub poly_handoff_value: Option<f64>,
}

impl AlphabetSpec {
    /// Enumerates the alphabet: explicit digits until the pointwise weight
    /// `s_n^{-2s}` drops below `weight_tol` (or the set is exhausted), the
    /// remaining mass described by tail descriptors for closed-form
    /// summation. Requires `s` above the convergence abscissa.
    pub fn enumerate(&self, weight_tol: f64, s: f64) -> Result<Enumeration> {
        self.enumerate_with_policy(&PrefixPolicy {
            weight_tol,
            s,
            poly_handoff_value: None,
        })
    }

    /// Enumeration with an assembly-style handoff: polynomial tails switch
    /// to the descriptor at the first element at or above a set value,
    /// since tail-closure accuracy there is grid-driven rather than
    /// weight-driven.
    pub(crate) fn enumerate_with_policy(&self, policy: &PrefixPolicy) -> Result<Enumeration> {
        let s = policy.s;
        if !self.is_finite() && s <= self.abscissa() {
            return Err(Error::Divergent {
                s,
                abscissa: self.abscissa(),
            });
        }
        let mut explicit = Vec::new();
        let mut tails = Vec::new();
        for comp in self.components() {
            match comp {
                AlphabetSpec::FiniteSet(vals) => {
                    explicit.extend(vals.into_iter().map(Element::from_u64));
                }
                AlphabetSpec::RangeLeq(n) => {
                    push_poly_range(&mut explicit, &[0, 1], 1, Some(n), policy, &mut tails)?;
                }
                AlphabetSpec::TailGeq(n) => {
                    push_poly_range(&mut explicit, &[0, 1], n, None, policy, &mut tails)?;
                }
                AlphabetSpec::PolySeq { coeffs, range } => {
                    push_poly_range(
                        &mut explicit,
                        &coeffs,
                        range.start(),
                        range.end(),
                        policy,
                        &mut tails,
                    )?;
                }
                AlphabetSpec::QuasiGeom { kind, range } => {
                    push_qg_range(&mut explicit, kind, range, policy, &mut tails)?;
                }
                AlphabetSpec::Union(_) => unreachable!("unions are flattened"),
            }
        }
        check_disjoint(&explicit, &tails)?;
        explicit.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
        Ok(Enumeration {
            explicit,
            tail: tails,
        })
    }
}

fn push_poly_range(
    explicit: &mut Vec<Element>,
    coeffs: &[i64],
    from: u64,
    to: Option<u64>,
    policy: &PrefixPolicy,
    tails: &mut Vec<TailDescriptor>,
) -> Result<()> {
    let mut n = from;
    loop {
        if let Some(end) = to {
            if n > end {
                return Ok(());
            }
        }
        let v = poly_value(coeffs, n)?;
        let vf = v as f64;
        let cutoff = to.is_none()
            && match policy.poly_handoff_value {
                Some(h) => vf >= h,
                None => vf.powf(-2.0 * policy.s) < policy.weight_tol,
            };
        if cutoff {
            let degree = (coeffs.len() - 1) as u32;
            tails.push(TailDescriptor {
                class: DecayClass::Polynomial {
                    degree,
                    leading: *coeffs.last().unwrap() as f64,
                },
                start_index: n,
                seq: TailSequence::Poly(coeffs.to_vec()),
            });
            return Ok(());
        }
        explicit.push(Element::from_u64(v));
        if explicit.len() > MAX_PREFIX {
            return Err(Error::Numerical(format!(
                "explicit prefix exceeded {MAX_PREFIX} elements; raise weight_tol"
            )));
        }
        n += 1;
    }
}

fn push_qg_range(
    explicit: &mut Vec<Element>,
    kind: QgKind,
    range: SeqRange,
    policy: &PrefixPolicy,
    tails: &mut Vec<TailDescriptor>,
) -> Result<()> {
    if range.end().is_none() && policy.s <= 0.0 {
        return Err(Error::Divergent {
            s: policy.s,
            abscissa: 0.0,
        });
    }
    let mut iter = QgIter::new(kind, range.start());
    loop {
        if let Some(end) = range.end() {
            if iter.index() > end {
                return Ok(());
            }
        }
        let el = Element::from_big(iter.value())?;
        let weight = (-2.0 * policy.s * el.ln).exp();
        if range.end().is_none() && weight < policy.weight_tol {
            tails.push(TailDescriptor {
                class: DecayClass::Geometric {
                    ratio: kind.binet().lambda,
                },
                start_index: iter.index(),
                seq: TailSequence::Qg(kind),
            });
            return Ok(());
        }
        explicit.push(el);
        if explicit.len() > MAX_PREFIX {
            return Err(Error::Numerical(format!(
                "explicit prefix exceeded {MAX_PREFIX} elements; raise weight_tol"
            )));
        }
        iter.advance();
    }
}

fn check_disjoint(explicit: &[Element], tails: &[TailDescriptor]) -> Result<()> {
    let mut seen: HashSet<u64> = HashSet::with_capacity(explicit.len());
    let mut max_small = 0u64;
    for e in explicit {
        if let Some(v) = e.exact {
            if !seen.insert(v) {
                return Err(Error::InvalidAlphabet(format!(
                    "union components overlap at digit {v}"
                )));
            }
            max_small = max_small.max(v);
        }
    }
    // explicit digits must not re-appear inside a tail
    for tail in tails {
        match &tail.seq {
            TailSequence::Poly(coeffs) => {
                let mut n = tail.start_index;
                loop {
                    let v = poly_value(coeffs, n)?;
                    if v > max_small {
                        break;
                    }
                    if seen.contains(&v) {
                        return Err(Error::InvalidAlphabet(format!(
                            "union components overlap at digit {v} (inside a tail)"
                        )));
                    }
                    n += 1;
                }
            }
            TailSequence::Qg(kind) => {
                let mut iter = QgIter::new(*kind, tail.start_index);
                while let Some(v) = iter.value().to_u64() {
                    if v > max_small {
                        break;
                    }
                    if seen.contains(&v) {
                        return Err(Error::InvalidAlphabet(format!(
                            "union components overlap at digit {v} (inside a tail)"
                        )));
                    }
                    iter.advance();
                }
            }
        }
    }
    Ok(())
}

/// `Σ_{n ∈ E} n^{-beta}` with near-exact tail closure. Returns the value
/// and an error bound covering the tail remainder.
pub fn power_sum(spec: &AlphabetSpec, beta: f64) -> Result<(f64, f64)> {
    if !spec.is_finite() && beta <= 2.0 * spec.abscissa() {
        return Err(Error::Divergent {
            s: beta / 2.0,
            abscissa: spec.abscissa(),
        });
    }
    let policy = PrefixPolicy {
        weight_tol: 1e-18,
        s: beta / 2.0,
        poly_handoff_value: Some(256.0),
    };
    let en = spec.enumerate_with_policy(&policy)?;
    let mut acc = Kahan::new();
    for e in en.explicit.iter().rev() {
        acc.add((-beta * e.ln).exp());
    }
    let mut err = 0.0;
    for tail in &en.tail {
        match &tail.seq {
            TailSequence::Poly(coeffs) => {
                let (v, e) = poly_tail_power_sum(coeffs, tail.start_index, beta)?;
                acc.add(v);
                err += e;
            }
            TailSequence::Qg(kind) => {
                let (v, e) = qg_tail_power_sum(*kind, tail.start_index, beta)?;
                acc.add(v);
                err += e;
            }
        }
    }
    Ok((acc.value(), err))
}

/// Euler–Maclaurin for `Σ_{n >= n0} s(n)^{-beta}` with `s` polynomial:
/// order-8 boundary corrections from jets, integral on the substitution
/// `n = n0/u` with Gauss–Jacobi weight `u^{beta d - 2}`.
pub(crate) fn poly_tail_power_sum(coeffs: &[i64], n0: u64, beta: f64) -> Result<(f64, f64)> {
    const P: usize = 8;
    let d = (coeffs.len() - 1) as f64;
    if beta * d <= 1.0 {
        return Err(Error::Divergent {
            s: beta / 2.0,
            abscissa: 1.0 / (2.0 * d),
        });
    }
    let n0f = n0 as f64;

    // ∫_{n0}^∞ s(n)^{-beta} dn = n0 ∫_0^1 u^{beta d - 2} Ψ(u) du with
    // Ψ(u) = s(n0/u)^{-beta} u^{-beta d} analytic on [0, 1]
    let (nodes, weights) = crate::numeric::gauss_jacobi_unit(40, beta * d - 2.0)?;
    let mut integral = 0.0;
    for (&u, &w) in nodes.iter().zip(&weights) {
        let n = n0f / u;
        let s_ln = poly_ln(coeffs, n);
        let smooth = (-beta * s_ln - (beta * d) * u.ln()).exp();
        integral += w * smooth;
    }
    integral *= n0f;

    // boundary terms from jets of f(n) = s(n)^{-beta} at n0
    let jet_n = Jet::variable(n0f, P);
    let s_jet = poly_jet(coeffs, &jet_n);
    let f_jet = s_jet.powf(-beta)?;
    let mut value = integral + 0.5 * f_jet.value();
    for i in 1..=(P / 2) {
        let b2i = rat_to_f64(&bernoulli(2 * i, BernoulliSign::Minus)?);
        // B_{2i}/(2i)! * f^{(2i-1)}(n0); the jet stores f^{(k)}/k!
        value -= b2i / (2 * i) as f64 * f_jet.c[2 * i - 1];
    }
    // remainder proxy: 2 zeta(P)/(2pi)^P |f^(P)(n0)| * decay length
    let fp = f_jet.c[P] * factorial(P);
    let rem = 2.0 * 1.005 / std::f64::consts::TAU.powi(P as i32) * fp.abs() * n0f
        / (beta * d + P as f64 - 1.0);
    Ok((value, rem.abs()))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// log s(n) for f64 n (monotone region only).
fn poly_ln(coeffs: &[i64], n: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * n + c as f64;
    }
    acc.ln()
}

fn poly_jet(coeffs: &[i64], n: &Jet) -> Jet {
    let mut acc = Jet::constant(0.0, n.order());
    for &c in coeffs.iter().rev() {
        acc = acc.mul(n).shift(c as f64);
    }
    acc
}

/// Accurate natural log of a big integer, `None` beyond f64 range.
pub(crate) fn element_ln(v: &BigUint) -> Option<f64> {
    let f = v.to_f64()?;
    if f.is_finite() && f > 0.0 {
        Some(f.ln())
    } else {
        None
    }
}

fn qg_tail_power_sum(kind: QgKind, n0: u64, beta: f64) -> Result<(f64, f64)> {
    // terms decay at least geometrically with ratio lambda^{-beta}
    let mut iter = QgIter::new(kind, n0);
    let mut acc = Kahan::new();
    let mut last;
    loop {
        let el = Element::from_big(iter.value())?;
        let term = (-beta * el.ln).exp();
        acc.add(term);
        last = term;
        if term < 1e-18 * acc.value().max(1e-300) || term == 0.0 {
            break;
        }
        iter.advance();
    }
    let ratio = kind.binet().lambda.powf(-beta);
    let rem = last * ratio / (1.0 - ratio);
    Ok((acc.value() + rem, rem))
}

impl fmt::Display for AlphabetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetSpec::FiniteSet(v) if v.is_empty() => write!(f, "empty"),
            AlphabetSpec::FiniteSet(v) => {
                let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "set:{}", items.join(","))
            }
            AlphabetSpec::RangeLeq(n) => write!(f, "leq:{n}"),
            AlphabetSpec::TailGeq(n) => write!(f, "geq:{n}"),
            AlphabetSpec::PolySeq { coeffs, range } => {
                let cs: Vec<String> = coeffs.iter().rev().map(|c| c.to_string()).collect();
                write!(f, "poly:{}:{}", cs.join(","), fmt_range(range))
            }
            AlphabetSpec::QuasiGeom { kind, range } => match kind {
                QgKind::Fibonacci => write!(f, "fib:{}", fmt_range(range)),
                QgKind::Geometric { a, ratio } => {
                    write!(f, "geom:{a},{ratio}:{}", fmt_range(range))
                }
            },
            AlphabetSpec::Union(cs) => {
                let items: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "{}", items.join("|"))
            }
        }
    }
}

fn fmt_range(r: &SeqRange) -> String {
    match r {
        SeqRange::From(n) => format!("geq:{n}"),
        SeqRange::Slice { from, to } => format!("leq:{to}:from:{from}"),
    }
}
