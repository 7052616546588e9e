//! Transfer operators of the Gauss iterated function system on a Chebyshev
//! collocation grid.
//!
//! The geometric operator is `L_s f(x) = Σ_{n∈E} (n+x)^{-2s} f(1/(n+x))`.
//! Rows are point evaluations at the nodes; columns track the Lagrange
//! basis, so the matrix entry (i, j) is `Σ_n (n+x_i)^{-2s} ℓ_j(1/(n+x_i))`.
//! Infinite alphabet tails are closed by Euler–Maclaurin in the sequence
//! index: boundary derivatives come from truncated Taylor jets and the
//! integral from Gauss–Jacobi quadrature (panel quadrature when log
//! weights are present). Images `1/(n+x)` always lie in `(0, 1]`, so
//! interpolation never extrapolates.

use crate::alphabet::{AlphabetSpec, Element, PrefixPolicy, TailDescriptor, TailSequence};
use crate::numeric::{gauss_jacobi_unit, Jet};
use crate::series::{bernoulli, rat_to_f64, BernoulliSign};
use crate::{parallel, Error, Result};
use nalgebra::{DMatrix, DVector};
use std::sync::{Arc, OnceLock};

/// Chebyshev–Lobatto collocation grid on [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevGrid {
    nodes: Vec<f64>,
    bary_weights: Vec<f64>,
}

/// Builds an `m`-node grid, `m >= 8`. Nodes are strictly increasing with
/// exact endpoints 0 and 1.
pub fn make_grid(m: usize) -> Result<Arc<ChebyshevGrid>> {
    if m < 8 {
        return Err(Error::GridTooSmall { min: 8, got: m });
    }
    let mut nodes = Vec::with_capacity(m);
    for k in 0..m {
        // sin^2 form hits the endpoints exactly and increases with k
        let t = (k as f64) * std::f64::consts::FRAC_PI_2 / (m as f64 - 1.0);
        nodes.push(t.sin() * t.sin());
    }
    let mut bary_weights = Vec::with_capacity(m);
    for k in 0..m {
        let mut w = if k % 2 == 0 { 1.0 } else { -1.0 };
        if k == 0 || k == m - 1 {
            w *= 0.5;
        }
        bary_weights.push(w);
    }
    Ok(Arc::new(ChebyshevGrid {
        nodes,
        bary_weights,
    }))
}

impl ChebyshevGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Writes all Lagrange basis values `ℓ_j(y)` into `out`.
    pub fn basis_at(&self, y: f64, out: &mut [f64]) {
        let m = self.nodes.len();
        debug_assert_eq!(out.len(), m);
        for j in 0..m {
            if y == self.nodes[j] {
                out.iter_mut().for_each(|v| *v = 0.0);
                out[j] = 1.0;
                return;
            }
        }
        let mut denom = 0.0;
        for j in 0..m {
            let q = self.bary_weights[j] / (y - self.nodes[j]);
            out[j] = q;
            denom += q;
        }
        let inv = 1.0 / denom;
        out.iter_mut().for_each(|v| *v *= inv);
    }

    /// Barycentric evaluation of grid data at `y`.
    pub fn eval(&self, values: &[f64], y: f64) -> f64 {
        let m = self.nodes.len();
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..m {
            if y == self.nodes[j] {
                return values[j];
            }
            let q = self.bary_weights[j] / (y - self.nodes[j]);
            num += q * values[j];
            den += q;
        }
        num / den
    }

    /// Jet of every `ℓ_j` along a jet-valued argument. The argument's value
    /// must not coincide with a nonzero node (tail closures evaluate below
    /// the first positive node).
    fn basis_jets(&self, y: &Jet) -> Result<Vec<Jet>> {
        let m = self.nodes.len();
        let mut qs = Vec::with_capacity(m);
        let mut denom = Jet::constant(0.0, y.order());
        for j in 0..m {
            let q = y.shift(-self.nodes[j]).recip()?.scale(self.bary_weights[j]);
            denom = denom.add(&q);
            qs.push(q);
        }
        let dinv = denom.recip()?;
        Ok(qs.into_iter().map(|q| q.mul(&dinv)).collect())
    }

    /// Jet of the interpolant of `values` along a jet-valued argument.
    fn eval_jet(&self, values: &[f64], y: &Jet) -> Result<Jet> {
        let m = self.nodes.len();
        let mut num = Jet::constant(0.0, y.order());
        let mut den = Jet::constant(0.0, y.order());
        for j in 0..m {
            let q = y.shift(-self.nodes[j]).recip()?.scale(self.bary_weights[j]);
            num = num.add(&q.scale(values[j]));
            den = den.add(&q);
        }
        num.div(&den)
    }

    /// Taylor coefficients of the interpolant at the node x = 0, low
    /// orders only (spectral differentiation amplifies roundoff by roughly
    /// m^2 per order).
    pub(crate) fn taylor_at_zero(&self, values: &[f64], order: usize) -> Vec<f64> {
        let m = self.nodes.len();
        let y = Jet::variable(0.0, order);
        // node 0 is a grid node: multiply through by (y - x_0) = y
        let mut num = Jet::constant(self.bary_weights[0] * values[0], order);
        let mut den = Jet::constant(self.bary_weights[0], order);
        for j in 1..m {
            // w_j * y / (y - x_j)
            let q = y
                .shift(-self.nodes[j])
                .recip()
                .expect("nonzero node")
                .mul(&y)
                .scale(self.bary_weights[j]);
            num = num.add(&q.scale(values[j]));
            den = den.add(&q);
        }
        num.div(&den).expect("unit denominator").c
    }
}

/// Function values on a grid with barycentric interpolation semantics.
#[derive(Debug, Clone)]
pub struct GridFunction {
    grid: Arc<ChebyshevGrid>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Arc<ChebyshevGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(values.len(), grid.len()));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn from_fn(grid: &Arc<ChebyshevGrid>, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        GridFunction {
            grid: grid.clone(),
            values,
        }
    }

    pub fn constant(grid: &Arc<ChebyshevGrid>, c: f64) -> Self {
        GridFunction {
            grid: grid.clone(),
            values: vec![c; grid.len()],
        }
    }

    pub fn grid(&self) -> &Arc<ChebyshevGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Barycentric evaluation anywhere in [0, 1]; exact at nodes.
    pub fn eval(&self, x: f64) -> f64 {
        self.grid.eval(&self.values, x)
    }

    pub fn max_abs_diff(&self, other: &GridFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Assembly metadata.
#[derive(Debug, Clone)]
pub struct OpMeta {
    pub alphabet: String,
    pub s: f64,
    pub tail_order: usize,
    /// Power of the log weight `(-2 log(n+x))^j` carried by the operator
    /// (0 for the plain transfer operator).
    pub log_power: usize,
}

/// Dense collocation matrix for a transfer-type operator.
#[derive(Debug, Clone)]
pub struct DiscretizedOperator {
    grid: Arc<ChebyshevGrid>,
    matrix: DMatrix<f64>,
    meta: OpMeta,
    /// Accumulated bound on the tail-closure error per row.
    tail_bound: f64,
}

impl DiscretizedOperator {
    pub fn from_matrix(grid: Arc<ChebyshevGrid>, matrix: DMatrix<f64>, meta: OpMeta) -> Self {
        DiscretizedOperator {
            grid,
            matrix,
            meta,
            tail_bound: 0.0,
        }
    }

    pub fn grid(&self) -> &Arc<ChebyshevGrid> {
        &self.grid
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn meta(&self) -> &OpMeta {
        &self.meta
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn size(&self) -> usize {
        self.grid.len()
    }

    /// Row sums, i.e. the operator applied to the constant function 1.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.size())
            .map(|i| self.matrix.row(i).iter().sum())
            .collect()
    }
}

/// Matrix–vector application `(L f)(x_i)`.
pub fn apply(op: &DiscretizedOperator, f: &GridFunction) -> Result<GridFunction> {
    if !Arc::ptr_eq(op.grid(), f.grid()) && op.grid().nodes() != f.grid().nodes() {
        return Err(Error::GridMismatch(op.size(), f.grid().len()));
    }
    let v = DVector::from_column_slice(f.values());
    let out = &op.matrix * v;
    GridFunction::new(op.grid.clone(), out.iter().copied().collect())
}

/// Margin between the tail handoff image `1/n0` and the first positive
/// node; keeps the Lagrange basis analytic (with modest growth) on the
/// whole tail image segment.
const TAIL_HANDOFF_MARGIN: f64 = 2.5;

fn tail_handoff_value(grid: &ChebyshevGrid) -> f64 {
    (TAIL_HANDOFF_MARGIN / grid.nodes()[1]).max(64.0)
}

/// Assembles the transfer operator at parameter `s` with tail order `p`.
pub fn assemble(
    alphabet: &AlphabetSpec,
    s: f64,
    grid: &Arc<ChebyshevGrid>,
    p: usize,
) -> Result<DiscretizedOperator> {
    assemble_log_power(alphabet, s, grid, p, 0)
}

/// The weighted operator
/// `α_j f(x) = (1/j!) Σ_n (n+x)^{-2δ} (-2 log(n+x))^j f(1/(n+x))`.
/// `j = 0` coincides with [`assemble`].
pub fn alpha_op(
    alphabet: &AlphabetSpec,
    delta: f64,
    j: usize,
    grid: &Arc<ChebyshevGrid>,
) -> Result<DiscretizedOperator> {
    let mut op = assemble_log_power(alphabet, delta, grid, DEFAULT_TAIL_ORDER, j)?;
    let fact: f64 = (1..=j).map(|k| k as f64).product();
    op.matrix /= fact;
    op.tail_bound /= fact;
    Ok(op)
}

pub const DEFAULT_TAIL_ORDER: usize = 8;

fn check_tail_order(p: usize) -> Result<()> {
    if p < 2 || p > 16 || p % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "tail order must be even in 2..=16, got {p}"
        )));
    }
    Ok(())
}

fn assemble_log_power(
    alphabet: &AlphabetSpec,
    s: f64,
    grid: &Arc<ChebyshevGrid>,
    p: usize,
    log_power: usize,
) -> Result<DiscretizedOperator> {
    check_tail_order(p)?;
    if !alphabet.is_finite() && s <= alphabet.abscissa() {
        return Err(Error::Divergent {
            s,
            abscissa: alphabet.abscissa(),
        });
    }
    let en = alphabet.enumerate_with_policy(&PrefixPolicy {
        weight_tol: 1e-18,
        s,
        poly_handoff_value: Some(tail_handoff_value(grid)),
    })?;
    // validate tail convergence up front so row closures cannot fail
    for tail in &en.tail {
        if let TailSequence::Poly(coeffs) = &tail.seq {
            let d = (coeffs.len() - 1) as f64;
            if 2.0 * s * d <= 1.0 {
                return Err(Error::Divergent {
                    s,
                    abscissa: 1.0 / (2.0 * d),
                });
            }
        }
    }
    let m = grid.len();
    let mut data = vec![0.0f64; m * m];
    let nodes = grid.nodes().to_vec();
    {
        let grid_ref = grid.clone();
        let en_ref = &en;
        parallel::fill_rows(&mut data, m, move |i, row| {
            let x = nodes[i];
            let mut scratch = vec![0.0f64; m];
            row_fill(
                &grid_ref,
                x,
                en_ref,
                s,
                p,
                log_power,
                RowTarget::Basis(row),
                &mut scratch,
            )
            .expect("row assembly cannot fail after tail validation");
        });
    }
    // tail bounds are cheap to recover separately (jets at one point/row)
    let mut tail_bound = 0.0f64;
    for &x in grid.nodes() {
        tail_bound = tail_bound.max(row_tail_bound(grid, x, &en, s, p, log_power)?);
    }
    let matrix = DMatrix::from_row_slice(m, m, &data);
    Ok(DiscretizedOperator {
        grid: grid.clone(),
        matrix,
        meta: OpMeta {
            alphabet: alphabet.to_string(),
            s,
            tail_order: p,
            log_power,
        },
        tail_bound,
    })
}

/// `L M_φ^j f` computed directly as
/// `Σ_n (n+x)^{-2δ} (-2 log(n+x))^j f(1/(n+x))` (never as a product of
/// matrices; the mid factor is singular at the node x = 0 while every
/// composed evaluation stays inside (0, 1]).
pub fn compose_l_mphi(
    alphabet: &AlphabetSpec,
    delta: f64,
    j: usize,
    f: &GridFunction,
) -> Result<GridFunction> {
    let grid = f.grid().clone();
    if !alphabet.is_finite() && delta <= alphabet.abscissa() {
        return Err(Error::Divergent {
            s: delta,
            abscissa: alphabet.abscissa(),
        });
    }
    let en = alphabet.enumerate_with_policy(&PrefixPolicy {
        weight_tol: 1e-18,
        s: delta,
        poly_handoff_value: Some(tail_handoff_value(&grid)),
    })?;
    let m = grid.len();
    let mut out = vec![0.0f64; m];
    let values = f.values().to_vec();
    let nodes = grid.nodes().to_vec();
    {
        let grid = &grid;
        let en = &en;
        let values = &values;
        let results = parallel::map_collect((0..m).collect::<Vec<_>>(), move |i| {
            let x = nodes[i];
            let mut acc = 0.0f64;
            let mut scratch = Vec::new();
            row_fill(
                grid,
                x,
                en,
                delta,
                DEFAULT_TAIL_ORDER,
                j,
                RowTarget::Function {
                    values,
                    acc: &mut acc,
                },
                &mut scratch,
            )
            .map(|_| acc)
        });
        for (i, r) in results.into_iter().enumerate() {
            out[i] = r?;
        }
    }
    GridFunction::new(grid, out)
}

/// Pointwise multiplication by `φ(x)^j` with `φ(x) = 2 log x`. The node
/// x = 0 carries the limit value 0 enforced by the enclosing integrable
/// weight; direct evaluation at x = 0 is refused by [`phi_pow_value`].
pub fn multiply_phi(f: &GridFunction, j: usize) -> GridFunction {
    if j == 0 {
        return f.clone();
    }
    let mut values = Vec::with_capacity(f.grid().len());
    for (&x, &v) in f.grid().nodes().iter().zip(f.values()) {
        if x == 0.0 {
            values.push(0.0);
        } else {
            values.push((2.0 * x.ln()).powi(j as i32) * v);
        }
    }
    GridFunction {
        grid: f.grid().clone(),
        values,
    }
}

/// `φ(x)^j f(x)` at a point; `x = 0` is the singular point of `φ`.
pub fn phi_pow_value(f: &GridFunction, j: usize, x: f64) -> Result<f64> {
    if x == 0.0 && j > 0 {
        return Err(Error::SingularPoint(
            "φ(x) = 2 log x is singular at x = 0; evaluate composed forms instead".into(),
        ));
    }
    Ok((2.0 * x.ln()).powi(j as i32) * f.eval(x))
}

enum RowTarget<'a> {
    /// Fill a full matrix row over the Lagrange basis.
    Basis(&'a mut [f64]),
    /// Accumulate `Σ w · f(y)` for fixed grid data.
    Function { values: &'a [f64], acc: &'a mut f64 },
}

/// Weight of one element at offset x: `(n+x)^{-2s} (-2 log(n+x))^q`,
/// together with the image point `y = 1/(n+x)`.
#[inline]
fn element_weight(e: &Element, x: f64, s: f64, log_power: usize) -> (f64, f64) {
    let (ln_z, y) = if e.value < 1e15 {
        let z = e.value + x;
        (z.ln(), 1.0 / z)
    } else {
        // x is negligible against n at this scale
        (e.ln, (-e.ln).exp())
    };
    let mut w = (-2.0 * s * ln_z).exp();
    if log_power > 0 {
        w *= (-2.0 * ln_z).powi(log_power as i32);
    }
    (w, y)
}

fn row_fill(
    grid: &ChebyshevGrid,
    x: f64,
    en: &crate::alphabet::Enumeration,
    s: f64,
    p: usize,
    log_power: usize,
    mut target: RowTarget<'_>,
    scratch: &mut Vec<f64>,
) -> Result<f64> {
    let m = grid.len();
    if let RowTarget::Basis(_) = target {
        scratch.resize(m, 0.0);
    }
    // explicit part
    for e in &en.explicit {
        let (w, y) = element_weight(e, x, s, log_power);
        match &mut target {
            RowTarget::Basis(row) => {
                grid.basis_at(y, scratch);
                for (r, b) in row.iter_mut().zip(scratch.iter()) {
                    *r += w * b;
                }
            }
            RowTarget::Function { values, acc } => {
                **acc += w * grid.eval(values, y);
            }
        }
    }
    // tails
    let mut bound = 0.0f64;
    for tail in &en.tail {
        match &tail.seq {
            TailSequence::Poly(coeffs) => {
                bound += poly_tail_row(
                    grid,
                    x,
                    coeffs,
                    tail.start_index,
                    s,
                    p,
                    log_power,
                    &mut target,
                    scratch,
                )?;
            }
            TailSequence::Qg(kind) => {
                bound += qg_tail_row(grid, x, tail, *kind, s, log_power, &mut target)?;
            }
        }
    }
    Ok(bound)
}

/// Tail bound only (used to collect bounds after the parallel fill).
fn row_tail_bound(
    _grid: &ChebyshevGrid,
    x: f64,
    en: &crate::alphabet::Enumeration,
    s: f64,
    p: usize,
    log_power: usize,
) -> Result<f64> {
    let mut bound = 0.0;
    for tail in &en.tail {
        match &tail.seq {
            TailSequence::Poly(coeffs) => {
                let d = (coeffs.len() - 1) as f64;
                let lambda = 2.0 * s * d - 1.0;
                let n0 = tail.start_index as f64;
                let z = poly_jet_at(coeffs, n0, p).shift(x);
                let mut g = z.powf(-2.0 * s)?;
                if log_power > 0 {
                    g = g.mul(&z.ln()?.scale(-2.0).powu(log_power));
                }
                // |R_p| <= 2 zeta(p)/(2pi)^p ∫ |g^(p)|, integral proxied by
                // the boundary magnitude times the power-law decay length
                let fact: f64 = (1..=p).map(|k| k as f64).product();
                let gp = g.c[p] * fact;
                bound += 2.0 * 1.005 / std::f64::consts::TAU.powi(p as i32) * gp.abs() * n0
                    / (lambda + p as f64);
            }
            TailSequence::Qg(kind) => {
                // residual after the 1e-18 cutoff, bounded by a geometric sum
                let ratio = kind.binet().lambda.powf(-2.0 * s);
                bound += 1e-18 / (1.0 - ratio);
            }
        }
    }
    Ok(bound)
}

fn poly_jet_at(coeffs: &[i64], n0: f64, order: usize) -> Jet {
    let n = Jet::variable(n0, order);
    let mut acc = Jet::constant(0.0, order);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(&n).shift(c as f64);
    }
    acc
}

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static GL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    GL.get_or_init(|| gauss_jacobi_unit(16, 0.0).expect("Legendre nodes"))
}

#[allow(clippy::too_many_arguments)]
fn poly_tail_row(
    grid: &ChebyshevGrid,
    x: f64,
    coeffs: &[i64],
    start_index: u64,
    s: f64,
    p: usize,
    log_power: usize,
    target: &mut RowTarget<'_>,
    scratch: &mut [f64],
) -> Result<f64> {
    let d = (coeffs.len() - 1) as f64;
    let two_s = 2.0 * s;
    let lambda = two_s * d - 1.0;
    if lambda <= 0.0 {
        return Err(Error::Divergent {
            s,
            abscissa: 1.0 / (2.0 * d),
        });
    }
    let n0 = start_index as f64;

    // boundary terms: f(n0)/2 - Σ B_{2i}/(2i)! f^(2i-1)(n0)
    let z = poly_jet_at(coeffs, n0, p).shift(x);
    let y_jet = z.recip()?;
    let mut w_jet = z.powf(-two_s)?;
    if log_power > 0 {
        w_jet = w_jet.mul(&z.ln()?.scale(-2.0).powu(log_power));
    }
    let mut bound = 0.0;
    {
        let mut apply_boundary = |g: &Jet, slot: &mut dyn FnMut(f64)| {
            let mut v = 0.5 * g.c[0];
            for i in 1..=(p / 2) {
                let b2i = rat_to_f64(&bernoulli(2 * i, BernoulliSign::Minus).expect("index"));
                v -= b2i / (2.0 * i as f64) * g.c[2 * i - 1];
            }
            slot(v);
            let fact: f64 = (1..=p).map(|k| k as f64).product();
            bound += 2.0 * 1.005 / std::f64::consts::TAU.powi(p as i32)
                * (g.c[p] * fact).abs()
                * n0
                / (lambda + p as f64);
        };
        match target {
            RowTarget::Basis(row) => {
                let basis = grid.basis_jets(&y_jet)?;
                for (j, bj) in basis.iter().enumerate() {
                    let g = w_jet.mul(bj);
                    apply_boundary(&g, &mut |v| row[j] += v);
                }
            }
            RowTarget::Function { values, acc } => {
                let f_jet = grid.eval_jet(values, &y_jet)?;
                let g = w_jet.mul(&f_jet);
                apply_boundary(&g, &mut |v| **acc += v);
            }
        }
    }

    // integral term ∫_{n0}^∞ w(n) ℓ(y(n)) dn
    if log_power == 0 {
        // substitution n = n0/u gives weight u^{2sd-2} times an analytic
        // factor; Gauss–Jacobi handles it spectrally
        let (unodes, uweights) = gauss_jacobi_unit(48, two_s * d - 2.0)?;
        for (&u, &w) in unodes.iter().zip(&uweights) {
            let n = n0 / u;
            let zv = poly_eval_f64(coeffs, n) + x;
            let ln_z = zv.ln();
            let smooth = (-two_s * ln_z - (two_s * d) * u.ln()).exp();
            let wq = w * n0 * smooth;
            add_point(grid, target, scratch, 1.0 / zv, wq);
        }
    } else {
        // log weights break the pure-power structure; integrate on
        // n = n0 e^v with fixed panels in v
        let (gn, gw) = gl16();
        let h = 0.5;
        let mut v0 = 0.0;
        while lambda * v0 <= 46.0 {
            for (&t, &w) in gn.iter().zip(gw) {
                let v = v0 + h * t;
                let n = n0 * v.exp();
                let zv = poly_eval_f64(coeffs, n) + x;
                let ln_z = zv.ln();
                let mut wq = w * h * n0 * v.exp() * (-two_s * ln_z).exp();
                wq *= (-2.0 * ln_z).powi(log_power as i32);
                add_point(grid, target, scratch, 1.0 / zv, wq);
            }
            v0 += h;
        }
    }
    Ok(bound)
}

#[inline]
fn add_point(
    grid: &ChebyshevGrid,
    target: &mut RowTarget<'_>,
    scratch: &mut [f64],
    y: f64,
    w: f64,
) {
    match target {
        RowTarget::Basis(row) => {
            grid.basis_at(y, scratch);
            for (r, b) in row.iter_mut().zip(scratch.iter()) {
                *r += w * b;
            }
        }
        RowTarget::Function { values, acc } => {
            **acc += w * grid.eval(values, y);
        }
    }
}

fn poly_eval_f64(coeffs: &[i64], n: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * n + c as f64;
    }
    acc
}

/// Residual of a geometric tail beyond the enumeration cutoff: summed in
/// closed form and attributed to the basis function at 0 (images there are
/// below every positive node).
fn qg_tail_row(
    _grid: &ChebyshevGrid,
    _x: f64,
    tail: &TailDescriptor,
    kind: crate::alphabet::QgKind,
    s: f64,
    log_power: usize,
    target: &mut RowTarget<'_>,
) -> Result<f64> {
    // images here sit at the node 0 to machine precision
    let mut iter = crate::alphabet::QgIter::new(kind, tail.start_index);
    let ratio = kind.binet().lambda.powf(-2.0 * s);
    let mut total = 0.0f64;
    let mut last = 0.0f64;
    for _ in 0..256 {
        let ln = match crate::alphabet::element_ln(iter.value()) {
            Some(l) => l,
            None => break,
        };
        let mut w = (-2.0 * s * ln).exp();
        if log_power > 0 {
            w *= (-2.0 * ln).powi(log_power as i32);
        }
        total += w;
        last = w;
        if w < 1e-24 {
            break;
        }
        iter.advance();
    }
    let rest = last * ratio / (1.0 - ratio);
    total += rest;
    match target {
        RowTarget::Basis(row) => row[0] += total,
        RowTarget::Function { values, acc } => **acc += total * values[0],
    }
    Ok(rest + 1e-18)
}

/// Bivariate Taylor coefficient operators of the perturbed weight:
/// `β_{i,j} f(x) = Coeff(b^i θ^j, e^{(δ+θ) v(b,x)} f(u_b(x)))` with
/// `v(b,x) = -2 log(1+bx)` and `u_b(x) = b/(1+bx)`. Since
/// `e^{(δ+θ)v} = e^{δv} e^{θv}`, the θ-coefficient is `v^j/j!`, leaving a
/// univariate Taylor computation in `b` with coefficients that are exact
/// polynomials in `x` evaluated at the nodes; only the Taylor jet of `f`
/// at 0 is numerical.
pub fn beta_taylor(
    delta: f64,
    i_max: usize,
    j_max: usize,
    f: &GridFunction,
) -> Result<Vec<Vec<GridFunction>>> {
    if i_max > 8 || j_max > 8 {
        return Err(Error::InvalidParameter(
            "beta truncation orders are capped at 8 (coefficient explosion)".into(),
        ));
    }
    let grid = f.grid().clone();
    let m = grid.len();
    // Taylor coefficients of the interpolant at 0, orders 0..=i_max
    let f_taylor = grid.taylor_at_zero(f.values(), i_max);
    let mut tables = vec![vec![vec![0.0f64; m]; j_max + 1]; i_max + 1];
    for (node, &x) in grid.nodes().iter().enumerate() {
        // b-jets at b = 0
        let b = Jet::variable(0.0, i_max);
        let one_plus_bx = b.scale(x).shift(1.0);
        let v = one_plus_bx.ln()?.scale(-2.0);
        let e_delta_v = v.scale(delta).exp();
        let u = b.mul(&one_plus_bx.recip()?);
        // f(u_b(x)) = Σ_k f_k u^k, finite because u = O(b)
        let mut f_of_u = Jet::constant(f_taylor[0], i_max);
        let mut upow = Jet::constant(1.0, i_max);
        for fk in f_taylor.iter().skip(1) {
            upow = upow.mul(&u);
            f_of_u = f_of_u.add(&upow.scale(*fk));
        }
        let base = e_delta_v.mul(&f_of_u);
        let mut vj = Jet::constant(1.0, i_max);
        let mut fact = 1.0;
        for j in 0..=j_max {
            if j > 0 {
                vj = vj.mul(&v);
                fact *= j as f64;
            }
            let prod = base.mul(&vj);
            for (i, table_i) in tables.iter_mut().enumerate() {
                table_i[j][node] = prod.c[i] / fact;
            }
        }
    }
    tables
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|values| GridFunction::new(grid.clone(), values))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::parse_alphabet;
    use crate::numeric::Kahan;

    #[test]
    fn grid_has_exact_endpoints_and_order() {
        let g = make_grid(8).unwrap();
        assert_eq!(g.nodes()[0], 0.0);
        assert_eq!(g.nodes()[7], 1.0);
        assert!(g.nodes().windows(2).all(|w| w[1] > w[0]));
        assert!(make_grid(7).is_err());
        let g32 = make_grid(32).unwrap();
        assert_eq!(g32.nodes()[0], 0.0);
    }

    #[test]
    fn interpolation_of_low_degree_polynomial_is_exact() {
        let g = make_grid(16).unwrap();
        let f = GridFunction::from_fn(&g, |x| x.powi(5));
        let err = (f.eval(0.3) - 0.3f64.powi(5)).abs();
        assert!(err < 1e-12, "err {err}");
    }

    #[test]
    fn taylor_at_zero_recovers_series() {
        let g = make_grid(24).unwrap();
        // f(x) = 1/(1+x): Taylor at 0 is (-1)^k
        let f = GridFunction::from_fn(&g, |x| 1.0 / (1.0 + x));
        let t = g.taylor_at_zero(f.values(), 4);
        // endpoint spectral differentiation loses ~m^2 per order in f64
        let budget = [1e-14, 1e-12, 1e-9, 1e-7, 1e-5];
        for (k, &c) in t.iter().enumerate() {
            let expect = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((c - expect).abs() < budget[k], "k = {k}: {c}");
        }
    }

    #[test]
    fn single_map_operator_matches_direct_formula() {
        let g = make_grid(12).unwrap();
        let a = parse_alphabet("set:1").unwrap();
        let op = assemble(&a, 0.7, &g, 8).unwrap();
        // apply to an analytic f and compare against the one-term formula
        let f = GridFunction::from_fn(&g, |x| (1.0 + 0.5 * x).sin());
        let lf = apply(&op, &f).unwrap();
        for (i, &x) in g.nodes().iter().enumerate() {
            let z: f64 = 1.0 + x;
            let expect = z.powf(-1.4) * (1.0 + 0.5 / z).sin();
            assert!((lf.values()[i] - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn identity_weight_at_s_zero() {
        let g = make_grid(12).unwrap();
        let a = parse_alphabet("set:1").unwrap();
        let op = assemble(&a, 0.0, &g, 8).unwrap();
        let one = GridFunction::constant(&g, 1.0);
        let lone = apply(&op, &one).unwrap();
        for &v in lone.values() {
            assert!((v - 1.0).abs() < 1e-12);
        }
        // zero maps to zero
        let zero = GridFunction::constant(&g, 0.0);
        let lzero = apply(&op, &zero).unwrap();
        assert!(lzero.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn gauss_operator_fixes_its_eigenfunction() {
        // full alphabet at s = 1: g(x) = 1/(1+x) should be reproduced
        let g = make_grid(32).unwrap();
        let a = parse_alphabet("geq:1").unwrap();
        let op = assemble(&a, 1.0, &g, 8).unwrap();
        let gf = GridFunction::from_fn(&g, |x| 1.0 / (1.0 + x));
        let lg = apply(&op, &gf).unwrap();
        let err = lg.max_abs_diff(&gf);
        assert!(err < 1e-10, "fixed point error {err}");
    }

    #[test]
    fn gauss_apply_one_matches_brute_force_hurwitz() {
        // L1(x) = Σ (n+x)^{-2}, brute force 10^7 terms + midpoint closure
        let g = make_grid(24).unwrap();
        let a = parse_alphabet("geq:1").unwrap();
        let op = assemble(&a, 1.0, &g, 8).unwrap();
        let one = GridFunction::constant(&g, 1.0);
        let lone = apply(&op, &one).unwrap();
        let m_cut = 10_000_000u64;
        for (i, &x) in g.nodes().iter().enumerate().step_by(5) {
            let mut acc = Kahan::new();
            for n in (1..=m_cut).rev() {
                let z = n as f64 + x;
                acc.add(1.0 / (z * z));
            }
            let mid = m_cut as f64 + 0.5 + x;
            let oracle = acc.value() + 1.0 / mid;
            assert!(
                (lone.values()[i] - oracle).abs() < 1e-12 + op.tail_bound(),
                "node {i}"
            );
        }
    }

    #[test]
    fn row_sums_match_brute_force_power_sums() {
        // alphabet geq:50 at s = 0.6; row sums = Σ (n+x)^{-1.2}
        let g = make_grid(20).unwrap();
        let a = parse_alphabet("geq:50").unwrap();
        let op = assemble(&a, 0.6, &g, 8).unwrap();
        let sums = op.row_sums();
        let m_cut = 10_000_000u64;
        for (i, &x) in g.nodes().iter().enumerate().step_by(7) {
            let mut acc = Kahan::new();
            for n in (50..=m_cut).rev() {
                acc.add((n as f64 + x).powf(-1.2));
            }
            let mid = m_cut as f64 + 0.5 + x;
            let oracle = acc.value() + mid.powf(-0.2) / 0.2;
            // brute-force midpoint closure is itself ~1e-9 accurate here
            assert!(
                (sums[i] - oracle).abs() < 2e-9 + op.tail_bound(),
                "node {i}: {} vs {oracle}",
                sums[i]
            );
        }
    }

    #[test]
    fn alpha_zero_equals_assemble() {
        let g = make_grid(16).unwrap();
        let a = parse_alphabet("geq:1").unwrap();
        let op = assemble(&a, 0.9, &g, 8).unwrap();
        let a0 = alpha_op(&a, 0.9, 0, &g).unwrap();
        let diff = (op.matrix() - a0.matrix()).abs().max();
        assert!(diff < 1e-14);
    }

    #[test]
    fn l_mphi_composition_matches_alpha() {
        // L M_φ^j g = j! α_j g at the nodes
        let g = make_grid(32).unwrap();
        let a = parse_alphabet("geq:1").unwrap();
        let gf = GridFunction::from_fn(&g, |x| 1.0 / (1.0 + x));
        for j in 1..=2usize {
            let lhs = compose_l_mphi(&a, 1.0, j, &gf).unwrap();
            let aj = alpha_op(&a, 1.0, j, &g).unwrap();
            let rhs = apply(&aj, &gf).unwrap();
            let fact: f64 = (1..=j).map(|k| k as f64).product();
            let err = lhs
                .values()
                .iter()
                .zip(rhs.values())
                .map(|(l, r)| (l - fact * r).abs())
                .fold(0.0, f64::max);
            assert!(err < 1e-9, "j = {j}, err = {err}");
        }
    }

    #[test]
    fn multiply_phi_identity_and_guard() {
        let g = make_grid(12).unwrap();
        let one = GridFunction::constant(&g, 1.0);
        let same = multiply_phi(&one, 0);
        assert_eq!(same.values(), one.values());
        assert!(phi_pow_value(&one, 1, 0.0).is_err());
        assert!(phi_pow_value(&one, 0, 0.5).is_ok());
        // interior nodes carry φ^j
        let p1 = multiply_phi(&one, 1);
        let x = g.nodes()[5];
        assert!((p1.values()[5] - 2.0 * x.ln()).abs() < 1e-15);
        assert_eq!(p1.values()[0], 0.0);
    }

    #[test]
    fn beta_low_order_identities() {
        let g = make_grid(24).unwrap();
        // β_{0,0} f = f(0) · 1
        let f = GridFunction::from_fn(&g, |x| (1.0 + x).cos());
        let t = beta_taylor(1.0, 3, 3, &f).unwrap();
        for &v in t[0][0].values() {
            assert!((v - f.values()[0]).abs() < 1e-10);
        }
        // Prop-style vanishing at δ = 0: β_{i,0} 1 = [i = 0] · 1
        let one = GridFunction::constant(&g, 1.0);
        let t0 = beta_taylor(0.0, 4, 2, &one).unwrap();
        for (i, ti) in t0.iter().enumerate() {
            for &v in ti[0].values() {
                let expect = if i == 0 { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-11, "i = {i}, v = {v}");
            }
        }
        // ν β_{i,j} h = [i = j = 0] for h ≡ 1 (value at node 0)
        let th = beta_taylor(1.0, 4, 4, &one).unwrap();
        for (i, ti) in th.iter().enumerate() {
            for (j, tij) in ti.iter().enumerate() {
                let v0 = tij.values()[0];
                let expect = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert!(
                    (v0 - expect).abs() < 1e-11,
                    "i = {i} j = {j} value {v0}"
                );
            }
        }
    }

    #[test]
    fn grid_doubling_consistency_of_leading_eigenvalue() {
        // crude power iteration here only to check matrix consistency;
        // the spectral module owns the real solver
        let a = parse_alphabet("geq:1").unwrap();
        let lam = |m: usize| {
            let g = make_grid(m).unwrap();
            let op = assemble(&a, 1.0, &g, 8).unwrap();
            let mut v = DVector::from_element(m, 1.0);
            let mut lambda = 0.0;
            for _ in 0..200 {
                let w = op.matrix() * &v;
                lambda = w.amax();
                v = w / lambda;
            }
            lambda
        };
        let l16 = lam(16);
        let l32 = lam(32);
        assert!((l16 - 1.0).abs() < 1e-8);
        assert!((l32 - 1.0).abs() < 1e-10);
        assert!((l32 - 1.0).abs() <= (l16 - 1.0).abs() + 1e-12);
    }
}
