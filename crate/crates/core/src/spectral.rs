//! Dominant eigentriples, pressure, spectral gaps, and Lyapunov exponents
//! of discretized transfer operators.

use crate::alphabet::AlphabetSpec;
use crate::transfer::{
    self, apply, assemble, compose_l_mphi, ChebyshevGrid, DiscretizedOperator, GridFunction,
};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use std::sync::Arc;

/// Dominant eigenvalue with right eigenfunction and left eigenmeasure,
/// normalized so that `Σ μ_i = 1` (μ applied to h ≡ 1) and `g(0) = 1`.
#[derive(Debug, Clone)]
pub struct Eigentriple {
    pub lambda: f64,
    pub g: GridFunction,
    /// Node weights of the left eigenvector; `μ f = Σ μ_i f(x_i)`.
    pub mu: Vec<f64>,
}

impl Eigentriple {
    /// Applies the eigenmeasure to grid data.
    pub fn mu_dot(&self, values: &[f64]) -> f64 {
        self.mu.iter().zip(values).map(|(m, v)| m * v).sum()
    }

    pub fn mu_apply(&self, f: &GridFunction) -> f64 {
        self.mu_dot(f.values())
    }

    /// `c = 1/(μ g)`.
    pub fn c(&self) -> f64 {
        1.0 / self.mu_apply(&self.g)
    }
}

/// Largest-modulus eigenvalue by two-sided power iteration; falls back to
/// a Schur decomposition when the iteration stalls.
pub(crate) fn dominant_lambda(matrix: &DMatrix<f64>) -> Result<f64> {
    let m = matrix.nrows();
    let at = matrix.transpose();
    let mut v = DVector::from_element(m, 1.0 / m as f64);
    let mut u = DVector::from_element(m, 1.0 / m as f64);
    let mut lambda = 0.0f64;
    for iter in 0..600 {
        let av = matrix * &v;
        let atu = &at * &u;
        let denom = u.dot(&v);
        if denom.abs() < 1e-300 {
            break;
        }
        let next = u.dot(&av) / denom;
        let scale_v = av.amax().max(1e-300);
        let scale_u = atu.amax().max(1e-300);
        v = av / scale_v;
        u = atu / scale_u;
        if iter > 4 && (next - lambda).abs() <= 1e-15 * next.abs().max(1e-300) {
            // confirm with a residual check
            let res = (matrix * &v - &v * next).amax();
            if res <= 1e-12 * next.abs().max(1e-12) {
                return Ok(next);
            }
        }
        lambda = next;
    }
    // stalled: full spectrum
    let eigs = DMatrix::clone(matrix).complex_eigenvalues();
    let lam = eigs
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max);
    if lam.is_finite() {
        Ok(lam)
    } else {
        Err(Error::NonConvergence("eigenvalue iteration diverged".into()))
    }
}

fn inverse_iteration(matrix: &DMatrix<f64>, lambda: f64, steps: usize) -> Result<DVector<f64>> {
    let m = matrix.nrows();
    // small relative shift keeps the system invertible at the eigenvalue
    let shift = lambda * (1.0 + 1e-9) + 1e-14;
    let shifted = matrix - DMatrix::identity(m, m) * shift;
    let lu = shifted.lu();
    let mut v = DVector::from_element(m, 1.0);
    for _ in 0..steps {
        let w = lu
            .solve(&v)
            .ok_or_else(|| Error::Numerical("singular shifted system".into()))?;
        let scale = w.amax();
        if !scale.is_finite() || scale == 0.0 {
            return Err(Error::Numerical("inverse iteration broke down".into()));
        }
        v = w / scale;
    }
    Ok(v)
}

/// Dominant eigentriple of `op`, normalized per the `μh = 1`, `g(0) = 1`
/// convention. Residuals `‖Lg - λg‖_∞` and `‖μL - λμ‖_1` must come in
/// below `tol·λ`.
///
/// Dense full-spectrum solve up to 128 nodes (the subdominant eigenvalue
/// is wanted for gap estimates anyway), power iteration beyond.
pub fn dominant_eigentriple(op: &DiscretizedOperator, tol: f64) -> Result<Eigentriple> {
    let matrix = op.matrix();
    let m = matrix.nrows();
    let lambda = if m <= 128 {
        let eigs = matrix.clone().complex_eigenvalues();
        let mut best = (0.0f64, 0.0f64); // (|λ|, |Im|)
        for c in eigs.iter() {
            if c.norm() > best.0 {
                best = (c.norm(), c.im.abs());
            }
        }
        if best.1 > 1e-8 * best.0 {
            return Err(Error::ComplexDominant);
        }
        best.0
    } else {
        dominant_lambda(matrix)?
    };
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::ComplexDominant);
    }
    let mut g_vec = inverse_iteration(matrix, lambda, 3)?;
    let mut mu_vec = inverse_iteration(&matrix.transpose(), lambda, 3)?;

    // sign-normalize positive
    if g_vec.sum() < 0.0 {
        g_vec = -g_vec;
    }
    if mu_vec.sum() < 0.0 {
        mu_vec = -mu_vec;
    }
    // residuals before scaling (scaling is exact)
    let res_g = (matrix * &g_vec - &g_vec * lambda).amax() / g_vec.amax();
    let res_mu = {
        let r = matrix.transpose() * &mu_vec - &mu_vec * lambda;
        r.iter().map(|x| x.abs()).sum::<f64>() / mu_vec.iter().map(|x| x.abs()).sum::<f64>()
    };
    if res_g > tol * lambda.max(1e-300) || res_mu > tol * lambda.max(1e-300) {
        return Err(Error::NonConvergence(format!(
            "eigen residuals {res_g:.2e}/{res_mu:.2e} exceed tol*lambda"
        )));
    }

    // normalization: g(0) = 1 (node 0 is first), Σ μ_i = 1
    let g0 = g_vec[0];
    if g0 == 0.0 {
        return Err(Error::Numerical("eigenfunction vanishes at 0".into()));
    }
    let g_values: Vec<f64> = g_vec.iter().map(|v| v / g0).collect();
    let mu_sum: f64 = mu_vec.sum();
    let mu: Vec<f64> = mu_vec.iter().map(|v| v / mu_sum).collect();
    let g = GridFunction::new(op.grid().clone(), g_values)?;
    Ok(Eigentriple { lambda, g, mu })
}

/// Pressure `P(E, s) = log λ_max` of the operator assembled at `s` on an
/// `m`-node grid; `+∞` below the convergence abscissa.
pub fn pressure(alphabet: &AlphabetSpec, s: f64, m: usize) -> Result<f64> {
    if !alphabet.is_finite() && s <= alphabet.abscissa() {
        return Ok(f64::INFINITY);
    }
    if alphabet.is_empty() {
        return Ok(f64::NEG_INFINITY);
    }
    let grid = transfer::make_grid(m)?;
    let op = assemble(alphabet, s, &grid, transfer::DEFAULT_TAIL_ORDER)?;
    let lambda = dominant_lambda(op.matrix())?;
    Ok(lambda.ln())
}

/// Infimum of `s` with finite pressure: -∞ for finite alphabets, `1/(2d)`
/// for polynomial tails of degree `d`, `0` for quasi-geometric tails.
pub fn convergence_abscissa(alphabet: &AlphabetSpec) -> f64 {
    alphabet.abscissa()
}

/// Ratio `|λ_2|/λ_1` of the discretized operator.
pub fn spectral_gap(op: &DiscretizedOperator) -> Result<f64> {
    let eigs = op.matrix().clone().complex_eigenvalues();
    let mut mods: Vec<f64> = eigs.iter().map(|c| c.norm()).collect();
    mods.sort_by(|a, b| b.partial_cmp(a).unwrap());
    if mods.is_empty() || mods[0] <= 0.0 {
        return Err(Error::Numerical("empty spectrum".into()));
    }
    Ok(mods.get(1).copied().unwrap_or(0.0) / mods[0])
}

/// Unnormalized Lyapunov exponent `χ̃ = -μ (α_1 g)` of the system at
/// parameter `δ`, evaluated with the supplied eigentriple.
pub fn lyapunov(alphabet: &AlphabetSpec, delta: f64, triple: &Eigentriple) -> Result<f64> {
    // α_1 g = L M_φ g, computed by the direct composed formula
    let a1g = compose_l_mphi(alphabet, delta, 1, &triple.g)?;
    Ok(-triple.mu_dot(a1g.values()))
}

/// Sampled pressure curve with its abscissa.
#[derive(Debug, Clone)]
pub struct PressureCurve {
    pub alphabet: String,
    pub samples: Vec<(f64, f64)>,
    pub abscissa: f64,
}

impl PressureCurve {
    pub fn sample(alphabet: &AlphabetSpec, s_values: &[f64], m: usize) -> Result<Self> {
        let mut samples = Vec::with_capacity(s_values.len());
        for &s in s_values {
            samples.push((s, pressure(alphabet, s, m)?));
        }
        Ok(PressureCurve {
            alphabet: alphabet.to_string(),
            samples,
            abscissa: alphabet.abscissa(),
        })
    }

    /// Checks strict decrease and midpoint convexity on consecutive
    /// sample triples, within `tol`.
    pub fn is_decreasing_convex(&self, tol: f64) -> bool {
        let decreasing = self
            .samples
            .windows(2)
            .all(|w| w[1].1 < w[0].1 + tol);
        let convex = self.samples.windows(3).all(|w| {
            // uniform spacing assumed in the check; callers sample evenly
            w[0].1 + w[2].1 - 2.0 * w[1].1 >= -tol
        });
        decreasing && convex
    }
}

/// Convenience wrapper: assemble and solve in one call.
pub fn eigentriple_for(
    alphabet: &AlphabetSpec,
    s: f64,
    grid: &Arc<ChebyshevGrid>,
    tol: f64,
) -> Result<(DiscretizedOperator, Eigentriple)> {
    let op = assemble(alphabet, s, grid, transfer::DEFAULT_TAIL_ORDER)?;
    let triple = dominant_eigentriple(&op, tol)?;
    Ok((op, triple))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::parse_alphabet;
    use crate::transfer::{make_grid, OpMeta};

    const LOG2: f64 = std::f64::consts::LN_2;

    fn gauss_triple(m: usize) -> (DiscretizedOperator, Eigentriple) {
        let a = parse_alphabet("geq:1").unwrap();
        let grid = make_grid(m).unwrap();
        eigentriple_for(&a, 1.0, &grid, 1e-10).unwrap()
    }

    #[test]
    fn gauss_fixed_point_suite_m32() {
        let (_op, t) = gauss_triple(32);
        assert!((t.lambda - 1.0).abs() < 1e-10, "lambda = {}", t.lambda);
        // g matches 1/(1+x) after g(0) = 1 normalization
        let expect = GridFunction::from_fn(t.g.grid(), |x| 1.0 / (1.0 + x));
        assert!(t.g.max_abs_diff(&expect) < 1e-10);
        // left eigenvector acts like Lebesgue measure
        let mug = t.mu_apply(&t.g);
        assert!((mug - LOG2).abs() < 1e-10, "mu g = {mug}");
        let xs: Vec<f64> = t.g.grid().nodes().to_vec();
        let mu_x = t.mu_dot(&xs);
        assert!((mu_x - 0.5).abs() < 1e-9, "mu x = {mu_x}");
        // normalization identities are exact post-normalization
        assert_eq!(t.g.values()[0], 1.0);
        let total: f64 = t.mu.iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_map_eigenvalue_matches_fixed_point_iteration() {
        // oracle: iterate x <- 1/(1+x) to the fixed point, then the
        // dominant eigenvalue is the weight |u'(x*)|^s = (1+x*)^{-2s}
        let a = parse_alphabet("set:1").unwrap();
        let grid = make_grid(24).unwrap();
        let mut xstar = 0.5f64;
        for _ in 0..200 {
            xstar = 1.0 / (1.0 + xstar);
        }
        for &s in &[0.3, 0.5, 1.0, 1.7] {
            let op = assemble(&a, s, &grid, 8).unwrap();
            let t = dominant_eigentriple(&op, 1e-10).unwrap();
            let oracle = (1.0 + xstar).powf(-2.0 * s);
            assert!(
                (t.lambda - oracle).abs() < 1e-10,
                "s = {s}: {} vs {oracle}",
                t.lambda
            );
        }
    }

    #[test]
    fn pressure_values() {
        let n_all = parse_alphabet("geq:1").unwrap();
        let p = pressure(&n_all, 1.0, 32).unwrap();
        assert!(p.abs() < 1e-10, "P = {p}");

        let one = parse_alphabet("set:1").unwrap();
        let phi = crate::alphabet::PHI;
        for &s in &[0.4, 0.9] {
            let p = pressure(&one, s, 16).unwrap();
            assert!((p + 2.0 * s * phi.ln()).abs() < 1e-10);
        }

        let two = parse_alphabet("set:1,2").unwrap();
        let p0 = pressure(&two, 0.0, 16).unwrap();
        assert!((p0 - 2f64.ln()).abs() < 1e-12);

        // below the abscissa: +infinity marker
        let geq = parse_alphabet("geq:2").unwrap();
        assert_eq!(pressure(&geq, 0.5, 16).unwrap(), f64::INFINITY);
    }

    #[test]
    fn abscissa_delegates() {
        assert_eq!(
            convergence_abscissa(&parse_alphabet("set:3,5").unwrap()),
            f64::NEG_INFINITY
        );
        assert_eq!(convergence_abscissa(&parse_alphabet("geq:9").unwrap()), 0.5);
        assert_eq!(
            convergence_abscissa(&parse_alphabet("poly:1,0,0:geq:2").unwrap()),
            0.25
        );
    }

    #[test]
    fn spectral_gaps() {
        // single map: strict contraction of the composition operator
        let a = parse_alphabet("set:1").unwrap();
        let grid = make_grid(24).unwrap();
        let op = assemble(&a, 0.8, &grid, 8).unwrap();
        let gap = spectral_gap(&op).unwrap();
        assert!(gap < 1.0 && gap > 0.0);

        // Gauss operator: subdominant ratio strictly below 0.31, stable
        // under grid doubling
        let n_all = parse_alphabet("geq:1").unwrap();
        let mut gaps = Vec::new();
        for m in [32, 64] {
            let grid = make_grid(m).unwrap();
            let op = assemble(&n_all, 1.0, &grid, 8).unwrap();
            gaps.push(spectral_gap(&op).unwrap());
        }
        assert!(gaps.iter().all(|&g| g < 0.31));
        assert!((gaps[0] - gaps[1]).abs() < 1e-6, "gaps {gaps:?}");

        // rank-one projector h nu: gap 0
        let m = 16;
        let grid = make_grid(m).unwrap();
        let mut mat = nalgebra::DMatrix::zeros(m, m);
        for i in 0..m {
            mat[(i, 0)] = 1.0;
        }
        let proj = DiscretizedOperator::from_matrix(
            grid,
            mat,
            OpMeta {
                alphabet: "hnu".into(),
                s: 0.0,
                tail_order: 8,
                log_power: 0,
            },
        );
        let gap = spectral_gap(&proj).unwrap();
        assert!(gap < 1e-12);
    }

    #[test]
    fn lyapunov_values() {
        // full alphabet at delta = 1: zeta(2)
        let (_, t) = gauss_triple(32);
        let n_all = parse_alphabet("geq:1").unwrap();
        let chi = lyapunov(&n_all, 1.0, &t).unwrap();
        let zeta2 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        assert!((chi - zeta2).abs() < 1e-9, "chi = {chi}");
        assert!(chi > 0.0);

        // single map at delta = 0: 2 log phi
        let one = parse_alphabet("set:1").unwrap();
        let grid = make_grid(24).unwrap();
        let (_, t1) = eigentriple_for(&one, 0.0, &grid, 1e-9).unwrap();
        let chi1 = lyapunov(&one, 0.0, &t1).unwrap();
        assert!(
            (chi1 - 2.0 * crate::alphabet::PHI.ln()).abs() < 1e-9,
            "chi = {chi1}"
        );
    }

    #[test]
    fn eigen_residuals_shrink_with_grid() {
        let a = parse_alphabet("leq:2").unwrap();
        let mut last = f64::INFINITY;
        for m in [16, 32, 64] {
            let grid = make_grid(m).unwrap();
            let op = assemble(&a, 0.53, &grid, 8).unwrap();
            let t = dominant_eigentriple(&op, 1e-8).unwrap();
            let lg = apply(&op, &t.g).unwrap();
            let res: f64 = lg
                .values()
                .iter()
                .zip(t.g.values())
                .map(|(a, b)| (a - t.lambda * b).abs())
                .fold(0.0, f64::max);
            assert!(res <= last * 1.5 + 1e-13, "m = {m}: {res} vs {last}");
            last = res.max(1e-15);
        }
    }

    #[test]
    fn pressure_curve_is_decreasing_and_convex() {
        let a = parse_alphabet("leq:3").unwrap();
        let svals: Vec<f64> = (0..=8).map(|i| 0.3 + 0.05 * i as f64).collect();
        let curve = PressureCurve::sample(&a, &svals, 24).unwrap();
        assert!(curve.is_decreasing_convex(1e-10));
    }
}
