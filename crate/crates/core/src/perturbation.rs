//! Perturbation machinery around a base transfer operator: the resolvent
//! `Q = (I - R)^{-1}` with `R = L - c g μ`, the fixed-point construction
//! `L = L_1 + c̄ h ν` for subcritical base systems, the scalar residual
//! `Ξ = Σ_p μ Δ (QΔ)^p g` whose vanishing pins the perturbed dimension,
//! and the resolvent-based coefficient entering the second-order term of
//! the bounded-alphabet expansion.

use crate::alphabet::{power_sum, AlphabetSpec};
use crate::spectral::{dominant_eigentriple, dominant_lambda, Eigentriple};
use crate::transfer::{
    assemble, compose_l_mphi, make_grid, ChebyshevGrid, DiscretizedOperator, GridFunction, OpMeta,
    DEFAULT_TAIL_ORDER,
};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector, Dyn, LU};
use std::sync::Arc;

pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Base operator with unit fixed points and a factorized resolvent.
pub struct BaseSystem {
    pub op: DiscretizedOperator,
    pub triple: Eigentriple,
    /// `c = 1/(μ g)` for the normalized fixed points.
    pub c: f64,
    /// `c̄ = 1/Σ_m ν L_1^m h`; zero exactly when the base alphabet is
    /// regular at δ.
    pub cbar: f64,
    /// Max of `‖Lg - g‖_∞` and `‖μL - μ‖_1` after construction.
    pub fixed_point_residual: f64,
    resolvent_lu: LU<f64, Dyn, Dyn>,
}

impl BaseSystem {
    pub fn grid(&self) -> &Arc<ChebyshevGrid> {
        self.op.grid()
    }
}

const REGULAR_TOL: f64 = 1e-8;

/// Builds the base operator for alphabet `S` at parameter `δ ≥ δ_S`.
///
/// * empty `S`: `L_1 = 0`, `c̄ = 1/νh = 1`, `L = hν`, `g = h`, `μ = ν`;
/// * `ρ(L_1) = 1` (regular): `L = L_1`, `c̄ = 0`, eigentriple as usual;
/// * `ρ(L_1) < 1`: `L = L_1 + c̄ h ν` with `g = Q_1 h`, `μ = ν Q_1`
///   computed by solving `(I - L_1) q = h` and its transpose.
pub fn build_base(
    alphabet: &AlphabetSpec,
    delta: f64,
    grid: &Arc<ChebyshevGrid>,
) -> Result<BaseSystem> {
    let m = grid.len();
    if alphabet.is_empty() {
        let mut mat = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            mat[(i, 0)] = 1.0; // (h ν) f = f(0) · 1
        }
        let op = DiscretizedOperator::from_matrix(
            grid.clone(),
            mat,
            OpMeta {
                alphabet: alphabet.to_string(),
                s: delta,
                tail_order: DEFAULT_TAIL_ORDER,
                log_power: 0,
            },
        );
        let g = GridFunction::constant(grid, 1.0);
        let mut mu = vec![0.0; m];
        mu[0] = 1.0;
        let triple = Eigentriple {
            lambda: 1.0,
            g,
            mu,
        };
        return finish_base(op, triple, 1.0);
    }

    let l1 = assemble(alphabet, delta, grid, DEFAULT_TAIL_ORDER)?;
    let rho = dominant_lambda(l1.matrix())?;
    if rho > 1.0 + REGULAR_TOL {
        return Err(Error::InvalidParameter(format!(
            "spectral radius {rho} exceeds 1: δ = {delta} lies below the alphabet dimension"
        )));
    }
    if (rho - 1.0).abs() <= REGULAR_TOL {
        let triple = dominant_eigentriple(&l1, 1e-8)?;
        return finish_base(l1, triple, 0.0);
    }

    // subcritical: solve (I - L_1) q = h and the transposed system
    let eye = DMatrix::<f64>::identity(m, m);
    let a = &eye - l1.matrix();
    let lu = a.clone().lu();
    let h = DVector::from_element(m, 1.0);
    let q1h = lu
        .solve(&h)
        .ok_or_else(|| Error::Numerical("I - L_1 is singular".into()))?;
    let lut = a.transpose().lu();
    let mut e0 = DVector::zeros(m);
    e0[0] = 1.0;
    let nu_q1 = lut
        .solve(&e0)
        .ok_or_else(|| Error::Numerical("I - L_1^T is singular".into()))?;
    let cbar = 1.0 / q1h[0];
    let mut mat = l1.matrix().clone();
    for i in 0..m {
        mat[(i, 0)] += cbar;
    }
    let op = DiscretizedOperator::from_matrix(
        grid.clone(),
        mat,
        OpMeta {
            alphabet: alphabet.to_string(),
            s: delta,
            tail_order: DEFAULT_TAIL_ORDER,
            log_power: 0,
        },
    );
    // normalize: g(0) = 1, Σ μ = 1
    let g_values: Vec<f64> = q1h.iter().map(|v| v / q1h[0]).collect();
    let mu_sum: f64 = nu_q1.sum();
    let mu: Vec<f64> = nu_q1.iter().map(|v| v / mu_sum).collect();
    let triple = Eigentriple {
        lambda: 1.0,
        g: GridFunction::new(grid.clone(), g_values)?,
        mu,
    };
    finish_base(op, triple, cbar)
}

fn finish_base(op: DiscretizedOperator, triple: Eigentriple, cbar: f64) -> Result<BaseSystem> {
    let m = op.size();
    let g = DVector::from_column_slice(triple.g.values());
    let mu = DVector::from_column_slice(&triple.mu);
    let c = triple.c();

    let res_g = (op.matrix() * &g - &g).amax();
    let res_mu = {
        let r = op.matrix().transpose() * &mu - &mu;
        r.iter().map(|x| x.abs()).sum::<f64>()
    };
    let fixed_point_residual = res_g.max(res_mu);

    // I - R = I - L + c g μ^T
    let mut a = DMatrix::<f64>::identity(m, m) - op.matrix();
    for i in 0..m {
        for j in 0..m {
            a[(i, j)] += c * g[i] * mu[j];
        }
    }
    let resolvent_lu = a.lu();
    Ok(BaseSystem {
        op,
        triple,
        c,
        cbar,
        fixed_point_residual,
        resolvent_lu,
    })
}

/// `Q f` by solving `(I - R) q = f`.
pub fn resolvent_apply(base: &BaseSystem, f: &GridFunction) -> Result<GridFunction> {
    let v = DVector::from_column_slice(f.values());
    let q = base
        .resolvent_lu
        .solve(&v)
        .ok_or_else(|| Error::Numerical("resolvent system is singular (gap ≈ 1)".into()))?;
    GridFunction::new(base.op.grid().clone(), q.iter().copied().collect())
}

fn resolvent_apply_vec(base: &BaseSystem, v: &DVector<f64>) -> Result<DVector<f64>> {
    base.resolvent_lu
        .solve(v)
        .ok_or_else(|| Error::Numerical("resolvent system is singular (gap ≈ 1)".into()))
}

/// Base/perturbed pair with the scalars of the perturbation expansion.
pub struct PerturbationState {
    pub base: BaseSystem,
    pub prime: DiscretizedOperator,
    pub prime_triple: Eigentriple,
    pub theta: f64,
    /// Signed power sums `η_i = Σ_{S'} |b|^{q(δ+θ)} b^i - Σ_S ...` for
    /// `i = 0..=4` (positive when the perturbed alphabet is larger).
    pub eta: Vec<f64>,
    pub xi: f64,
    pub cbar: f64,
    delta_matrix: DMatrix<f64>,
}

impl PerturbationState {
    /// Builds the pair: base alphabet at `δ`, perturbed alphabet at its own
    /// dimension `δ' = δ + θ`.
    pub fn build(
        base_alphabet: &AlphabetSpec,
        delta: f64,
        prime_alphabet: &AlphabetSpec,
        delta_prime: f64,
        grid: &Arc<ChebyshevGrid>,
    ) -> Result<Self> {
        let base = build_base(base_alphabet, delta, grid)?;
        let prime = assemble(prime_alphabet, delta_prime, grid, DEFAULT_TAIL_ORDER)?;
        let prime_triple = dominant_eigentriple(&prime, 1e-7)?;
        let theta = delta_prime - delta;
        let mut eta = Vec::with_capacity(5);
        for i in 0..=4u32 {
            let beta = 2.0 * delta_prime + i as f64;
            let plus = if prime_alphabet.is_empty() {
                0.0
            } else {
                power_sum(prime_alphabet, beta)?.0
            };
            let minus = if base_alphabet.is_empty() {
                0.0
            } else {
                power_sum(base_alphabet, beta)?.0
            };
            eta.push(plus - minus);
        }
        let xi = eta[0] - base.cbar;
        let delta_matrix = prime.matrix() - base.op.matrix();
        Ok(PerturbationState {
            cbar: base.cbar,
            base,
            prime,
            prime_triple,
            theta,
            eta,
            xi,
            delta_matrix,
        })
    }

    /// `Σ_{p=0}^{p_max} μ Δ (QΔ)^p g`; vanishes (up to truncation and
    /// discretization) exactly when `δ'` is the perturbed dimension.
    pub fn xi_residual(&self, p_max: usize) -> Result<f64> {
        let mu = DVector::from_column_slice(&self.base.triple.mu);
        let mut u = &self.delta_matrix * DVector::from_column_slice(self.base.triple.g.values());
        let mut total = mu.dot(&u);
        let mut last = total.abs();
        for _ in 1..=p_max {
            u = &self.delta_matrix * resolvent_apply_vec(&self.base, &u)?;
            let term = mu.dot(&u);
            if term.abs() > 10.0 * last.max(1e-14) && term.abs() > 1e-6 {
                return Err(Error::Numerical(
                    "perturbation too large: residual series diverges".into(),
                ));
            }
            last = term.abs().max(1e-300);
            total += term;
        }
        Ok(total)
    }
}

/// The four resolvent scalars of the Gauss system at δ = 1:
/// `μ M_φ Q L M_φ g`, `μ M_φ Q h`, `ν Q L M_φ g`, `ν Q h`, with
/// `φ(x) = 2 log x`. No closed forms exist; all four are evaluated
/// numerically with a grid-doubling error estimate.
#[derive(Debug, Clone, serde::Serialize)]
pub struct QTerms {
    pub mphi_q_lmphi_g: f64,
    pub mphi_q_h: f64,
    pub nu_q_lmphi_g: f64,
    pub nu_q_h: f64,
    pub grid_size: usize,
    /// Max absolute change from the half-resolution evaluation.
    pub error_estimate: f64,
}

fn qterms_at(m: usize) -> Result<[f64; 4]> {
    let alphabet = AlphabetSpec::TailGeq(1);
    let grid = make_grid(m)?;
    let base = build_base(&alphabet, 1.0, &grid)?;
    let g = &base.triple.g;
    let h = GridFunction::constant(&grid, 1.0);

    // w = L M_phi g, the composed moment function
    let w = compose_l_mphi(&alphabet, 1.0, 1, g)?;
    let qw = resolvent_apply(&base, &w)?;
    let qh = resolvent_apply(&base, &h)?;

    // μ M_φ v = μ (L M_φ v) since μ is a left fixed point
    let mphi_qw = base.triple.mu_dot(compose_l_mphi(&alphabet, 1.0, 1, &qw)?.values());
    let mphi_qh = base.triple.mu_dot(compose_l_mphi(&alphabet, 1.0, 1, &qh)?.values());
    let nu_qw = qw.values()[0];
    let nu_qh = qh.values()[0];
    Ok([mphi_qw, mphi_qh, nu_qw, nu_qh])
}

/// Evaluates the Q-terms at grid size `m` (≥ 64 recommended) with an error
/// estimate from the `m/2` evaluation.
pub fn qterms(m: usize) -> Result<QTerms> {
    let fine = qterms_at(m)?;
    let coarse = qterms_at(m / 2)?;
    let error_estimate = fine
        .iter()
        .zip(&coarse)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(QTerms {
        mphi_q_lmphi_g: fine[0],
        mphi_q_h: fine[1],
        nu_q_lmphi_g: fine[2],
        nu_q_h: fine[3],
        grid_size: m,
        error_estimate,
    })
}

/// Second-order coefficient of the bounded-alphabet dimension expansion,
/// assembled from the analytic part and the Q-term combination
/// `(μM_φ/ζ(2) + ν) Q (LM_φ g/ζ(2) + h)`, divided through by the overall
/// `1/ζ(2)` factor of the solved expansion.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CoefficientC20 {
    pub value: f64,
    pub analytic_part: f64,
    pub qterm_combination: f64,
    pub error_estimate: f64,
}

pub fn coefficient_c20(m: usize) -> Result<CoefficientC20> {
    let q = qterms(m)?;
    let analytic = 1.5 - 2.0 / ZETA2 + 3.0 * ZETA3 / (ZETA2 * ZETA2);
    let combo = q.mphi_q_lmphi_g / (ZETA2 * ZETA2)
        + q.mphi_q_h / ZETA2
        + q.nu_q_lmphi_g / ZETA2
        + q.nu_q_h;
    Ok(CoefficientC20 {
        value: (analytic + combo) / ZETA2,
        analytic_part: analytic,
        qterm_combination: combo,
        error_estimate: q.error_estimate / ZETA2,
    })
}
