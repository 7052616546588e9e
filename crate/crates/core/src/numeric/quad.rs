//! Gauss–Jacobi quadrature with weight `u^beta` on the unit interval.

use crate::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights for `∫_0^1 f(u) u^beta du ≈ Σ w_i f(u_i)`, `beta > -1`.
///
/// Golub–Welsch on the monic Jacobi recurrence for the weight
/// `(1+t)^beta` on `[-1, 1]`, mapped affinely to `[0, 1]`.
pub fn gauss_jacobi_unit(n: usize, beta: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if beta <= -1.0 {
        return Err(Error::InvalidParameter(format!(
            "Jacobi weight exponent must exceed -1, got {beta}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("quadrature size 0".into()));
    }
    let b = beta;
    // Monic recurrence alpha_k, beta_k for w(t) = (1+t)^b on [-1,1].
    let mut alpha = vec![0.0f64; n];
    let mut betas = vec![0.0f64; n]; // betas[0] = total mass
    alpha[0] = b / (b + 2.0);
    betas[0] = 2f64.powf(b + 1.0) / (b + 1.0);
    for k in 1..n {
        let kf = k as f64;
        let den = 2.0 * kf + b;
        alpha[k] = b * b / (den * (den + 2.0));
        betas[k] =
            4.0 * kf * kf * (kf + b) * (kf + b) / (den * den * (den + 1.0) * (den - 1.0));
    }

    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jac[(k, k)] = alpha[k];
        if k + 1 < n {
            let off = betas[k + 1].sqrt();
            jac[(k, k + 1)] = off;
            jac[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t = eig.eigenvalues[i];
            let w = betas[0] * eig.eigenvectors[(0, i)] * eig.eigenvectors[(0, i)];
            (t, w)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    // u = (1+t)/2 maps the weight (1+t)^b to (2u)^b with dt = 2 du.
    let scale = 2f64.powf(-(b + 1.0));
    let nodes = pairs.iter().map(|(t, _)| 0.5 * (1.0 + t)).collect();
    let weights = pairs.iter().map(|(_, w)| w * scale).collect();
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_monomials_exactly() {
        // ∫_0^1 u^beta u^k du = 1/(beta + k + 1)
        for &beta in &[0.0, -0.5, 1.3, -0.9] {
            let (nodes, weights) = gauss_jacobi_unit(12, beta).unwrap();
            for k in 0..20 {
                let approx: f64 = nodes
                    .iter()
                    .zip(&weights)
                    .map(|(u, w)| w * u.powi(k))
                    .sum();
                let exact = 1.0 / (beta + k as f64 + 1.0);
                assert!(
                    (approx - exact).abs() < 1e-12 * exact.abs().max(1.0),
                    "beta={beta} k={k}: {approx} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn near_singular_weight_is_stable() {
        // beta close to -1 is the pressure-near-abscissa regime
        let beta = -0.999_99;
        let (nodes, weights) = gauss_jacobi_unit(24, beta).unwrap();
        let mass: f64 = weights.iter().sum();
        assert!((mass - 1.0 / (beta + 1.0)).abs() < 1e-6 / (beta + 1.0));
        assert!(nodes.iter().all(|&u| u > 0.0 && u < 1.0));
    }
}
