//! Small dense least-squares helpers for sweep fits.

use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Solves `min ||A c - y||_2` by SVD; returns the coefficients and the
/// coefficient of determination r².
pub fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Result<(Vec<f64>, f64)> {
    if rows.is_empty() || rows.len() != y.len() {
        return Err(Error::InvalidParameter(
            "least squares needs matching non-empty rows".into(),
        ));
    }
    let ncols = rows[0].len();
    if rows.len() < ncols {
        return Err(Error::InvalidParameter(format!(
            "least squares underdetermined: {} rows, {} columns",
            rows.len(),
            ncols
        )));
    }
    let a = DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]);
    let rhs = DVector::from_column_slice(y);
    let svd = a.clone().svd(true, true);
    let coeffs = svd
        .solve(&rhs, 1e-13)
        .map_err(|e| Error::Numerical(format!("SVD solve failed: {e}")))?;
    let fitted = &a * &coeffs;
    let resid: f64 = (&rhs - &fitted).norm_squared();
    let mean = rhs.iter().sum::<f64>() / rhs.len() as f64;
    let total: f64 = rhs.iter().map(|v| (v - mean) * (v - mean)).sum();
    let r2 = if total > 0.0 { 1.0 - resid / total } else { 1.0 };
    Ok((coeffs.iter().copied().collect(), r2))
}

/// Fits `|y| ≈ C x^p` on log-log axes and returns `(p, log C, r²)`.
/// Pairs with non-positive `|y|` are rejected.
pub fn fit_exponent(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    let mut rows = Vec::with_capacity(xs.len());
    let mut rhs = Vec::with_capacity(xs.len());
    for (&x, &y) in xs.iter().zip(ys) {
        if x <= 0.0 || y.abs() == 0.0 {
            return Err(Error::InvalidParameter(
                "log-log fit needs positive x and nonzero y".into(),
            ));
        }
        rows.push(vec![x.ln(), 1.0]);
        rhs.push(y.abs().ln());
    }
    let (c, r2) = least_squares(&rows, &rhs)?;
    Ok((c[0], c[1], r2))
}
