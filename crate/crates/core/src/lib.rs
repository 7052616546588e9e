//! Hausdorff dimensions of continued-fraction Cantor sets.
//!
//! The library assembles geometric transfer operators of Gauss-type iterated
//! function systems on a Chebyshev collocation grid, locates dimensions as
//! pressure roots, and evaluates the perturbation-series machinery
//! (resolvents, moment operators, exact-rational asymptotic coefficients)
//! that predicts how dimensions drift as an alphabet `E ⊆ ℕ` grows or thins.
//!
//! Modules mirror the pipeline:
//!
//! * [`alphabet`] — parse and enumerate digit alphabets, including infinite
//!   tails with polynomial or quasi-geometric decay.
//! * [`series`] — exact-rational infrastructure: Bernoulli numbers,
//!   Euler–Maclaurin polynomials, truncated multivariate power series.
//! * [`transfer`] — collocation grids and dense transfer-operator assembly
//!   with Euler–Maclaurin tail closure.
//! * [`spectral`] — dominant eigentriples, pressure, spectral gaps,
//!   Lyapunov exponents.
//! * [`dimension`] — Bowen-formula root finding with grid-doubling error
//!   estimates.
//! * [`perturbation`] — resolvents, the base-operator construction for
//!   subcritical systems, the Ξ residual, and the resolvent-based
//!   second-order coefficient.
//! * [`expansions`] — concrete expansion engines: the bounded-alphabet
//!   coefficient ladder, tree coefficients, the log-log-log solver, and the
//!   example families.

pub mod alphabet;
pub mod dimension;
mod error;
pub mod expansions;
pub mod numeric;
pub(crate) mod parallel;
pub mod perturbation;
pub mod series;
pub mod spectral;
pub mod transfer;

pub use error::{Error, Result};
