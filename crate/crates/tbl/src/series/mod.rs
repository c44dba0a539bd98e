//! Convergent evaluation of every series shape in the identities, plus the
//! adaptive quadrature behind the Voronoi integrals.

pub mod bessel_sum;
pub mod kernels;
pub mod quad;
pub mod tail;
pub mod voronoi;

pub use bessel_sum::{bessel_series, SeriesParams};
pub use kernels::{cohen_tail_series, log_kernel_series, rational_tail, shifted_power_series};
pub use quad::{adaptive_integral, QuadratureSpec};
pub use tail::{character_tail, DirichletTail};
pub use voronoi::{voronoi_dual_sum, voronoi_kernel, DualProblem, KernelVariant, Smoothing, TestFunction, VoronoiDual};

use num_complex::Complex64;

/// Default cap on the number of terms of any single series; `TBL_MAX_TERMS`
/// overrides it.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// The global term cap, honouring `TBL_MAX_TERMS`.
pub fn max_terms() -> usize {
    std::env::var("TBL_MAX_TERMS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_TERMS)
}

/// Controls shared by the algebraically decaying sums.
#[derive(Debug, Clone, Copy)]
pub struct SumOptions {
    /// Relative size below which expansion orders are dropped.
    pub tol: f64,
    /// Forced cut between directly summed head and expanded tail.
    pub head: Option<u64>,
}

impl Default for SumOptions {
    fn default() -> Self {
        Self { tol: 1e-17, head: None }
    }
}

/// A series value with its truncation bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    /// Terms (or head terms plus expansion orders) used.
    pub terms: usize,
    /// Bound on the neglected remainder.
    pub tail_bound: f64,
}

/// Pairwise (tree) summation. The tree depends only on the length, so results
/// are bit-identical however the terms were produced.
pub fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}
