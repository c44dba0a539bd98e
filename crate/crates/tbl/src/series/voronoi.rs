//! Dual side of the Voronoi-type summation formulas:
//!
//! Σ_n f(n) n^{ν/2} ∫_α^β g(t) t^{p} 𝒦(4π√(nt/Q)) dt
//!
//! with one of four J/Y/K kernel combinations. The series converges only
//! conditionally, so partial sums are either averaged over a window or damped
//! by a smooth cutoff.

use super::quad::{panel_integral, QuadratureSpec};
use super::pairwise_sum;
use crate::arith::{divisor_sum_table, DivisorSumSpec};
use crate::bessel::{bessel_k, jy_hankel, jy_steed, JY_ASYMPTOTIC_CUT};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// The four kernel shapes, with c = cos(πν/2), s = sin(πν/2):
///
/// - `EvenCos`: (2K/π − Y)c − Js
/// - `OddSin`:  (2K/π − Y)s + Jc
/// - `OddSinP`: (2K/π + Y)s − Jc
/// - `OddCosP`: (2K/π + Y)c + Js
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum KernelVariant {
    EvenCos,
    OddSin,
    OddSinP,
    OddCosP,
}

/// The kernel at argument u > 0.
pub fn voronoi_kernel(variant: KernelVariant, nu: f64, u: f64) -> Result<f64> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::Domain(format!("kernel argument must be positive, got {u}")));
    }
    if !(nu >= 0.0) {
        return Err(Error::Domain(format!("kernel order must be non-negative, got {nu}")));
    }
    let (j, y) = if u > JY_ASYMPTOTIC_CUT { jy_hankel(nu, u) } else { jy_steed(nu, u) };
    // past u = 45, K is below 1e-19 of J and Y
    let k = if u < 45.0 { bessel_k(nu, u)? } else { 0.0 };
    let (s, c) = (0.5 * PI * nu).sin_cos();
    let k2 = 2.0 / PI * k;
    Ok(match variant {
        KernelVariant::EvenCos => (k2 - y) * c - j * s,
        KernelVariant::OddSin => (k2 - y) * s + j * c,
        KernelVariant::OddSinP => (k2 + y) * s - j * c,
        KernelVariant::OddCosP => (k2 + y) * c + j * s,
    })
}

/// The test functions used against the formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TestFunction {
    /// e^{−t}
    Exp,
    /// t²
    Square,
    /// e^{−t²/4}
    Gauss,
}

impl TestFunction {
    pub const ALL: [TestFunction; 3] = [TestFunction::Exp, TestFunction::Square, TestFunction::Gauss];

    pub fn eval(self, t: f64) -> f64 {
        match self {
            TestFunction::Exp => (-t).exp(),
            TestFunction::Square => t * t,
            TestFunction::Gauss => (-0.25 * t * t).exp(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TestFunction::Exp => "exp",
            TestFunction::Square => "t^2",
            TestFunction::Gauss => "gauss",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(TestFunction::Exp),
            "t^2" | "t2" | "square" => Ok(TestFunction::Square),
            "gauss" => Ok(TestFunction::Gauss),
            _ => Err(Error::Domain(format!("unknown test function '{s}' (exp, t^2, gauss)"))),
        }
    }
}

/// How the conditionally convergent dual series is summed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Smoothing {
    /// Σ_{n<N} w(n/N) a_n with the C^∞ step w(u) = 1/(1 + e^{1/(1−u) − 1/u}).
    SmoothCutoff { n_max: usize },
    /// Mean of the partial sums S_{N−W+1}, …, S_N.
    Window { n_max: usize, width: usize },
    /// The plain partial sum S_N.
    Truncated { n_max: usize },
}

impl Smoothing {
    pub fn n_max(&self) -> usize {
        match *self {
            Smoothing::SmoothCutoff { n_max } | Smoothing::Window { n_max, .. } | Smoothing::Truncated { n_max } => n_max,
        }
    }
}

impl Default for Smoothing {
    fn default() -> Self {
        Smoothing::SmoothCutoff { n_max: 20_000 }
    }
}

/// The C^∞ step: 1 for u ≤ 0, 0 for u ≥ 1.
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        1.0
    } else if u >= 1.0 {
        0.0
    } else {
        // 1/(1 + e^{1/(1−u) − 1/u}), written to avoid overflow at either end
        let d = 1.0 / (1.0 - u) - 1.0 / u;
        if d > 0.0 {
            let e = (-d).exp();
            e / (1.0 + e)
        } else {
            1.0 / (1.0 + d.exp())
        }
    }
}

/// One Voronoi dual series: coefficients f(n), test function g on (α, β),
/// kernel modulus Q and the extra power p of t.
#[derive(Debug, Clone)]
pub struct DualProblem<'a> {
    pub coeffs: &'a DivisorSumSpec,
    pub nu: f64,
    pub g: TestFunction,
    pub alpha: f64,
    pub beta: f64,
    pub modulus: f64,
    pub variant: KernelVariant,
    pub power: f64,
}

/// A summed dual series.
#[derive(Debug, Clone, Serialize)]
pub struct VoronoiDual {
    #[serde(skip)]
    pub value: Complex64,
    pub terms: usize,
    pub smoothing: Smoothing,
}

/// ∫_α^β g(t) t^p 𝒦(4π√(nt/Q)) dt on panels one kernel period wide in √t.
pub fn dual_integral(p: &DualProblem<'_>, n: usize, spec: &QuadratureSpec) -> Result<f64> {
    let c = 4.0 * PI * (n as f64 / p.modulus).sqrt();
    let (ra, rb) = (p.alpha.sqrt(), p.beta.sqrt());
    let period = 2.0 * PI / c;
    let panels = (((rb - ra) / period).ceil() as usize).max(2);
    let h = (rb - ra) / panels as f64;
    let edges: Vec<f64> = (0..=panels)
        .map(|k| if k == panels { p.beta } else { (ra + k as f64 * h).powi(2) })
        .collect();
    // errors inside the closure surface as NaN and are reported below
    let f = |t: f64| p.g.eval(t) * t.powf(p.power) * voronoi_kernel(p.variant, p.nu, c * t.sqrt()).unwrap_or(f64::NAN);
    let v = panel_integral(&f, &edges, spec)?;
    if v.is_nan() {
        return Err(Error::Domain(format!("kernel evaluation failed for n = {n}")));
    }
    Ok(v)
}

/// Σ_n f(n) n^{ν/2} ∫ g t^p 𝒦, summed as `smoothing` prescribes.
pub fn voronoi_dual_sum(p: &DualProblem<'_>, smoothing: Smoothing) -> Result<VoronoiDual> {
    if !(p.alpha > 0.0 && p.beta > p.alpha) {
        return Err(Error::Domain(format!("need 0 < α < β, got ({}, {})", p.alpha, p.beta)));
    }
    if !(p.modulus > 0.0) {
        return Err(Error::Domain("kernel modulus must be positive".into()));
    }
    let n_max = smoothing.n_max();
    if n_max == 0 {
        return Err(Error::Domain("dual series needs at least one term".into()));
    }
    if let Smoothing::Window { width, .. } = smoothing {
        if width == 0 || width > n_max {
            return Err(Error::Domain(format!("window width {width} must lie in 1..={n_max}")));
        }
    }
    let table = divisor_sum_table(p.coeffs, n_max);
    let qspec = QuadratureSpec { abs_tol: 1e-15, rel_tol: 1e-9, max_subdivisions: 500 };
    let terms: Vec<Complex64> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let c = table[n];
            if c.norm() == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok(c * (n as f64).powf(0.5 * p.nu) * dual_integral(p, n, &qspec)?)
        })
        .collect::<Result<_>>()?;
    let value = match smoothing {
        Smoothing::SmoothCutoff { n_max } => {
            let damped: Vec<Complex64> =
                terms.iter().enumerate().map(|(i, &a)| a * smooth_step((i + 1) as f64 / n_max as f64)).collect();
            pairwise_sum(&damped)
        }
        Smoothing::Window { width, .. } => {
            // mean of the last `width` partial sums = S_{N−W} + Σ_{m>N−W} a_m (N−m+1)/W
            let start = n_max - width;
            let base = pairwise_sum(&terms[..start]);
            let ramp: Vec<Complex64> = terms[start..]
                .iter()
                .enumerate()
                .map(|(i, &a)| a * ((width - i) as f64 / width as f64))
                .collect();
            base + pairwise_sum(&ramp)
        }
        Smoothing::Truncated { .. } => pairwise_sum(&terms),
    };
    Ok(VoronoiDual { value, terms: n_max, smoothing })
}
