//! Σ_{n≥1} f(n) n^{ν/2} K_ν(a√(nx)) with a certified truncation.

use super::{max_terms, pairwise_sum, SeriesValue};
use crate::arith::{divisor_sum_table, DivisorSumSpec};
use crate::bessel::{bessel_k, bessel_k_scaled};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// The triple (a, x, ν) with truncation controls.
#[derive(Debug, Clone, Copy)]
pub struct SeriesParams {
    pub a: f64,
    pub x: f64,
    pub nu: f64,
    /// Relative tolerance for the certified tail.
    pub tol: f64,
    pub max_terms: usize,
}

impl SeriesParams {
    pub fn new(a: f64, x: f64, nu: f64) -> Self {
        Self { a, x, nu, tol: 1e-15, max_terms: max_terms() }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.x > 0.0) || !self.a.is_finite() || !self.x.is_finite() {
            return Err(Error::Domain(format!("need a, x > 0, got a = {}, x = {}", self.a, self.x)));
        }
        if !(self.nu >= 0.0) || !self.nu.is_finite() {
            return Err(Error::Domain(format!("need ν ≥ 0, got {}", self.nu)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Domain("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Upper bound for Γ(s, y) when y > 2(s − 1).
fn upper_gamma_bound(s: f64, y: f64) -> f64 {
    let lead = ((s - 1.0) * y.ln() - y).exp();
    if s <= 1.0 {
        lead
    } else {
        lead / (1.0 - (s - 1.0) / y)
    }
}

/// Certified bound on Σ_{n>N} |f(n)| n^{ν/2} K_ν(b√n), b = a√x, from
/// |f(n)| ≤ n^{g+1} and K_ν(y) ≤ C √(π/2y) e^{−y} for y ≥ b√N.
pub fn tail_bound(growth: f64, nu: f64, b: f64, n: usize) -> f64 {
    let nf = n as f64;
    let y = b * nf.sqrt();
    let gamma = growth + 1.0 + 0.5 * nu - 0.25;
    let s = 2.0 * gamma + 2.0;
    // the summand is decreasing past its peak and the Γ bound needs y > 2(s−1)
    if y <= 2.0 * (s - 1.0).max(1.0) {
        return f64::INFINITY;
    }
    // K_ν(y)e^y/√(π/2y) increases to 1 for ν < 1/2 and decreases for ν > 1/2
    let ratio = bessel_k_scaled(nu, y).map(|k| k / (PI / (2.0 * y)).sqrt()).unwrap_or(f64::INFINITY);
    let c = ratio.max(1.0);
    c * (PI / 2.0).sqrt() * b.powf(-0.5) * 2.0 * b.powf(-2.0 * gamma - 2.0) * upper_gamma_bound(s, y)
}

/// Smallest N (found by doubling then bisection) whose tail bound is below
/// `target`.
fn truncation_for(growth: f64, nu: f64, b: f64, target: f64, cap: usize) -> Result<usize> {
    let mut hi = 16usize;
    while tail_bound(growth, nu, b, hi) > target {
        if hi >= cap {
            return Err(Error::Convergence(format!(
                "Bessel series needs more than {cap} terms for the requested tolerance"
            )));
        }
        hi = (hi * 2).min(cap);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if tail_bound(growth, nu, b, mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Σ_{n≥1} f(n) n^{ν/2} K_ν(a√(nx)), truncated where the analytic tail bound
/// falls below tol·|sum|. Terms are evaluated in parallel and reduced by a
/// fixed pairwise tree.
pub fn bessel_series(spec: &DivisorSumSpec, p: &SeriesParams) -> Result<SeriesValue> {
    p.validate()?;
    let g = spec.growth_exponent();
    let b = p.a * p.x.sqrt();
    // first pass sized against the leading term, then confirmed against the sum
    let lead = bessel_k(p.nu, b)?.abs().max(1e-300);
    let mut target = p.tol * lead;
    loop {
        let n = truncation_for(g, p.nu, b, target, p.max_terms)?;
        let coeffs = divisor_sum_table(spec, n);
        let terms: Vec<Complex64> = (1..=n)
            .into_par_iter()
            .map(|k| {
                let c = coeffs[k];
                if c.norm() == 0.0 {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let kf = k as f64;
                Ok(c * kf.powf(0.5 * p.nu) * bessel_k(p.nu, b * kf.sqrt())?)
            })
            .collect::<Result<_>>()?;
        let value = pairwise_sum(&terms);
        let bound = tail_bound(g, p.nu, b, n);
        if bound <= p.tol * value.norm() || bound < 1e-300 {
            return Ok(SeriesValue { value, terms: n, tail_bound: bound });
        }
        // heavy cancellation: tighten against the actual magnitude
        let next = p.tol * value.norm();
        if next >= target * 0.999 {
            return Err(Error::Convergence("Bessel series truncation did not stabilise".into()));
        }
        target = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{character, enumerate_characters};

    #[test]
    fn doubling_truncation_is_stable() {
        let c5 = enumerate_characters(5).unwrap()[2].clone();
        let spec = DivisorSumSpec::twisted(0.0, &c5);
        let p = SeriesParams::new(1.0, 4.0, 0.0);
        let v = bessel_series(&spec, &p).unwrap();
        let coeffs = divisor_sum_table(&spec, 2 * v.terms);
        let doubled: Complex64 = (1..=2 * v.terms)
            .rev()
            .map(|k| coeffs[k] * bessel_k(0.0, 2.0 * (k as f64).sqrt()).unwrap())
            .sum();
        assert!((v.value - doubled).norm() < 1e-12);
        assert!(v.tail_bound <= 1e-15 * v.value.norm());
    }

    #[test]
    fn half_order_reduces_to_exponentials() {
        // n^{1/4} K_{1/2}(a√(nx)) = √(π/2) (ax)^{−1/2} e^{−a√(nx)} · n^{1/4}/n^{1/4}
        let c5 = enumerate_characters(5).unwrap()[1].clone();
        let spec = DivisorSumSpec::twisted(-0.5, &c5);
        let (a, x) = (4.0 * PI, 0.21);
        let v = bessel_series(&spec, &SeriesParams::new(a, x, 0.5)).unwrap();
        let coeffs = divisor_sum_table(&spec, 2000);
        let pref = (PI / 2.0).sqrt() / (a * x.sqrt()).sqrt();
        let direct: Complex64 = (1..=2000).rev().map(|k| coeffs[k] * pref * (-a * (k as f64 * x).sqrt()).exp()).sum();
        assert!((v.value - direct).norm() < 1e-12 * direct.norm());
    }

    #[test]
    fn trivial_character_is_plain_divisor_function() {
        let one = character(1, 0).unwrap();
        let spec = DivisorSumSpec::twisted(0.0, &one);
        let p = SeriesParams::new(2.0, 0.75, 0.3);
        let v = bessel_series(&spec, &p).unwrap();
        let d = divisor_sum_table(&spec, 100_000);
        let b = 2.0 * 0.75f64.sqrt();
        let brute: f64 = (1..=100_000usize)
            .rev()
            .map(|k| d[k].re * (k as f64).powf(0.15) * bessel_k(0.3, b * (k as f64).sqrt()).unwrap())
            .sum();
        assert!((v.value.re - brute).abs() < 1e-11 * brute.abs());
    }

    #[test]
    fn pairwise_reduction_is_deterministic() {
        let c7 = enumerate_characters(7).unwrap()[1].clone();
        let spec = DivisorSumSpec::bar_twisted(1.0, &c7);
        let p = SeriesParams::new(0.5, 0.3, 1.5);
        let a = bessel_series(&spec, &p).unwrap();
        let b = bessel_series(&spec, &p).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn tail_bound_dominates_actual_tail() {
        let one = character(1, 0).unwrap();
        let spec = DivisorSumSpec::twisted(1.0, &one);
        let (nu, b) = (2.5, 0.8);
        let d = divisor_sum_table(&spec, 20_000);
        for n in [400usize, 1000, 3000] {
            let actual: f64 = (n + 1..=20_000)
                .map(|k| d[k].re * (k as f64).powf(0.5 * nu) * bessel_k(nu, b * (k as f64).sqrt()).unwrap())
                .sum();
            assert!(actual <= tail_bound(1.0, nu, b, n), "n = {n}");
        }
    }
}
