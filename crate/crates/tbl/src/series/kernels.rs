//! Algebraically decaying divisor-sum series: shifted powers, their difference
//! form, the logarithmic kernel, and the rational tails of the Cohen-type
//! identities.
//!
//! Each sum is split at a cut N₀ beyond the kernel's singular point. The head
//! n < N₀ is summed directly; beyond it the kernel is expanded in powers of
//! 1/n and each power is summed exactly through [`DirichletTail`].

use super::tail::DirichletTail;
use super::{SeriesValue, SumOptions};
use crate::arith::{divisor_sum_table, DivisorSumSpec};
use crate::error::{Error, Result};
use num_complex::Complex64;

fn cut_for(c: f64, opts: &SumOptions) -> u64 {
    opts.head.unwrap_or_else(|| (4.0 * c).ceil() as u64 + 20)
}

/// Σ_m coeff(m)·T(s(m)) until the estimated size of the terms stays below
/// tol·|total| for three consecutive m.
fn expansion<F, S>(
    tail: &DirichletTail,
    growth: f64,
    start: usize,
    opts: &SumOptions,
    coeff: F,
    exponent: S,
    head: Complex64,
    log: bool,
) -> Result<(Complex64, usize)>
where
    F: Fn(usize) -> f64,
    S: Fn(usize) -> f64,
{
    let n0 = tail.cut() as f64;
    let mut total = head;
    let mut quiet = 0;
    for m in start..400 {
        let c = coeff(m);
        let s = exponent(m);
        // |Σ_{n≥N₀} f(n) n^{−s}| ≲ N₀^{1+g−s}·(ln N₀ + 1)
        let size = c.abs() * n0.powf(1.0 + growth - s) * (n0.ln() + 1.0);
        if c != 0.0 {
            let sc = Complex64::new(s, 0.0);
            total += c * if log { tail.log_tail(sc)? } else { tail.tail(sc)? };
        }
        if size <= opts.tol * total.norm() || size < 1e-300 {
            quiet += 1;
            if quiet >= 3 {
                return Ok((total, m + 1));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence("tail expansion did not settle".into()))
}

fn binomial_neg(p: f64, m: usize) -> f64 {
    // C(−p, m) = (−1)^m p(p+1)…(p+m−1)/m!
    (0..m).fold(1.0, |acc, j| acc * -(p + j as f64) / (j as f64 + 1.0))
}

/// Σ f(n)/(n+c)^p, or with `difference_form` the paired sum
/// Σ f(n)(n^{−p} − (n+c)^{−p}).
pub fn shifted_power_series(
    spec: &DivisorSumSpec,
    p: f64,
    c: f64,
    difference_form: bool,
    opts: &SumOptions,
) -> Result<SeriesValue> {
    let g = spec.growth_exponent();
    let decay = if difference_form { p + 1.0 } else { p };
    if decay - g <= 1.0 {
        return Err(Error::Divergence(format!(
            "Σ f(n)/(n+c)^{p} diverges: coefficients grow like n^{g}, need exponent > {}",
            g + 1.0
        )));
    }
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!("shift must be non-negative, got c = {c}")));
    }
    if c == 0.0 {
        let value = if difference_form {
            Complex64::new(0.0, 0.0)
        } else {
            spec.generating_function(Complex64::new(p, 0.0))?
        };
        return Ok(SeriesValue { value, terms: 0, tail_bound: 0.0 });
    }
    let n0 = cut_for(c, opts);
    let table = divisor_sum_table(spec, n0 as usize);
    let mut head = Complex64::new(0.0, 0.0);
    for n in (1..n0 as usize).rev() {
        let nf = n as f64;
        let w = if difference_form {
            // n^{−p}(1 − (1 + c/n)^{−p}) without cancellation
            -nf.powf(-p) * (-p * (c / nf).ln_1p()).exp_m1()
        } else {
            (nf + c).powf(-p)
        };
        head += table[n] * w;
    }
    let tail = DirichletTail::new(spec, n0);
    let sign = if difference_form { -1.0 } else { 1.0 };
    let (value, orders) = expansion(
        &tail,
        g,
        if difference_form { 1 } else { 0 },
        opts,
        |m| sign * binomial_neg(p, m) * c.powi(m as i32),
        |m| p + m as f64,
        head,
        false,
    )?;
    Ok(SeriesValue { value, terms: n0 as usize + orders, tail_bound: opts.tol * value.norm() })
}

fn excluded_near_integer(v: f64, what: &str) -> Result<()> {
    let r = v.round();
    if r >= 1.0 && (v - r).abs() <= 1e-6 {
        return Err(Error::ExcludedParameter(format!("{what} = {v} lies within 1e-6 of the positive integer {r}")));
    }
    Ok(())
}

/// Σ f(n) ln(n/c)/(n² − c²), optionally with an extra factor 1/n.
pub fn log_kernel_series(spec: &DivisorSumSpec, c: f64, divide_by_n: bool, opts: &SumOptions) -> Result<SeriesValue> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!("log kernel needs c > 0, got {c}")));
    }
    excluded_near_integer(c, "c")?;
    let g = spec.growth_exponent();
    let f = if divide_by_n { 1.0 } else { 0.0 };
    if 2.0 + f - g <= 1.0 {
        return Err(Error::Divergence("log-kernel series diverges for this coefficient growth".into()));
    }
    let n0 = cut_for(c, opts);
    let table = divisor_sum_table(spec, n0 as usize);
    let mut head = Complex64::new(0.0, 0.0);
    for n in (1..n0 as usize).rev() {
        let nf = n as f64;
        let d = nf - c;
        // ln(n/c)/(n−c) = ln1p(u)/(c u), removable at n = c
        let ratio = if d == 0.0 { 1.0 / c } else { (d / c).ln_1p() / d };
        head += table[n] * ratio / (nf + c) / nf.powf(f);
    }
    let tail = DirichletTail::new(spec, n0);
    let lc = c.ln();
    // Σ_{n≥N₀} f(n)(ln n − ln c) Σ_m c^{2m} n^{−2−2m−f}
    let (with_log, o1) = expansion(&tail, g, 0, opts, |m| c.powi(2 * m as i32), |m| 2.0 + 2.0 * m as f64 + f, head, true)?;
    let (value, o2) = expansion(
        &tail,
        g,
        0,
        opts,
        |m| -lc * c.powi(2 * m as i32),
        |m| 2.0 + 2.0 * m as f64 + f,
        with_log,
        false,
    )?;
    Ok(SeriesValue { value, terms: n0 as usize + o1 + o2, tail_bound: opts.tol * value.norm() })
}

/// Σ f(n)(n^e − Q^e)/(n² − Q²) with e = ν − 2N + offset, optionally with an
/// extra factor 1/n.
pub fn cohen_tail_series(
    spec: &DivisorSumSpec,
    nu: f64,
    big_n: i32,
    q: f64,
    offset: i32,
    divide_by_n: bool,
    opts: &SumOptions,
) -> Result<SeriesValue> {
    rational_tail(spec, nu - 2.0 * big_n as f64 + offset as f64, q, divide_by_n, opts)
}

/// Σ f(n)(n^e − Q^e)/(n² − Q²)[/n] for an explicit exponent e.
pub fn rational_tail(spec: &DivisorSumSpec, e: f64, q: f64, divide_by_n: bool, opts: &SumOptions) -> Result<SeriesValue> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Domain(format!("need Q > 0, got {q}")));
    }
    excluded_near_integer(q, "Q")?;
    let g = spec.growth_exponent();
    let f = if divide_by_n { 1.0 } else { 0.0 };
    if e.max(0.0) - 2.0 - f + g >= -1.0 {
        return Err(Error::Divergence(format!(
            "rational tail with exponent {e} diverges against coefficient growth n^{g}"
        )));
    }
    let n0 = cut_for(q, opts);
    let table = divisor_sum_table(spec, n0 as usize);
    let qe = q.powf(e);
    let mut head = Complex64::new(0.0, 0.0);
    for n in (1..n0 as usize).rev() {
        let nf = n as f64;
        let d = nf - q;
        // (n^e − Q^e)/(n − Q) = Q^e expm1(e ln1p(u))/(Q u), removable at n = Q
        let ratio = if d == 0.0 {
            e * qe / q
        } else {
            qe * (e * (d / q).ln_1p()).exp_m1() / d
        };
        head += table[n] * ratio / (nf + q) / nf.powf(f);
    }
    let tail = DirichletTail::new(spec, n0);
    let (part, o1) = expansion(&tail, g, 0, opts, |m| q.powi(2 * m as i32), |m| 2.0 + 2.0 * m as f64 - e + f, head, false)?;
    let (value, o2) = expansion(
        &tail,
        g,
        0,
        opts,
        |m| -qe * q.powi(2 * m as i32),
        |m| 2.0 + 2.0 * m as f64 + f,
        part,
        false,
    )?;
    Ok(SeriesValue { value, terms: n0 as usize + o1 + o2, tail_bound: opts.tol * value.norm() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{character, enumerate_characters};
    use crate::specfun::riemann_zeta;
    use std::f64::consts::PI;

    fn unit() -> DivisorSumSpec {
        // the constant sequence is not one of the three kinds; σ̄_{−60} with
        // trivial χ is 1 + O(2^{−60})
        DivisorSumSpec::bar_twisted(-60.0, &character(1, 0).unwrap())
    }

    fn brute<F: Fn(f64) -> f64>(spec: &DivisorSumSpec, n_max: usize, k: F) -> Complex64 {
        let t = divisor_sum_table(spec, n_max);
        (1..=n_max).rev().map(|n| t[n] * k(n as f64)).sum()
    }

    #[test]
    fn unit_coefficients_give_zeta() {
        let o = SumOptions::default();
        let v = shifted_power_series(&unit(), 2.0, 0.0, false, &o).unwrap();
        assert!((v.value - PI * PI / 6.0).norm() < 1e-14);
        let v = shifted_power_series(&unit(), 2.0, 1e-12, false, &o).unwrap();
        assert!((v.value - riemann_zeta(Complex64::new(2.0, 0.0)).unwrap()).norm() < 1e-11);
        let v = shifted_power_series(&unit(), 1.0, 0.0, true, &o).unwrap();
        assert_eq!(v.value, Complex64::new(0.0, 0.0));
        // Σ 1/(n+1)^2 = ζ(2) − 1
        let v = shifted_power_series(&unit(), 2.0, 1.0, false, &o).unwrap();
        assert!((v.value.re - (PI * PI / 6.0 - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn divergence_and_exclusion() {
        let o = SumOptions::default();
        assert!(matches!(shifted_power_series(&unit(), 1.0, 0.5, false, &o), Err(Error::Divergence(_))));
        assert!(matches!(log_kernel_series(&unit(), 2.0, false, &o), Err(Error::ExcludedParameter(_))));
        assert!(matches!(rational_tail(&unit(), 0.3, 1.0, false, &o), Err(Error::ExcludedParameter(_))));
    }

    #[test]
    fn head_doubling_is_stable() {
        let c5 = enumerate_characters(5).unwrap()[1].clone();
        let spec = DivisorSumSpec::bar_twisted(0.0, &c5);
        let a = shifted_power_series(&spec, 1.25, 0.7, false, &SumOptions::default()).unwrap();
        let b = shifted_power_series(&spec, 1.25, 0.7, false, &SumOptions { head: Some(46), ..SumOptions::default() })
            .unwrap();
        assert!((a.value - b.value).norm() < 1e-11);
    }

    #[test]
    fn shifted_matches_brute_force_with_large_shift() {
        // fast decay so a brute sum is exact, large shift so the expansion is
        // badly conditioned if tails were taken by subtraction
        let c7 = enumerate_characters(7).unwrap()[2].clone();
        let spec = DivisorSumSpec::bar_twisted(2.0, &c7);
        let (p, c) = (9.5, 6.3);
        let v = shifted_power_series(&spec, p, c, false, &SumOptions::default()).unwrap();
        let b = brute(&spec, 400_000, |n| (n + c).powf(-p));
        assert!((v.value - b).norm() < 1e-13 * b.norm(), "{} vs {}", v.value, b);
        let v = shifted_power_series(&spec, p, c, true, &SumOptions::default()).unwrap();
        let b = brute(&spec, 400_000, |n| n.powf(-p) - (n + c).powf(-p));
        assert!((v.value - b).norm() < 1e-12 * b.norm());
    }

    #[test]
    fn log_kernel_limit_and_brute() {
        // at c = n(1+ε) the n-th term tends to 1/(2n²)
        let n: f64 = 3.0;
        let c = n * (1.0 + 1e-5);
        let d = n - c;
        let term = (d / c).ln_1p() / d / (n + c);
        assert!((term - 1.0 / (2.0 * n * n)).abs() < 1e-6);
        let o = SumOptions::default();
        let v = log_kernel_series(&unit(), 0.5, false, &o).unwrap();
        let b = brute(&unit(), 1_000_000, |n| (n / 0.5f64).ln() / (n * n - 0.25));
        // midpoint-integral estimate of the brute tail beyond 10^6
        let m = 1_000_000.5f64;
        let est = ((m / 0.5).ln() + 1.0) / m;
        assert!((v.value.re - b.re - est).abs() < 1e-9);
        let v = log_kernel_series(&unit(), 0.5, true, &o).unwrap();
        let b = brute(&unit(), 1_000_000, |n| (n / 0.5f64).ln() / (n * n - 0.25) / n);
        assert!((v.value - b).norm() < 1e-9);
    }

    #[test]
    fn rational_tail_brute_and_limit() {
        let o = SumOptions::default();
        // ν = 0.3, N = 1: exponent −1.7, Q = 0.7
        let v = cohen_tail_series(&unit(), 0.3, 1, 0.7, 0, false, &o).unwrap();
        let e = -1.7;
        let b = brute(&unit(), 1_000_000, |n| (n.powf(e) - 0.7f64.powf(e)) / (n * n - 0.49));
        // brute misses ≈ Q^e/N
        assert!((v.value - b).norm() < 2e-6);
        let bt = b.re - 0.7f64.powf(e) / 1_000_000.5;
        assert!((v.value.re - bt).abs() < 1e-9);
        // removable point: near n = Q the ratio tends to e Q^{e−1}/(2Q)
        let q: f64 = 2.0 * (1.0 + 1e-9);
        let d = 2.0 - q;
        let r = q.powf(e) * (e * (d / q).ln_1p()).exp_m1() / d / (2.0 + q);
        assert!((r - e * q.powf(e - 1.0) / (2.0 * q)).abs() < 1e-9);
    }
}
