//! Weight −ν identities: 8πx^{ν/2} Σ f(n) n^{ν/2} K_ν(4π√(nx)) against finite
//! L-value sums and a rational tail, and their ν = 1/2 exponential forms.

use super::{re, Resolved, Sides, TheoremId, I};
use crate::arith::{divisor_sum_table, DivisorSumSpec};
use crate::characters::{character, gauss_sum, Character};
use crate::error::{Error, Result};
use crate::series::{bessel_series, cohen_tail_series, max_terms, pairwise_sum, rational_tail, SeriesParams, SumOptions};
use crate::specfun::{gamma_real, l_real, zeta_real};
use num_complex::Complex64;
use std::f64::consts::PI;

fn l(s: f64, c: &Character) -> Result<Complex64> {
    l_real(s, c)
}

fn z(s: f64) -> Result<f64> {
    zeta_real(s)
}

/// Q^{…}·(tail) with its term count folded into `terms`.
fn tail(
    spec: &DivisorSumSpec,
    nu: f64,
    n: u32,
    q: f64,
    offset: i32,
    divide_by_n: bool,
    terms: &mut usize,
) -> Result<Complex64> {
    let v = cohen_tail_series(spec, nu, n as i32, q, offset, divide_by_n, &SumOptions::default())?;
    *terms += v.terms;
    Ok(v.value)
}

fn rtail(spec: &DivisorSumSpec, e: f64, q: f64, divide_by_n: bool, terms: &mut usize) -> Result<Complex64> {
    let v = rational_tail(spec, e, q, divide_by_n, &SumOptions::default())?;
    *terms += v.terms;
    Ok(v.value)
}

/// 2π Σ f(n) e^{−4π√(nx)}, the ν = 1/2 collapse of the Bessel side.
fn exponential_side(spec: &DivisorSumSpec, x: f64) -> Result<(Complex64, usize)> {
    let b = 4.0 * PI * x.sqrt();
    // |f(n)| ≤ d(n) ≤ 2√n, so the tail past N is below ∫ 2√t e^{−b√t} dt
    let mut n = 1usize;
    while b * (n as f64).sqrt() < 45.0 + 3.0 * (n as f64).ln() {
        n *= 2;
    }
    if n > max_terms() {
        return Err(Error::Convergence(format!("exponential sum needs {n} terms, above the cap {}", max_terms())));
    }
    let table = divisor_sum_table(spec, n);
    let terms: Vec<Complex64> = (1..=n).map(|k| table[k] * (-b * (k as f64).sqrt()).exp()).collect();
    Ok((2.0 * PI * pairwise_sum(&terms), n))
}

fn bessel_side(spec: &DivisorSumSpec, nu: f64, x: f64) -> Result<(Complex64, usize)> {
    let v = bessel_series(spec, &SeriesParams::new(4.0 * PI, x, nu))?;
    Ok((8.0 * PI * x.powf(nu / 2.0) * v.value, v.terms))
}

pub(super) fn evaluate(id: TheoremId, r: &Resolved) -> Result<Sides> {
    use TheoremId::*;
    match id {
        C3_1 | C3_2 | C3_3 | C3_4 => half(id, r),
        T3_5 | T3_6 | T3_7 | T3_8 | C3_5 | C3_6 => two(id, r),
        T3_1 | T3_2 | T3_3 | T3_4 | P1_1 => single(id, r),
        _ => unreachable!("{id} is not a weight −ν identity"),
    }
}

fn single(id: TheoremId, r: &Resolved) -> Result<Sides> {
    use TheoremId::*;
    let (nu, x, n) = (r.nu, r.x, r.n);
    let (sn, cs) = (0.5 * PI * nu).sin_cos();
    let mut terms = 0;

    if id == P1_1 {
        let one = character(1, 0)?;
        let spec = DivisorSumSpec::twisted(-nu, &one);
        let (lhs, lhs_terms) = bessel_side(&spec, nu, x)?;
        let mut sum = 0.0;
        for j in 1..=n {
            let j = j as f64;
            sum += z(2.0 * j)? * z(2.0 * j - nu)? * x.powf(2.0 * j - 1.0);
        }
        let t = tail(&spec, nu, n, x, 0, false, &mut terms)?;
        let rhs = re(-gamma_real(nu)? * z(nu)? / (2.0 * PI).powf(nu - 1.0)
            + gamma_real(1.0 + nu)? * z(1.0 + nu)? / (PI.powf(nu + 1.0) * 2f64.powf(nu) * x)
            + z(nu)? * x.powf(nu - 1.0) / sn
            + 2.0 / sn * sum
            - PI * z(nu + 1.0)? * x.powf(nu) / cs)
            + 2.0 / sn * x.powf(2.0 * n as f64 + 1.0) * t;
        return Ok(Sides { lhs, rhs, lhs_terms, rhs_terms: terms });
    }

    let chi = r.chi();
    let cb = chi.conjugate();
    let q = chi.modulus() as f64;
    let t = gauss_sum(chi);
    let qq = q * x;
    let nf = n as f64;
    let lhs_spec = match id {
        T3_1 | T3_3 => DivisorSumSpec::twisted(-nu, &cb),
        _ => DivisorSumSpec::bar_twisted(-nu, &cb),
    };
    let (lhs, lhs_terms) = bessel_side(&lhs_spec, nu, x)?;
    // the two pole terms shared by the σ_{−ν,χ̄} identities
    let poles = || -> Result<Complex64> {
        Ok(-gamma_real(nu)? * l(nu, &cb)? / (2.0 * PI).powf(nu - 1.0)
            + 2.0 * gamma_real(1.0 + nu)? * l(1.0 + nu, &cb)? / ((2.0 * PI).powf(nu + 1.0) * x))
    };
    let rhs = match id {
        T3_1 => {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 1..=n {
                let j = j as f64;
                s += z(2.0 * j)? * l(2.0 * j - nu, chi)? * qq.powf(2.0 * j - 1.0);
            }
            s += qq.powf(2.0 * nf + 1.0) * tail(&DivisorSumSpec::bar_twisted(-nu, chi), nu, n, qq, 0, false, &mut terms)?;
            poles()? + 2.0 * q.powf(1.0 - nu) / (t * sn) * s
        }
        T3_2 => {
            let mut s = l(nu, chi)? / sn * qq.powf(nu - 1.0) - PI * l(1.0 + nu, chi)? / cs * qq.powf(nu);
            for j in 1..=n {
                let j = j as f64;
                s += 2.0 / sn * z(2.0 * j - nu)? * l(2.0 * j, chi)? * qq.powf(2.0 * j - 1.0);
            }
            s += 2.0 / sn
                * qq.powf(2.0 * nf + 1.0)
                * tail(&DivisorSumSpec::twisted(-nu, chi), nu, n, qq, 0, false, &mut terms)?;
            q / t * s
        }
        T3_3 => {
            let mut s = z(nu + 1.0)? * l(1.0, chi)? * qq.powf(nu);
            for j in 1..=n {
                let j = j as f64;
                s -= z(2.0 * j)? * l(2.0 * j - nu, chi)? * qq.powf(2.0 * j - 1.0);
            }
            s -= qq.powf(2.0 * nf + 1.0) * tail(&DivisorSumSpec::bar_twisted(-nu, chi), nu, n, qq, 1, true, &mut terms)?;
            poles()? + 2.0 * I * q.powf(1.0 - nu) / (t * cs) * s
        }
        T3_4 => {
            let mut s = l(nu, chi)? / cs * qq.powf(nu - 1.0) + PI * l(1.0 + nu, chi)? / sn * qq.powf(nu);
            for j in 1..n {
                let j = j as f64;
                s += 2.0 / cs * z(2.0 * j + 1.0 - nu)? * l(2.0 * j + 1.0, chi)? * qq.powf(2.0 * j);
            }
            s += 2.0 / cs * qq.powf(2.0 * nf) * tail(&DivisorSumSpec::twisted(-nu, chi), nu, n, qq, 1, false, &mut terms)?;
            2.0 * gamma_real(nu)? * z(nu)? * l(0.0, &cb)? / (2.0 * PI).powf(nu - 1.0) + I * q / t * s
        }
        _ => unreachable!(),
    };
    Ok(Sides { lhs, rhs, lhs_terms, rhs_terms: terms })
}

fn two(id: TheoremId, r: &Resolved) -> Result<Sides> {
    use TheoremId::*;
    let (nu, x, n) = (r.nu, r.x, r.n);
    let nf = n as f64;
    let (sn, cs) = (0.5 * PI * nu).sin_cos();
    let (c1, c2) = match id {
        C3_5 | C3_6 => (r.chi(), r.chi()),
        _ => (r.chi(), r.chi2()),
    };
    let (p, q) = (c1.modulus() as f64, c2.modulus() as f64);
    let taus = gauss_sum(c1) * gauss_sum(c2);
    let (b1, b2) = (c1.conjugate(), c2.conjugate());
    let qq = p * q * x;
    let (lhs, lhs_terms) = bessel_side(&DivisorSumSpec::two_char(-nu, &b1, &b2), nu, x)?;
    let dual = DivisorSumSpec::two_char(-nu, c2, c1);
    let mut terms = 0;
    // Σ_{j=1}^{N} L(2j, χ₂)L(2j−ν, χ₁)Q^{2j−1}
    let even_sum = || -> Result<Complex64> {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 1..=n {
            let j = j as f64;
            s += l(2.0 * j, c2)? * l(2.0 * j - nu, c1)? * qq.powf(2.0 * j - 1.0);
        }
        Ok(s)
    };
    // Σ_{j=1}^{N−1} L(2j+1, χ₂)L(2j+1−ν, χ₁)Q^{2j}
    let odd_sum = || -> Result<Complex64> {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 1..n {
            let j = j as f64;
            s += l(2.0 * j + 1.0, c2)? * l(2.0 * j + 1.0 - nu, c1)? * qq.powf(2.0 * j);
        }
        Ok(s)
    };
    let pole = || -> Result<Complex64> {
        Ok(2.0 * gamma_real(nu)? * l(nu, &b1)? * l(0.0, &b2)? / (2.0 * PI).powf(nu - 1.0))
    };
    let rhs = match id {
        T3_5 | C3_5 => {
            let s = even_sum()? + qq.powf(2.0 * nf + 1.0) * tail(&dual, nu, n, qq, 0, false, &mut terms)?;
            2.0 * p.powf(1.0 - nu) * q / (taus * sn) * s
        }
        T3_6 | C3_6 => {
            let s = -l(nu + 1.0, c2)? * l(1.0, c1)? * qq.powf(nu)
                + odd_sum()?
                + qq.powf(2.0 * nf) * tail(&dual, nu, n, qq, 2, true, &mut terms)?;
            pole()? - 2.0 * p.powf(1.0 - nu) * q / (taus * sn) * s
        }
        T3_7 => {
            let s = odd_sum()? + qq.powf(2.0 * nf) * tail(&dual, nu, n, qq, 1, false, &mut terms)?;
            pole()? + 2.0 * I * p.powf(1.0 - nu) * q / (taus * cs) * s
        }
        T3_8 => {
            let s = l(nu + 1.0, c2)? * l(1.0, c1)? * qq.powf(nu)
                - even_sum()?
                - qq.powf(2.0 * nf + 1.0) * tail(&dual, nu, n, qq, 1, true, &mut terms)?;
            2.0 * I * p.powf(1.0 - nu) * q / (taus * cs) * s
        }
        _ => unreachable!(),
    };
    Ok(Sides { lhs, rhs, lhs_terms, rhs_terms: terms })
}

fn half(id: TheoremId, r: &Resolved) -> Result<Sides> {
    use TheoremId::*;
    let h = 0.5;
    let x = r.x;
    let chi = r.chi();
    let cb = chi.conjugate();
    let q = chi.modulus() as f64;
    let t = gauss_sum(chi);
    let qq = q * x;
    let mut terms = 0;
    let lhs_spec = match id {
        C3_1 | C3_3 => DivisorSumSpec::twisted(-h, &cb),
        _ => DivisorSumSpec::bar_twisted(-h, &cb),
    };
    let (lhs, lhs_terms) = exponential_side(&lhs_spec, x)?;
    let poles = || -> Result<Complex64> { Ok(-PI * l(h, &cb)? + l(3.0 * h, &cb)? / (4.0 * PI * x)) };
    let rhs = match id {
        C3_1 => {
            let s = rtail(&DivisorSumSpec::bar_twisted(-h, chi), h, qq, false, &mut terms)?;
            poles()? + 2.0 * q.powf(3.0 * h) / t * x * s
        }
        C3_2 => {
            let s = rtail(&DivisorSumSpec::twisted(-h, chi), h, qq, false, &mut terms)?;
            q.powf(h) / t * l(h, chi)? / x.sqrt() - PI * q.powf(3.0 * h) / t * l(3.0 * h, chi)? * x.sqrt()
                + 2.0 * q * q / t * x * s
        }
        C3_3 => {
            let s = rtail(&DivisorSumSpec::bar_twisted(-h, chi), 3.0 * h, qq, true, &mut terms)?;
            poles()? + 2.0 * I * q / t * z(3.0 * h)? * l(1.0, chi)? * x.sqrt() - 2.0 * I * q.powf(3.0 * h) / t * x * s
        }
        C3_4 => {
            // Σ f(n)/(√n(n+Q)(√n+√Q)) = −√Q Σ f(n)(n^{−1/2} − Q^{−1/2})/(n² − Q²)
            let s = -qq.sqrt() * rtail(&DivisorSumSpec::twisted(-h, chi), -h, qq, false, &mut terms)?;
            2.0 * PI * z(h)? * l(0.0, &cb)? + I * q.powf(h) / t * l(h, chi)? / x.sqrt()
                + PI * I * q.powf(3.0 * h) / t * l(3.0 * h, chi)? * x.sqrt()
                - 2.0 * I * q / t * qq.powf(1.5) * s
        }
        _ => unreachable!(),
    };
    Ok(Sides { lhs, rhs, lhs_terms, rhs_terms: terms })
}
