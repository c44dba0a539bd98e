//! Identities with integer weight k: Σ f(n) n^{ν/2} K_ν(a√(nx)) against the
//! shifted-power, difference-form and log-kernel series.

use super::{re, Resolved, Sides, TheoremId, I};
use crate::arith::DivisorSumSpec;
use crate::characters::{character, gauss_sum, Character, Parity};
use crate::error::Result;
use crate::series::{bessel_series, log_kernel_series, shifted_power_series, SeriesParams, SeriesValue, SumOptions};
use crate::specfun::{factorial, gamma_real, l_derivative_real, l_real, EULER_GAMMA};
use num_complex::Complex64;
use std::f64::consts::PI;

fn l(s: f64, c: &Character) -> Result<Complex64> {
    l_real(s, c)
}

fn lp(s: f64, c: &Character) -> Result<Complex64> {
    l_derivative_real(s, c)
}

/// (−1)^{k/2} for even k, (−1)^{(k−1)/2} for odd k.
fn quarter_sign(k: u32) -> f64 {
    if (k / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

struct Rhs {
    value: Complex64,
    terms: usize,
}

impl Rhs {
    fn with(value: Complex64, s: &SeriesValue) -> Self {
        Self { value, terms: s.terms }
    }
}

fn shifted(spec: &DivisorSumSpec, p: f64, c: f64) -> Result<SeriesValue> {
    shifted_power_series(spec, p, c, false, &SumOptions::default())
}

fn difference(spec: &DivisorSumSpec, p: f64, c: f64) -> Result<SeriesValue> {
    shifted_power_series(spec, p, c, true, &SumOptions::default())
}

fn log_kernel(spec: &DivisorSumSpec, c: f64, divide_by_n: bool) -> Result<SeriesValue> {
    log_kernel_series(spec, c, divide_by_n, &SumOptions::default())
}

/// The summand on the Bessel side.
fn lhs_spec(id: TheoremId, r: &Resolved) -> DivisorSumSpec {
    use TheoremId::*;
    let k = r.k as f64;
    match id {
        T2_1 | T2_2 | T2_5 | T2_6 | T2_13 | C2_3 => DivisorSumSpec::twisted(k, r.chi()),
        T2_3 | T2_4 | T2_7 | T2_8 => DivisorSumSpec::bar_twisted(k, r.chi()),
        C2_1 | C2_2 => DivisorSumSpec::two_char(k, r.chi(), r.chi()),
        _ => DivisorSumSpec::two_char(k, r.chi(), r.chi2()),
    }
}

pub(super) fn delta_term(id: TheoremId, r: &Resolved) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    if r.k != 0 {
        return Ok(zero);
    }
    let (a, x, nu) = (r.a, r.x, r.nu);
    match id {
        TheoremId::T2_1 => Ok(re(2f64.powf(nu + 1.0) / a.powf(nu + 2.0) * gamma_real(1.0 + nu)? * x.powf(-nu / 2.0 - 1.0))
            * l(1.0, r.chi())?),
        TheoremId::T2_2 => Ok(re(2.0 / (a * a * x)) * l(1.0, r.chi())?),
        _ => Ok(zero),
    }
}

pub(super) fn evaluate(id: TheoremId, r: &Resolved) -> Result<Sides> {
    let lhs = bessel_series(&lhs_spec(id, r), &SeriesParams::new(r.a, r.x, r.nu))?;
    let rhs = rhs(id, r)?;
    Ok(Sides { lhs: lhs.value, rhs: rhs.value, lhs_terms: lhs.terms, rhs_terms: rhs.terms })
}

fn rhs(id: TheoremId, r: &Resolved) -> Result<Rhs> {
    use TheoremId::*;
    let (a, x, nu, k) = (r.a, r.x, r.nu, r.k);
    let kf = k as f64;
    match id {
        T2_1 | T2_2 | T2_3 | T2_4 | T2_5 | T2_6 | T2_7 | T2_8 | T2_13 | C2_3 => single(id, r),
        _ => {
            // two characters; the χ₁ = χ₂ corollaries reuse χ for both
            let (c1, c2) = match id {
                C2_1 | C2_2 => (r.chi(), r.chi()),
                _ => (r.chi(), r.chi2()),
            };
            let (p, q) = (c1.modulus() as f64, c2.modulus() as f64);
            let taus = gauss_sum(c1) * gauss_sum(c2);
            let c = a * a * p * q * x / (16.0 * PI * PI);
            let (b1, b2) = (c1.conjugate(), c2.conjugate());
            let swapped = DivisorSumSpec::two_char(kf, &b2, &b1);
            let power_pref = || -> Result<f64> {
                Ok((a * q).powf(nu) * p.powf(nu + kf) * x.powf(nu / 2.0)
                    / (2f64.powf(3.0 * nu + kf + 2.0) * PI.powf(2.0 * nu + kf + 1.0))
                    * gamma_real(nu + kf + 1.0)?)
            };
            let diff_pref = factorial(k) * p.powf(kf) / (2.0 * (2.0 * PI).powf(kf + 1.0));
            match id {
                T2_10 | C2_1 => {
                    let s = shifted(&swapped, nu + kf + 1.0, c)?;
                    let sign = quarter_sign(k + 1);
                    Ok(Rhs::with(re(sign * power_pref()?) * taus * s.value, &s))
                }
                T2_11 | C2_2 => {
                    let cconst = if c1.parity() == Parity::Even {
                        l(-kf, c1)? * lp(0.0, c2)?
                    } else {
                        lp(-kf, c1)? * l(0.0, c2)?
                    };
                    let s = difference(&swapped, kf + 1.0, c)?;
                    Ok(Rhs::with(0.5 * cconst + re(quarter_sign(k) * diff_pref) * taus * s.value, &s))
                }
                T2_14 => {
                    let s = shifted(&swapped, nu + kf + 1.0, c)?;
                    Ok(Rhs::with(re(quarter_sign(k) * power_pref()?) / I * taus * s.value, &s))
                }
                T2_15 => {
                    let e = if c1.parity() == Parity::Odd {
                        l(-kf, c1)? * lp(0.0, c2)?
                    } else {
                        lp(-kf, c1)? * l(0.0, c2)?
                    };
                    let s = difference(&swapped, kf + 1.0, c)?;
                    Ok(Rhs::with(0.5 * e + re(quarter_sign(k) * diff_pref) * I * taus * s.value, &s))
                }
                T2_9 => {
                    let s = log_kernel(&DivisorSumSpec::two_char(0.0, &b1, &b2), c, false)?;
                    Ok(Rhs::with(re(a * a * p * q * x / (32.0 * PI.powi(4))) * taus * s.value, &s))
                }
                T2_12 => {
                    let (l1, l2) = (l(0.0, c1)?, l(0.0, c2)?);
                    let constant = 0.5
                        * (l1 * l2 * (-2.0 * EULER_GAMMA + (4.0 / (a * a * x)).ln())
                            + lp(0.0, c1)? * l2
                            + l1 * lp(0.0, c2)?);
                    let s = log_kernel(&DivisorSumSpec::two_char(0.0, &b1, &b2), c, true)?;
                    let pref = a.powi(4) * p * p * q * q * x * x / (512.0 * PI.powi(6));
                    Ok(Rhs::with(constant - re(pref) * taus * s.value, &s))
                }
                _ => unreachable!("{id} is not an integer-weight identity"),
            }
        }
    }
}

fn single(id: TheoremId, r: &Resolved) -> Result<Rhs> {
    use TheoremId::*;
    let (a, x, nu, k) = (r.a, r.x, r.nu, r.k);
    let kf = k as f64;
    let chi = r.chi();
    let cb = chi.conjugate();
    let q = chi.modulus() as f64;
    let t = gauss_sum(chi);
    let c = a * a * q * x / (16.0 * PI * PI);
    let sg = quarter_sign(k);
    let delta = delta_term(id, r)?;

    // Γ(ν)Γ(k+1) q^k L(k+1, χ̄) x^{−ν/2} / (a^ν 2^{k+2−ν} π^{k+1}), the pole term of σ_{k,χ}
    let pole_twisted = || -> Result<Complex64> {
        Ok(re(q.powf(kf) / (a.powf(nu) * 2f64.powf(kf + 2.0 - nu) * PI.powf(kf + 1.0))
            * gamma_real(nu)?
            * gamma_real(kf + 1.0)?
            * x.powf(-nu / 2.0))
            * t
            * l(kf + 1.0, &cb)?)
    };
    // the x^{−ν/2−k−1} term of σ̄_{k,χ}
    let pole_bar = || -> Result<Complex64> {
        Ok(re(2f64.powf(nu + 2.0 * kf + 1.0) / a.powf(nu + 2.0 * kf + 2.0)
            * gamma_real(kf + 1.0)?
            * gamma_real(nu + kf + 1.0)?
            * x.powf(-nu / 2.0 - kf - 1.0))
            * l(kf + 1.0, chi)?)
    };
    let shifted_pref = |qpow: f64| -> Result<f64> {
        Ok(a.powf(nu) * qpow * x.powf(nu / 2.0) / (2f64.powf(3.0 * nu + kf + 2.0) * PI.powf(2.0 * nu + kf + 1.0))
            * gamma_real(nu + kf + 1.0)?)
    };
    let diff_pref = factorial(k) / (2.0 * (2.0 * PI).powf(kf + 1.0));
    // −L(−k)/4 (log(8π/a²) − 2γ) − L′(−k)/4 + L(−k)/4 log x
    let log_constant = || -> Result<Complex64> {
        let lk = l(-kf, chi)?;
        Ok(-lk / 4.0 * ((8.0 * PI / (a * a)).ln() - 2.0 * EULER_GAMMA) - lp(-kf, chi)? / 4.0 + lk / 4.0 * x.ln())
    };

    let bar_dual = DivisorSumSpec::bar_twisted(kf, &cb);
    let tw_dual = DivisorSumSpec::twisted(kf, &cb);
    Ok(match id {
        T2_1 => {
            let s = shifted(&bar_dual, nu + kf + 1.0, c)?;
            Rhs::with(
                delta + sg * I * pole_twisted()? - re(sg * shifted_pref(q.powf(nu + kf))?) * I * t * s.value,
                &s,
            )
        }
        T2_2 => {
            let s = difference(&bar_dual, kf + 1.0, c)?;
            Rhs::with(delta + log_constant()? + re(sg * diff_pref * q.powf(kf)) * I * t * s.value, &s)
        }
        T2_3 => {
            let s = shifted(&tw_dual, nu + kf + 1.0, c)?;
            Rhs::with(pole_bar()? - re(sg * shifted_pref(q.powf(nu))?) * I * t * s.value, &s)
        }
        T2_4 => {
            let zeta_prime = lp(-kf, &character(1, 0)?)?;
            let constant = re(2f64.powf(2.0 * kf + 1.0) / a.powf(2.0 * kf + 2.0) * gamma_real(kf + 1.0)?.powi(2)
                / x.powf(kf + 1.0))
                * l(kf + 1.0, chi)?
                + zeta_prime * l(0.0, chi)? / 2.0;
            let s = difference(&tw_dual, kf + 1.0, c)?;
            Rhs::with(constant + re(sg * diff_pref) * I * t * s.value, &s)
        }
        T2_5 => {
            let s = shifted(&bar_dual, nu + kf + 1.0, c)?;
            Rhs::with(sg * pole_twisted()? - re(sg * shifted_pref(q.powf(nu + kf))?) * t * s.value, &s)
        }
        T2_6 => {
            let s = difference(&bar_dual, kf + 1.0, c)?;
            Rhs::with(log_constant()? + re(sg * diff_pref * q.powf(kf)) * t * s.value, &s)
        }
        T2_7 => {
            let s = shifted(&tw_dual, nu + kf + 1.0, c)?;
            Rhs::with(pole_bar()? - re(sg * shifted_pref(q.powf(nu))?) * t * s.value, &s)
        }
        T2_8 => {
            let zeta_at = l(-kf, &character(1, 0)?)?;
            let constant = re(2f64.powf(2.0 * kf + 1.0) / a.powf(2.0 * kf + 2.0) * gamma_real(kf + 1.0)?.powi(2)
                / x.powf(kf + 1.0))
                * l(kf + 1.0, chi)?
                + zeta_at * lp(0.0, chi)? / 2.0;
            let s = difference(&tw_dual, kf + 1.0, c)?;
            Rhs::with(constant + re(sg * diff_pref) * t * s.value, &s)
        }
        T2_13 => {
            let s = log_kernel(&DivisorSumSpec::bar_twisted(0.0, &cb), c, false)?;
            Rhs::with(
                re(2.0 / (a * a * x)) * l(1.0, chi)? - t / 8.0 * l(1.0, &cb)?
                    + re(a * a * q * x / (32.0 * PI.powi(4))) * t * s.value,
                &s,
            )
        }
        C2_3 => {
            let l1 = l(1.0, chi)?;
            let l0 = l(0.0, chi)?;
            let head = l1 / x * (re(2.0 / (a * a)) - I * t / (4.0 * PI) * x * x.ln())
                - l0 / 4.0 * ((8.0 * PI / (a * a)).ln() - 2.0 * EULER_GAMMA)
                - lp(0.0, chi)? / 4.0;
            let s = difference(&DivisorSumSpec::bar_twisted(0.0, &cb), 1.0, c)?;
            Rhs::with(head + re(a * a * q * x / (64.0 * PI.powi(3))) * I * t * s.value / c, &s)
        }
        _ => unreachable!("{id} is not a one-character integer-weight identity"),
    })
}
