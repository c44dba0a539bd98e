//! Dirichlet L-functions with analytic continuation, their derivatives, and the
//! functional-equation residual.

use super::bernoulli::generalized_bernoulli;
use super::gamma::gamma;
use super::gamma::factorial;
use super::zeta::{hurwitz_regular, hurwitz_zeta, real_pow_neg, riemann_zeta};
use crate::characters::{gauss_sum, Character, Parity};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum LMethod {
    DirectSeries,
    HurwitzEM,
    Bernoulli,
}

impl fmt::Display for LMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LMethod::DirectSeries => "direct-series",
            LMethod::HurwitzEM => "hurwitz-em",
            LMethod::Bernoulli => "bernoulli",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LEvaluation {
    pub s: Complex64,
    pub value: Complex64,
    pub method: LMethod,
}

fn non_positive_integer(s: Complex64) -> Option<u32> {
    (s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()).then(|| (-s.re) as u32)
}

fn check_pole(s: Complex64, chi: &Character) -> Result<()> {
    if chi.is_principal() && s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole(format!("L(s, {}) at s = 1", chi.label())));
    }
    Ok(())
}

/// Method picked by `dirichlet_l`: Bernoulli at non-positive integers, the
/// defining series for Re(s) ≥ 8, Euler–Maclaurin on Hurwitz zetas otherwise.
pub fn default_method(s: Complex64) -> LMethod {
    if non_positive_integer(s).is_some() {
        LMethod::Bernoulli
    } else if s.re >= 8.0 {
        LMethod::DirectSeries
    } else {
        LMethod::HurwitzEM
    }
}

/// L(s, χ) with the method chosen automatically.
pub fn dirichlet_l(s: Complex64, chi: &Character) -> Result<LEvaluation> {
    let method = default_method(s);
    Ok(LEvaluation { s, value: dirichlet_l_with(s, chi, method)?, method })
}

/// L(s, χ) as a bare value.
pub fn l_value(s: Complex64, chi: &Character) -> Result<Complex64> {
    dirichlet_l_with(s, chi, default_method(s))
}

/// L(x, χ) at a real point.
pub fn l_real(x: f64, chi: &Character) -> Result<Complex64> {
    l_value(Complex64::new(x, 0.0), chi)
}

/// L(s, χ) by a forced method.
pub fn dirichlet_l_with(s: Complex64, chi: &Character, method: LMethod) -> Result<Complex64> {
    check_pole(s, chi)?;
    match method {
        LMethod::Bernoulli => {
            let k = non_positive_integer(s).ok_or_else(|| {
                Error::Domain(format!("Bernoulli route needs a non-positive integer, got s = {s}"))
            })?;
            let n = k + 1;
            Ok(-generalized_bernoulli(n, chi) / n as f64)
        }
        LMethod::DirectSeries => direct_series(s, chi),
        LMethod::HurwitzEM => hurwitz_route(s, chi),
    }
}

fn direct_series(s: Complex64, chi: &Character) -> Result<Complex64> {
    if s.re <= 1.5 {
        return Err(Error::Domain(format!("defining series needs Re(s) > 1.5, got s = {s}")));
    }
    // tail Σ_{n>N} n^{−σ} < N^{1−σ}/(σ−1) ≤ 1e−17
    let sigma = s.re;
    let n_max = ((1e17 / (sigma - 1.0)).ln() / (sigma - 1.0)).exp().ceil();
    if n_max > 1e7 {
        return Err(Error::Convergence(format!("defining series too slow at s = {s}")));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for n in (1..=n_max as u64).rev() {
        let v = chi.value_u(n);
        if v.norm() > 0.0 {
            acc += v * (-s * (n as f64).ln()).exp();
        }
    }
    Ok(acc)
}

fn hurwitz_route(s: Complex64, chi: &Character) -> Result<Complex64> {
    let q = chi.modulus();
    if q == 1 {
        return riemann_zeta(s);
    }
    let qf = q as f64;
    if s.re < -0.5 {
        return reflected_route(s, chi);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mass = Complex64::new(0.0, 0.0);
    for a in 1..q {
        let v = chi.value_u(a);
        if v.norm() == 0.0 {
            continue;
        }
        acc += v * hurwitz_regular(s, a as f64 / qf)?;
        mass += v;
    }
    // Σχ(a) vanishes for non-principal χ, removing the pole exactly
    if !chi.is_principal() {
        mass = Complex64::new(0.0, 0.0);
    }
    let pole = if mass.norm() > 0.0 { mass / (s - 1.0) } else { Complex64::new(0.0, 0.0) };
    Ok(real_pow_neg(qf, s) * (acc + pole))
}

/// Far left of the critical strip, by Hurwitz's formula with the sum over
/// residues taken first:
/// L(s,χ) = 2Γ(1−s)(2π)^{s−1} q^{−1} Σ_r ζ(1−s, r/q) Σ_a χ(a) sin(πs/2 + 2πar/q).
/// The character sums are O(√q) and exact to rounding, so nothing large
/// cancels; reflecting each ζ(s, a/q) separately loses ≈ q^{1−Re s}·ε.
fn reflected_route(s: Complex64, chi: &Character) -> Result<Complex64> {
    let q = chi.modulus();
    let qf = q as f64;
    let (sn, cs) = ((PI * s / 2.0).sin(), (PI * s / 2.0).cos());
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 1..=q {
        let (mut c_sum, mut s_sum) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for a in 1..q {
            let v = chi.value_u(a);
            if v.norm() > 0.0 {
                let angle = 2.0 * PI * ((a * r) % q) as f64 / qf;
                c_sum += v * angle.cos();
                s_sum += v * angle.sin();
            }
        }
        let weight = sn * c_sum + cs * s_sum;
        if weight.norm() > 0.0 {
            acc += weight * hurwitz_zeta(1.0 - s, r as f64 / qf)?;
        }
    }
    Ok(2.0 * gamma(1.0 - s)? * real_pow_neg(2.0 * PI, 1.0 - s) / qf * acc)
}

/// L′(s0, χ) by Richardson-extrapolated central differences, starting from
/// step `h0` and halving four times.
pub fn l_derivative_with_step(s0: Complex64, chi: &Character, h0: f64) -> Result<Complex64> {
    check_pole(s0, chi)?;
    let mut h0 = h0;
    if chi.is_principal() {
        let d = (s0 - 1.0).norm();
        h0 = h0.min(d / 2.0);
    }
    const LEVELS: usize = 5;
    let mut table = [[Complex64::new(0.0, 0.0); LEVELS]; LEVELS];
    for j in 0..LEVELS {
        let h = h0 / (1u32 << j) as f64;
        let fp = l_value(s0 + h, chi)?;
        let fm = l_value(s0 - h, chi)?;
        table[j][0] = (fp - fm) / (2.0 * h);
        let mut factor = 1.0;
        for m in 1..=j {
            factor *= 4.0;
            table[j][m] = table[j][m - 1] + (table[j][m - 1] - table[j - 1][m - 1]) / (factor - 1.0);
        }
    }
    Ok(table[LEVELS - 1][LEVELS - 1])
}

/// L′(s0, χ).
pub fn l_derivative(s0: Complex64, chi: &Character) -> Result<Complex64> {
    l_derivative_with_step(s0, chi, 0.1)
}

/// L′(x, χ) at a real point.
pub fn l_derivative_real(x: f64, chi: &Character) -> Result<Complex64> {
    l_derivative(Complex64::new(x, 0.0), chi)
}

/// Γ(1−s) sin(π(s+κ)/2) L(1−s, χ̄), with the removable singularities at
/// positive integers s = n+1 replaced by their limits: either the sine
/// vanishes against the pole, or L(−n, χ̄) has a trivial zero and L′ enters.
fn reflected_factor(s: Complex64, kappa: u32, conj: &Character) -> Result<Complex64> {
    if s.im == 0.0 && s.re >= 1.0 && s.re == s.re.round() {
        let m = s.re as u32;
        let n = m - 1;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let at = Complex64::new(-(n as f64), 0.0);
        return Ok(if (m + kappa) % 2 == 1 {
            let sin0 = if (m + kappa) % 4 == 1 { 1.0 } else { -1.0 };
            sin0 * sign * l_derivative(at, conj)? / factorial(n)
        } else {
            let cos0 = if (m + kappa) % 4 == 0 { 1.0 } else { -1.0 };
            -sign * cos0 * PI / (2.0 * factorial(n)) * l_value(at, conj)?
        });
    }
    Ok(gamma(1.0 - s)? * (PI * (s + kappa as f64) / 2.0).sin() * l_value(1.0 - s, conj)?)
}

/// Right-hand side of the asymmetric functional equation
/// L(s,χ) = i^{−κ} (τ(χ)/π) (2π/q)^s Γ(1−s) sin(π(s+κ)/2) L(1−s, χ̄).
pub fn functional_equation_rhs(s: Complex64, chi: &Character) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::Hypothesis(format!("{} is not primitive", chi.label())));
    }
    let kappa = chi.parity().kappa();
    let i_pow = match chi.parity() {
        Parity::Even => Complex64::new(1.0, 0.0),
        Parity::Odd => Complex64::new(0.0, -1.0),
    };
    let q = chi.modulus() as f64;
    let tau = gauss_sum(chi);
    let scale = real_pow_neg(2.0 * PI / q, -s);
    Ok(i_pow * tau / PI * scale * reflected_factor(s, kappa, &chi.conjugate())?)
}

/// |L(s,χ) − (functional-equation right-hand side)| for primitive χ.
pub fn functional_equation_residual(s: Complex64, chi: &Character) -> Result<f64> {
    Ok((l_value(s, chi)? - functional_equation_rhs(s, chi)?).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;
    use crate::specfun::gamma::ln_gamma_real;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn chi(q: u64, i: usize) -> Character {
        enumerate_characters(q).unwrap()[i].clone()
    }

    #[test]
    fn leibniz() {
        let v = l_real(1.0, &chi(4, 1)).unwrap();
        assert!((v.re - PI / 4.0).abs() < 1e-14 && v.im.abs() < 1e-15);
    }

    #[test]
    fn value_at_zero_mod_three() {
        let ev = dirichlet_l(c(0.0, 0.0), &chi(3, 1)).unwrap();
        assert_eq!(ev.method, LMethod::Bernoulli);
        assert!((ev.value - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
        let em = dirichlet_l_with(c(0.0, 0.0), &chi(3, 1), LMethod::HurwitzEM).unwrap();
        assert!((em - c(1.0 / 3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn trivial_modulus_is_zeta() {
        let v = l_real(2.0, &chi(1, 0)).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-15);
        assert!(matches!(l_real(1.0, &chi(1, 0)), Err(Error::Pole(_))));
        assert!(matches!(l_real(1.0, &chi(6, 0)), Err(Error::Pole(_))));
    }

    #[test]
    fn methods_agree() {
        for q in [5, 7, 8] {
            for c0 in enumerate_characters(q).unwrap() {
                for s in [c(8.5, 0.0), c(9.0, 3.0)] {
                    let d = dirichlet_l_with(s, &c0, LMethod::DirectSeries).unwrap();
                    let e = dirichlet_l_with(s, &c0, LMethod::HurwitzEM).unwrap();
                    assert!((d - e).norm() < 1e-14);
                }
                for k in 0..5 {
                    let s = c(-(k as f64), 0.0);
                    let b = dirichlet_l_with(s, &c0, LMethod::Bernoulli).unwrap();
                    let e = dirichlet_l_with(s, &c0, LMethod::HurwitzEM).unwrap();
                    assert!((b - e).norm() < 1e-11, "q={q} k={k} {b} {e}");
                }
            }
        }
    }

    #[test]
    fn derivative_at_zero_matches_log_gamma_form() {
        // L′(0,χ) = Σ χ(a) ln Γ(a/q) − ln q · L(0,χ) for non-principal χ
        for q in [3, 4, 5, 7, 8, 11] {
            for c0 in enumerate_characters(q).unwrap().into_iter().skip(1) {
                let qf = q as f64;
                let lg: Complex64 = (1..q)
                    .map(|a| c0.value_u(a) * ln_gamma_real(a as f64 / qf).unwrap())
                    .sum();
                let exact = lg - qf.ln() * l_real(0.0, &c0).unwrap();
                let d = l_derivative_real(0.0, &c0).unwrap();
                assert!((d - exact).norm() < 1e-10, "q={q}: {}", (d - exact).norm());
            }
        }
    }

    #[test]
    fn zeta_prime_at_zero() {
        let d = l_derivative_real(0.0, &chi(1, 0)).unwrap();
        assert!((d.re + 0.5 * (2.0 * PI).ln()).abs() < 1e-10);
    }

    #[test]
    fn derivative_step_halving() {
        let c5 = chi(5, 2);
        let a = l_derivative_with_step(c(0.0, 0.0), &c5, 0.1).unwrap();
        let b = l_derivative_with_step(c(0.0, 0.0), &c5, 0.05).unwrap();
        assert!((a - b).norm() < 1e-8);
    }

    #[test]
    fn even_derivative_relation() {
        // L′(0,χ) = (τ(χ)/2) L(1,χ̄) for even primitive χ; for the real character
        // mod 5 both equal ln((1+√5)/2)
        let c5 = chi(5, 2);
        let d = l_derivative_real(0.0, &c5).unwrap();
        let rhs = gauss_sum(&c5) / 2.0 * l_real(1.0, &c5.conjugate()).unwrap();
        assert!((d - rhs).norm() < 1e-7);
        assert!((d.re - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-10);
    }

    #[test]
    fn trivial_zeros_far_left_at_large_modulus() {
        // L(1−n, χ) vanishes when n and χ have opposite parity; q^{n−1} ≈ 2.5e6
        // amplifies any cancellation in the Hurwitz values
        for c0 in enumerate_characters(19).unwrap().into_iter().skip(1) {
            let n = if c0.parity() == Parity::Even { 5.0 } else { 6.0 };
            let v = dirichlet_l_with(c(1.0 - n, 0.0), &c0, LMethod::HurwitzEM).unwrap();
            assert!(v.norm() < 1e-10, "{}: {v}", c0.label());
        }
    }

    #[test]
    fn functional_equation_examples() {
        assert!(functional_equation_residual(c(0.3, 0.0), &chi(3, 1)).unwrap() < 1e-9);
        assert!(functional_equation_residual(c(0.5, 0.0), &chi(5, 2)).unwrap() < 1e-9);
        // integer points on both sides of the Γ(1−s) pole
        assert!(functional_equation_residual(c(2.0, 0.0), &chi(4, 1)).unwrap() < 1e-9);
        assert!(functional_equation_residual(c(1.0, 0.0), &chi(4, 1)).unwrap() < 1e-9);
        assert!(functional_equation_residual(c(2.0, 0.0), &chi(5, 2)).unwrap() < 1e-9);
        assert!(functional_equation_residual(c(3.0, 0.0), &chi(5, 1)).unwrap() < 1e-9);
        assert!(functional_equation_residual(c(-2.5, 0.0), &chi(7, 1)).unwrap() < 1e-9);
        assert!(functional_equation_residual(c(0.4, 2.0), &chi(5, 1)).unwrap() < 1e-9);
        assert!(matches!(functional_equation_residual(c(0.3, 0.0), &chi(6, 0)), Err(Error::Hypothesis(_))));
    }
}
