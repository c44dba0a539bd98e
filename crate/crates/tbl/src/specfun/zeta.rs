//! Hurwitz and Riemann zeta by Euler–Maclaurin summation.
//!
//! The pole at s = 1 is split off analytically: the EM integral term
//! (M+a)^{1−s}/(s−1) is written as 1/(s−1) plus an entire remainder, so the
//! regular part ζ(s,a) − 1/(s−1) can be evaluated at s = 1 itself. Character
//! sums of Hurwitz zetas use only the regular part, which is how L(1, χ) comes
//! out of the same code path as every other point.

use super::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const MAX_CORRECTIONS: u32 = 40;

/// (e^w − 1)/w for |w| < 0.1, by its Taylor series to w^12.
fn expm1_over(w: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = term;
    for k in 2..=13 {
        term *= w / k as f64;
        acc += term;
    }
    acc
}

/// x^{−s} for real x > 0, with the modulus taken through `powf` so real
/// arguments keep full relative accuracy.
pub(crate) fn real_pow_neg(x: f64, s: Complex64) -> Complex64 {
    let ln = x.ln();
    Complex64::from_polar(x.powf(-s.re), -s.im * ln)
}

/// Head length used when none is forced.
///
/// Large enough that the Bernoulli corrections reach double-precision roundoff
/// well before the asymptotic series turns around. For Re(s) < 0 the head is
/// kept short, because the head terms grow like n^{−Re s} and their sum cancels;
/// at non-positive integers the corrections terminate, so one term suffices.
pub fn default_head(s: Complex64) -> usize {
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return 1;
    }
    let asym = ((40.0 + s.norm()) / (2.0 * PI)).ceil() as usize;
    if s.re >= 0.0 {
        asym.max(15).max(s.im.abs().ceil() as usize + 10)
    } else {
        asym.max(2)
    }
}

/// ζ(s,a) − 1/(s−1) with an explicit head length M.
pub(crate) fn hurwitz_regular_with_head(s: Complex64, a: f64, head: usize) -> Result<Complex64> {
    euler_maclaurin(s, a, head, true)
}

/// Euler–Maclaurin for ζ(s,a), minus 1/(s−1) when `split_pole` is set.
fn euler_maclaurin(s: Complex64, a: f64, head: usize, split_pole: bool) -> Result<Complex64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("Hurwitz zeta needs a > 0, got {a}")));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..head {
        sum += real_pow_neg(n as f64 + a, s);
    }
    let big_n = head as f64 + a;
    let ln_n = big_n.ln();
    let n_pow = real_pow_neg(big_n, s);
    // (N^{1−s} − 1)/(s − 1)
    let w = (1.0 - s) * ln_n;
    let integral = if !split_pole {
        n_pow * big_n / (s - 1.0)
    } else if w.norm() < 0.1 {
        -ln_n * expm1_over(w)
    } else {
        (n_pow * big_n - 1.0) / (s - 1.0)
    };
    let mut total = sum + integral + 0.5 * n_pow;

    // Σ_k B_{2k}/(2k)! (s)_{2k−1} N^{−s−2k+1}
    let inv_n2 = 1.0 / (big_n * big_n);
    let mut poch = s; // (s)_{2k−1}
    let mut scale = n_pow / big_n; // N^{−s−2k+1}
    let mut fact = 2.0; // (2k)!
    let mut prev = f64::INFINITY;
    let mut growing = 0;
    for k in 1..=MAX_CORRECTIONS {
        let term = bernoulli_number(2 * k) / fact * poch * scale;
        total += term;
        let mag = term.norm();
        if poch.norm() == 0.0 || mag <= 1e-17 * total.norm().max(1e-300) {
            return Ok(total);
        }
        if mag > prev {
            growing += 1;
            if growing >= 2 {
                break;
            }
        }
        prev = mag;
        let k2 = 2.0 * k as f64;
        // (s)_{2k+1} = (s)_{2k−1} (s+2k−1)(s+2k)
        poch *= (s + k2 - 1.0) * (s + k2);
        scale *= inv_n2;
        fact *= (k2 + 1.0) * (k2 + 2.0);
    }
    Err(Error::Convergence(format!(
        "Euler–Maclaurin corrections did not settle for s = {s}, a = {a}, M = {head}"
    )))
}

/// ζ(s,a) − 1/(s−1), lengthening the head until the corrections settle.
pub(crate) fn hurwitz_regular(s: Complex64, a: f64) -> Result<Complex64> {
    let mut head = default_head(s);
    loop {
        match hurwitz_regular_with_head(s, a, head) {
            Err(Error::Convergence(_)) if head < 4096 => head *= 2,
            other => return other,
        }
    }
}

/// Hurwitz zeta ζ(s, a) for a > 0.
///
/// For Re(s) < −5/2 and 0 < a ≤ 1 the value comes from Hurwitz's formula over the
/// periodic zeta Σ e^{2πina} n^{s−1}, which converges absolutely there; direct
/// Euler–Maclaurin loses digits to cancellation that far left.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("Hurwitz zeta at s = 1".into()));
    }
    if s.re < -2.5 && a > 0.0 && a <= 1.0 && non_integer(s) {
        return hurwitz_via_periodic(s, a);
    }
    if (s - 1.0).norm() > 0.5 {
        // away from the pole, skip the split so tiny values keep relative accuracy
        let mut head = default_head(s);
        loop {
            match euler_maclaurin(s, a, head, false) {
                Err(Error::Convergence(_)) if head < 4096 => head *= 2,
                other => return other,
            }
        }
    }
    Ok(hurwitz_regular(s, a)? + 1.0 / (s - 1.0))
}

fn non_integer(s: Complex64) -> bool {
    !(s.im == 0.0 && s.re == s.re.round())
}

fn hurwitz_via_periodic(s: Complex64, a: f64) -> Result<Complex64> {
    let w = 1.0 - s;
    let pref = 2.0 * super::gamma::gamma(w)? * real_pow_neg(2.0 * PI, w);
    let (sn, cs) = ((PI * s / 2.0).sin(), (PI * s / 2.0).cos());
    // absolute error ≈ |pref|·(|sin|+|cos|)·N^{1−Re w}/(Re w − 1)
    let scale = pref.norm() * (sn.norm() + cs.norm());
    let sigma = w.re;
    let n = ((scale / (1e-15 * (sigma - 1.0))).ln() / (sigma - 1.0)).exp().ceil().max(2.0);
    if n > 2e6 {
        return Err(Error::Convergence(format!("periodic zeta too slow at s = {s}")));
    }
    let (mut c_acc, mut s_acc) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for k in (1..=n as u64).rev() {
        let p = real_pow_neg(k as f64, w);
        // reduce k·a mod 1 before scaling by 2π
        let theta = 2.0 * PI * (k as f64 * a).fract();
        c_acc += p * theta.cos();
        s_acc += p * theta.sin();
    }
    Ok(pref * (sn * c_acc + cs * s_acc))
}

/// Hurwitz zeta with a forced Euler–Maclaurin head length.
pub fn hurwitz_zeta_with_head(s: Complex64, a: f64, head: usize) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("Hurwitz zeta at s = 1".into()));
    }
    Ok(hurwitz_regular_with_head(s, a, head)? + 1.0 / (s - 1.0))
}

/// ζ(s, j/q) for 1 ≤ j ≤ q, given the values ζ(1−s, r/q) for r = 1..q, via
/// Hurwitz's formula
/// ζ(s, j/q) = 2Γ(1−s)/(2πq)^{1−s} Σ_r sin(πs/2 + 2πrj/q) ζ(1−s, r/q).
///
/// Used for Re(s) < −1/2, where direct Euler–Maclaurin summation cancels badly
/// while the reflected values sit in the half-plane where it is most accurate.
fn hurwitz_reflected(s: Complex64, j: u64, q: u64, reflected: &[Complex64]) -> Result<Complex64> {
    let qf = q as f64;
    let prefactor = 2.0 * super::gamma::gamma(1.0 - s)? * real_pow_neg(2.0 * PI * qf, 1.0 - s);
    let mut acc = Complex64::new(0.0, 0.0);
    for (idx, z) in reflected.iter().enumerate() {
        let r = idx as u64 + 1;
        // reduce r·j mod q before scaling so the angle stays exact
        let angle = 2.0 * PI * ((r * j) % q) as f64 / qf;
        acc += (PI * s / 2.0 + angle).sin() * z;
    }
    Ok(prefactor * acc)
}

/// ζ(1−s, r/q) for r = 1..q, the inputs of [`hurwitz_reflected`].
fn reflected_values(s: Complex64, q: u64) -> Result<Vec<Complex64>> {
    (1..=q).map(|r| hurwitz_zeta(1.0 - s, r as f64 / q as f64)).collect()
}

/// ζ(s, j/q) at a rational argument, switching to Hurwitz's formula for
/// non-integral s with Re(s) < −1/2.
pub fn hurwitz_zeta_rational(s: Complex64, j: u64, q: u64) -> Result<Complex64> {
    if j == 0 || j > q {
        return Err(Error::Domain(format!("need 1 ≤ j ≤ q, got j = {j}, q = {q}")));
    }
    if use_reflection(s) {
        return hurwitz_reflected(s, j, q, &reflected_values(s, q)?);
    }
    hurwitz_zeta(s, j as f64 / q as f64)
}

fn use_reflection(s: Complex64) -> bool {
    s.re < -0.5 && non_integer(s)
}

/// Riemann zeta ζ(s) = ζ(s, 1).
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

/// ζ(x) for real x ≠ 1.
pub fn zeta_real(x: f64) -> Result<f64> {
    Ok(riemann_zeta(Complex64::new(x, 0.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::{gamma, EULER_GAMMA};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_two_against_brute_force() {
        // partial sum plus the integral tail 1/N − 1/(2N²) + 1/(6N³)
        let n = 100_000;
        let mut s = 0.0;
        for k in (1..=n).rev() {
            s += 1.0 / (k as f64 * k as f64);
        }
        let nf = n as f64;
        let brute = s + 1.0 / nf - 0.5 / (nf * nf) + 1.0 / (6.0 * nf * nf * nf);
        assert!((zeta_real(2.0).unwrap() - brute).abs() < 1e-13);
        assert!((zeta_real(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn hurwitz_known_values() {
        let half = hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap();
        assert!((half.re - PI * PI / 2.0).abs() < 1e-13);
        // ζ(0, a) = 1/2 − a
        for a in [0.1, 0.5, 0.77, 1.0] {
            assert!((hurwitz_zeta(c(0.0, 0.0), a).unwrap() - c(0.5 - a, 0.0)).norm() < 1e-14);
        }
        assert!((zeta_real(0.0).unwrap() + 0.5).abs() < 1e-14);
        assert!((zeta_real(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-15);
        assert!((zeta_real(-3.0).unwrap() - 1.0 / 120.0).abs() < 1e-15);
    }

    #[test]
    fn regular_part_at_one_is_minus_digamma() {
        // lim_{s→1} ζ(s,a) − 1/(s−1) = −ψ(a); ψ(1) = −γ
        let r = hurwitz_regular(c(1.0, 0.0), 1.0).unwrap();
        assert!((r.re - EULER_GAMMA).abs() < 1e-14 && r.im.abs() < 1e-16);
    }

    #[test]
    fn pole() {
        assert!(matches!(riemann_zeta(c(1.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn head_doubling_is_stable() {
        for s in [c(2.5, 0.0), c(0.5, 14.134725), c(-1.5, 3.0), c(9.0, -20.0), c(-0.3, 0.1)] {
            for a in [0.2, 1.0] {
                let m = default_head(s);
                let v1 = hurwitz_zeta_with_head(s, a, m).unwrap();
                let v2 = hurwitz_zeta_with_head(s, a, 2 * m).unwrap();
                assert!((v1 - v2).norm() < 1e-12, "s={s} a={a}: {}", (v1 - v2).norm());
            }
        }
    }

    #[test]
    fn rational_arguments_agree_across_routes() {
        for s in [c(-3.3, 0.0), c(-0.75, 2.0), c(-6.1, 0.0)] {
            for (j, q) in [(1, 7), (3, 7), (7, 7), (2, 5)] {
                let refl = hurwitz_zeta_rational(s, j, q).unwrap();
                let em = hurwitz_zeta(s, j as f64 / q as f64).unwrap();
                let tol = 1e-15 * (default_head(s) as f64 + 1.0).powf(1.0 - s.re) * 10.0;
                assert!((refl - em).norm() < tol.max(1e-13), "s={s} j={j} q={q}");
            }
        }
        // ζ(−3.3, 1/7) from an independent high-precision evaluation
        let v = hurwitz_zeta_rational(c(-3.3, 0.0), 1, 7).unwrap();
        assert!((v.re - 0.005_988_602_095_051_630).abs() < 1e-15);
    }

    #[test]
    fn far_left_of_the_strip() {
        // reference values from an independent 30-digit evaluation
        let v = hurwitz_zeta(c(-8.5, 3.0), 0.3).unwrap();
        assert!((v - c(0.167_883_977_631_279_67, -0.130_780_454_019_737_32)).norm() < 1e-12);
        let v = hurwitz_zeta(c(-10.0, -20.0), 0.77).unwrap();
        let exact = c(-42_402.151_896_317_155, -294_459.353_209_016_9);
        assert!((v - exact).norm() < 1e-12 * exact.norm());
    }

    #[test]
    fn first_zero() {
        let z = riemann_zeta(c(0.5, 14.134_725_141_734_693)).unwrap();
        assert!(z.norm() < 1e-12);
    }

    #[test]
    fn functional_equation_grid() {
        for re in [-3.0, -1.5, -0.25, 0.3, 0.7, 1.5, 2.5, 3.75] {
            for im in [0.0, 1.0, 7.5] {
                let s = c(re, im);
                if im == 0.0 && (re == 0.0 || re == 1.0) {
                    continue;
                }
                let lhs = riemann_zeta(s).unwrap();
                let rhs = Complex64::new(2.0, 0.0).powc(s)
                    * Complex64::new(PI, 0.0).powc(s - 1.0)
                    * (PI * s / 2.0).sin()
                    * gamma(1.0 - s).unwrap()
                    * riemann_zeta(1.0 - s).unwrap();
                assert!((lhs - rhs).norm() < 1e-10, "s={s}");
            }
        }
    }
}
