//! Gamma function on the complex plane (Lanczos, g = 607/128) and the digamma
//! function on the positive reals.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

const LANCZOS_G: f64 = 607.0 / 128.0;

// Godfrey's coefficients for g = 607/128, n = 15.
const LANCZOS_C: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_8;

fn is_pole(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

/// ln Γ(s) for Re(s) ≥ 1/2 (principal branch of the Lanczos form).
fn ln_gamma_right(s: Complex64) -> Complex64 {
    let z = s - 1.0;
    let mut x = Complex64::new(LANCZOS_C[0], 0.0);
    for (i, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// Γ(s) for complex s.
///
/// Uses reflection for Re(s) < 1/2. Fails at the poles s = 0, −1, −2, …
pub fn gamma(s: Complex64) -> Result<Complex64> {
    if is_pole(s) {
        return Err(Error::Pole(format!("gamma at s = {}", s.re)));
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("gamma at non-finite s = {s}")));
    }
    if s.im == 0.0 && s.re > 0.0 && s.re <= 171.0 && s.re == s.re.round() {
        return Ok(Complex64::new(factorial(s.re as u32 - 1), 0.0));
    }
    if s.re < 0.5 {
        let sin = (PI * s).sin();
        return Ok(PI / (sin * ln_gamma_right(1.0 - s).exp()));
    }
    Ok(ln_gamma_right(s).exp())
}

/// Γ(x) for real x.
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(Complex64::new(x, 0.0))?.re)
}

/// ln Γ(x) for real x > 0.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x keeps the Lanczos sum in its home half-plane
        return Ok(ln_gamma_right(Complex64::new(x + 1.0, 0.0)).re - x.ln());
    }
    Ok(ln_gamma_right(Complex64::new(x, 0.0)).re)
}

/// n! as a double; exact through 22!.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Digamma ψ(x) for real x > 0: upward recurrence to x ≥ 10, then the
/// asymptotic expansion.
pub fn digamma(mut x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("digamma needs x > 0, got {x}")));
    }
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let r = 1.0 / (x * x);
    // Σ B_{2k}/(2k x^{2k}) for k = 1..7
    let series = r
        * (1.0 / 12.0
            - r * (1.0 / 120.0
                - r * (1.0 / 252.0
                    - r * (1.0 / 240.0 - r * (1.0 / 132.0 - r * (691.0 / 32760.0 - r / 12.0))))));
    Ok(acc + x.ln() - 0.5 / x - series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn special_values() {
        let half = gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma(c(5.0, 0.0)).unwrap().re, 24.0);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert!((gamma_real(1.5).unwrap() - 0.5 * PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn poles() {
        for s in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma(c(s, 0.0)), Err(Error::Pole(_))));
        }
    }

    #[test]
    fn recurrence_off_axis() {
        for s in [c(0.3, 0.7), c(-2.4, 3.1), c(7.5, -12.0), c(0.01, 0.0), c(20.2, 25.0)] {
            let g = gamma(s).unwrap();
            let g1 = gamma(s + 1.0).unwrap();
            assert!(((g1 / s - g) / g).norm() < 1e-13, "s={s}");
        }
    }

    #[test]
    fn reflection_identity() {
        for s in [c(0.3, 0.7), c(0.25, 0.0), c(-3.7, 1.0)] {
            let lhs = gamma(s).unwrap() * gamma(1.0 - s).unwrap();
            let rhs = PI / (PI * s).sin();
            assert!(((lhs - rhs) / rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn large_argument_against_stirling() {
        let x: f64 = 45.5;
        let stirling = (x - 0.5) * x.ln() - x + LN_SQRT_2PI + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x.powi(3))
            + 1.0 / (1260.0 * x.powi(5));
        assert!((ln_gamma_real(x).unwrap() - stirling).abs() < 1e-12);
        let g = gamma(c(40.5, 0.0)).unwrap().re;
        assert!((g.ln() - ln_gamma_real(40.5).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(0.5).unwrap() + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
        // ψ(1/4) = −γ − π/2 − 3 ln 2
        let v = -EULER_GAMMA - PI / 2.0 - 3.0 * 2f64.ln();
        assert!((digamma(0.25).unwrap() - v).abs() < 1e-14);
    }
}
