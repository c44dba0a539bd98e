//! Voronoi summation: a finite sum of a divisor function against a test
//! function on (α, β) equals an L-value main term plus a dual Bessel series.

use super::{re, IdentityCase, Resolved, Sides, TheoremId, I};
use crate::arith::{divisor_sum_table, DivisorSumSpec};
use crate::characters::{character, gauss_sum, Character};
use crate::error::Result;
use crate::series::{adaptive_integral, voronoi_dual_sum, DualProblem, KernelVariant, QuadratureSpec};
use crate::specfun::l_real;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Everything that distinguishes one Voronoi formula from another.
struct Shape {
    pref: Complex64,
    lhs: Lhs,
    divide_by_j: bool,
    dual: DivisorSumSpec,
    modulus: f64,
    sign: Complex64,
    variant: KernelVariant,
    power: f64,
    /// L(1 ∓ ν, χ) and the power of t in the main-term integral
    main: Option<(f64, f64)>,
}

enum Lhs {
    Spec(DivisorSumSpec),
    /// χ(j)σ_{−ν}(j) from the untwisted divisor function
    TwistedBy(DivisorSumSpec, Character),
}

fn shape(id: TheoremId, r: &Resolved) -> Result<Shape> {
    use TheoremId::*;
    let nu = r.nu;
    let one = Complex64::new(1.0, 0.0);
    match id {
        T4_1 | T4_2 | T4_3 | T4_4 => {
            let chi = r.chi();
            let cb = chi.conjugate();
            let q = chi.modulus() as f64;
            let t = gauss_sum(chi);
            let bar = matches!(id, T4_1 | T4_3);
            let divide_by_j = id == T4_3;
            let (pref, lhs, dual, main) = if bar {
                (
                    re(q.powf(1.0 - nu / 2.0)) / t,
                    DivisorSumSpec::bar_twisted(-nu, chi),
                    DivisorSumSpec::twisted(-nu, &cb),
                    (1.0 - nu, if divide_by_j { -nu - 1.0 } else { -nu }),
                )
            } else {
                (
                    re(q.powf(1.0 + nu / 2.0)) / t,
                    DivisorSumSpec::twisted(-nu, chi),
                    DivisorSumSpec::bar_twisted(-nu, &cb),
                    (1.0 + nu, 0.0),
                )
            };
            let (sign, variant, power) = match id {
                T4_1 | T4_2 => (one, KernelVariant::EvenCos, -nu / 2.0),
                T4_3 => (-I, KernelVariant::OddSin, -nu / 2.0 - 1.0),
                _ => (I, KernelVariant::OddSinP, -nu / 2.0),
            };
            Ok(Shape {
                pref,
                lhs: Lhs::Spec(lhs),
                divide_by_j,
                dual,
                modulus: q,
                sign,
                variant,
                power,
                main: Some(main),
            })
        }
        T4_5 | T4_6 | T4_7 | T4_8 => {
            let (c1, c2) = (r.chi(), r.chi2());
            let (p, q) = (c1.modulus() as f64, c2.modulus() as f64);
            let (sign, variant, power, divide_by_j) = match id {
                T4_5 => (one, KernelVariant::EvenCos, -nu / 2.0, false),
                T4_6 => (-one, KernelVariant::OddCosP, -nu / 2.0 - 1.0, true),
                T4_7 => (I, KernelVariant::OddSinP, -nu / 2.0, false),
                _ => (-I, KernelVariant::OddSin, -nu / 2.0 - 1.0, true),
            };
            Ok(Shape {
                pref: re(p.powf(1.0 - nu / 2.0) * q.powf(1.0 + nu / 2.0)) / (gauss_sum(c1) * gauss_sum(c2)),
                lhs: Lhs::Spec(DivisorSumSpec::two_char(-nu, c2, c1)),
                divide_by_j,
                dual: DivisorSumSpec::two_char(-nu, &c1.conjugate(), &c2.conjugate()),
                modulus: p * q,
                sign,
                variant,
                power,
                main: None,
            })
        }
        C4_1 | C4_2 => {
            let chi = r.chi();
            let q = chi.modulus() as f64;
            let t = gauss_sum(chi);
            let cb = chi.conjugate();
            let (sign, variant, power, divide_by_j) = if id == C4_1 {
                (one, KernelVariant::EvenCos, -nu / 2.0, false)
            } else {
                (-one, KernelVariant::OddCosP, -nu / 2.0 - 1.0, true)
            };
            Ok(Shape {
                pref: re(q * q) / (t * t),
                lhs: Lhs::TwistedBy(DivisorSumSpec::twisted(-nu, &character(1, 0)?), chi.clone()),
                divide_by_j,
                dual: DivisorSumSpec::two_char(-nu, &cb, &cb),
                modulus: q * q,
                sign,
                variant,
                power,
                main: None,
            })
        }
        _ => unreachable!("{id} is not a Voronoi identity"),
    }
}

fn finite_sum(s: &Shape, r: &Resolved) -> (Complex64, usize) {
    let (lo, hi) = (r.alpha.ceil() as usize, r.beta.floor() as usize);
    if hi < lo {
        return (Complex64::new(0.0, 0.0), 0);
    }
    let (spec, twist) = match &s.lhs {
        Lhs::Spec(spec) => (spec, None),
        Lhs::TwistedBy(spec, chi) => (spec, Some(chi)),
    };
    let table = divisor_sum_table(spec, hi);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in lo..=hi {
        let mut v = table[j] * r.f.eval(j as f64);
        if let Some(chi) = twist {
            v *= chi.value_u(j as u64);
        }
        if s.divide_by_j {
            v /= j as f64;
        }
        sum += v;
    }
    (s.pref * sum, hi + 1 - lo)
}

/// The finite side pref·Σ_{α<j<β} f(j)g(j)[/j] of a Voronoi identity.
pub fn finite_side(case: &IdentityCase) -> Result<Complex64> {
    let r = case.resolve()?;
    let s = shape(case.theorem, &r)?;
    Ok(finite_sum(&s, &r).0)
}

pub(super) fn evaluate(id: TheoremId, r: &Resolved) -> Result<Sides> {
    let s = shape(id, r)?;
    let (lhs, lhs_terms) = finite_sum(&s, r);
    let main = match s.main {
        Some((l_at, ep)) => {
            let g = r.f;
            let integral = adaptive_integral(|t| g.eval(t) * t.powf(ep), r.alpha, r.beta, &QuadratureSpec::default())?;
            s.pref * l_real(l_at, r.chi())? * integral
        }
        None => Complex64::new(0.0, 0.0),
    };
    let problem = DualProblem {
        coeffs: &s.dual,
        nu: r.nu,
        g: r.f,
        alpha: r.alpha,
        beta: r.beta,
        modulus: s.modulus,
        variant: s.variant,
        power: s.power,
    };
    let dual = voronoi_dual_sum(&problem, r.smoothing)?;
    Ok(Sides { lhs, rhs: main + 2.0 * PI * s.sign * dual.value, lhs_terms, rhs_terms: dual.terms })
}
