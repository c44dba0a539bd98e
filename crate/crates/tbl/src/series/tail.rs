//! Tails Σ_{n≥N₀} f(n) n^{−s} of the divisor-sum Dirichlet series, computed
//! without subtracting the head from the full generating function.
//!
//! Writing f = A ∗ B with A(d) = d^z χ_A(d) and B(e) = χ_B(e), the hyperbola
//! split gives
//!
//! Σ_{de≥N₀} A(d)B(e)(de)^{−s}
//!   = Σ_{e<N₀} B(e)e^{−s} Σ_{d≥⌈N₀/e⌉} χ_A(d) d^{z−s} + L(s−z, χ_A) Σ_{e≥N₀} χ_B(e)e^{−s},
//!
//! and every character tail Σ_{d≥D} χ(d)d^{−w} is a combination of Hurwitz
//! zetas at large shifts. The result has small *relative* error even when the
//! tail is many orders below the full series, which the head-subtraction route
//! cannot offer in double precision.

use crate::arith::DivisorSumSpec;
use crate::characters::Character;
use crate::error::{Error, Result};
use crate::specfun::{hurwitz_zeta, l_value};
use crate::specfun::zeta::real_pow_neg;
use num_complex::Complex64;

/// Σ_{d≥D} χ(d) d^{−w} for Re(w) > 1 (χ = None means the constant 1).
pub fn character_tail(chi: Option<&Character>, w: Complex64, d0: u64) -> Result<Complex64> {
    if w.re <= 1.0 {
        return Err(Error::Divergence(format!("character tail needs Re(w) > 1, got w = {w}")));
    }
    let d0 = d0.max(1);
    let Some(chi) = chi.filter(|c| c.modulus() > 1) else {
        return hurwitz_zeta(w, d0 as f64);
    };
    let q = chi.modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 1..=q {
        let v = chi.value_u(r);
        if v.norm() == 0.0 {
            continue;
        }
        // first d ≡ r (mod q) with d ≥ D is j q + r, j = ⌈(D − r)/q⌉ ≥ 0
        let j = if d0 > r { (d0 - r).div_ceil(q) } else { 0 };
        acc += v * hurwitz_zeta(w, j as f64 + r as f64 / q as f64)?;
    }
    Ok(real_pow_neg(q as f64, w) * acc)
}

/// Tail evaluator for one divisor sum and one cut point N₀.
pub struct DirichletTail<'a> {
    spec: &'a DivisorSumSpec,
    n0: u64,
    b: Vec<Complex64>,
}

impl<'a> DirichletTail<'a> {
    pub fn new(spec: &'a DivisorSumSpec, n0: u64) -> Self {
        let n0 = n0.max(1);
        let b = (0..n0)
            .map(|e| match spec.chi_large() {
                Some(c) => c.value_u(e),
                None => Complex64::new(1.0, 0.0),
            })
            .collect();
        Self { spec, n0, b }
    }

    pub fn cut(&self) -> u64 {
        self.n0
    }

    /// Σ_{n≥N₀} f(n) n^{−s}.
    pub fn tail(&self, s: Complex64) -> Result<Complex64> {
        let z = self.spec.weight();
        let chi_a = self.spec.chi_small();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut e = 1;
        while e < self.n0 {
            let d0 = self.n0.div_ceil(e);
            // all e sharing the same ⌈N₀/e⌉ reuse one character tail
            let mut e_hi = e;
            while e_hi + 1 < self.n0 && self.n0.div_ceil(e_hi + 1) == d0 {
                e_hi += 1;
            }
            let mut weights = Complex64::new(0.0, 0.0);
            for ee in e..=e_hi {
                let v = self.b[ee as usize];
                if v.norm() > 0.0 {
                    weights += v * real_pow_neg(ee as f64, s);
                }
            }
            if weights.norm() > 0.0 {
                acc += weights * character_tail(chi_a, s - z, d0)?;
            }
            e = e_hi + 1;
        }
        let trivial = crate::characters::character(1, 0)?;
        let full_a = l_value(s - z, chi_a.unwrap_or(&trivial))?;
        acc += full_a * character_tail(self.spec.chi_large(), s, self.n0)?;
        Ok(acc)
    }

    /// Σ_{n≥N₀} f(n) ln(n) n^{−s} = −d/ds of the tail, by Richardson-extrapolated
    /// central differences.
    pub fn log_tail(&self, s: Complex64) -> Result<Complex64> {
        const LEVELS: usize = 4;
        let h0 = 0.125;
        let mut table = [[Complex64::new(0.0, 0.0); LEVELS]; LEVELS];
        for j in 0..LEVELS {
            let h = h0 / (1u32 << j) as f64;
            let d = (self.tail(s + h)? - self.tail(s - h)?) / (2.0 * h);
            table[j][0] = -d;
            let mut factor = 1.0;
            for m in 1..=j {
                factor *= 4.0;
                table[j][m] = table[j][m - 1] + (table[j][m - 1] - table[j - 1][m - 1]) / (factor - 1.0);
            }
        }
        Ok(table[LEVELS - 1][LEVELS - 1])
    }
}
