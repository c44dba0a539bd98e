//! Bernoulli numbers, Bernoulli polynomials and generalized Bernoulli numbers
//! B_{n,χ}.

use crate::characters::Character;
use num_complex::Complex64;
use std::f64::consts::PI;

const SMALL_EVEN: [(f64, f64); 10] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
];

/// B_n for n ≥ 0 (with B_1 = −1/2).
///
/// Beyond B_20, even indices come from B_{2k} = (−1)^{k+1} 2 (2k)! ζ(2k)/(2π)^{2k},
/// which is exact to rounding in double precision, unlike the usual recurrences.
pub fn bernoulli_number(n: u32) -> f64 {
    match n {
        0 => 1.0,
        1 => -0.5,
        n if n % 2 == 1 => 0.0,
        n if n <= 20 => {
            let (a, b) = SMALL_EVEN[(n / 2 - 1) as usize];
            a / b
        }
        n => {
            let k = n / 2;
            let mut zeta = 0.0;
            // ζ(2k) converges fast; summing backwards keeps the small terms
            let terms = (1e17f64.powf(1.0 / n as f64)).ceil() as u32 + 1;
            for j in (1..=terms).rev() {
                zeta += (j as f64).powi(-(n as i32));
            }
            let mut mag = 2.0 * zeta;
            for j in 1..=n {
                mag *= j as f64 / (2.0 * PI);
            }
            if k % 2 == 1 {
                mag
            } else {
                -mag
            }
        }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Bernoulli polynomial B_n(x) = Σ_k C(n,k) B_k x^{n−k}.
pub fn bernoulli_polynomial(n: u32, x: f64) -> f64 {
    // Horner in x over the coefficients C(n,k) B_k, highest power first
    let mut acc = 0.0;
    for k in 0..=n {
        acc = acc * x + binomial(n, k) * bernoulli_number(k);
    }
    acc
}

/// Generalized Bernoulli number B_{n,χ} = q^{n−1} Σ_{a=1}^{q} χ(a) B_n(a/q).
pub fn generalized_bernoulli(n: u32, chi: &Character) -> Complex64 {
    let q = chi.modulus();
    let scale = (q as f64).powi(n as i32 - 1);
    let sum: Complex64 = (1..=q)
        .map(|a| chi.value_u(a) * bernoulli_polynomial(n, a as f64 / q as f64))
        .sum();
    sum * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;

    #[test]
    fn numbers() {
        let exact = [
            (2, 1.0 / 6.0),
            (4, -1.0 / 30.0),
            (6, 1.0 / 42.0),
            (8, -1.0 / 30.0),
            (10, 5.0 / 66.0),
            (12, -691.0 / 2730.0),
            (14, 7.0 / 6.0),
            (20, -174611.0 / 330.0),
        ];
        for (n, v) in exact {
            assert!((bernoulli_number(n) - v).abs() <= 1e-15 * v.abs(), "B_{n}");
        }
        assert_eq!(bernoulli_number(7), 0.0);
        // past the table the ζ(2k) route takes over
        for (n, v) in [(22, 854513.0 / 138.0), (30, 8615841276005.0 / 14322.0)] {
            assert!((bernoulli_number(n) - v).abs() <= 1e-14 * v.abs(), "B_{n}");
        }
    }

    #[test]
    fn polynomials() {
        assert!((bernoulli_polynomial(1, 0.3) - (0.3 - 0.5)).abs() < 1e-16);
        let x: f64 = 0.7;
        let b2 = x * x - x + 1.0 / 6.0;
        assert!((bernoulli_polynomial(2, x) - b2).abs() < 1e-15);
        // B_n(1 − x) = (−1)^n B_n(x)
        for n in 1..10 {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((bernoulli_polynomial(n, 0.2) - s * bernoulli_polynomial(n, 0.8)).abs() < 1e-13);
        }
    }

    #[test]
    fn generalized_examples() {
        let chi3 = &enumerate_characters(3).unwrap()[1];
        assert!((generalized_bernoulli(1, chi3) - Complex64::new(-1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!(generalized_bernoulli(2, chi3).norm() < 1e-14);
        let chi4 = &enumerate_characters(4).unwrap()[1];
        assert!((generalized_bernoulli(1, chi4) - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
    }
}
