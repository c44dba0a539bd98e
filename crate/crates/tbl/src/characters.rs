//! Dirichlet characters modulo q with exact root-of-unity values.
//!
//! A character is stored as a table of integer numerators `k(n)` over a common
//! denominator `D` (the exponent of the unit group), so that
//! `χ(n) = exp(2πi k(n)/D)`. Multiplication and conjugation act on the
//! numerators exactly; floating point only enters at evaluation.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// κ in the functional equation: 0 for even, 1 for odd.
    pub fn kappa(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    modulus: u64,
    index: usize,
    denom: u64,
    // numerator of the exponent for each residue; None when gcd(n, q) > 1
    table: Vec<Option<u64>>,
    conductor: u64,
    parity: Parity,
}

/// One cyclic factor of (Z/qZ)*: generator `g` of order `order` modulo the
/// prime power `pk`.
#[derive(Debug, Clone)]
struct CyclicFactor {
    pk: u64,
    generator: u64,
    order: u64,
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Smallest primitive root modulo an odd prime power p^e.
fn primitive_root(p: u64, e: u32) -> u64 {
    let pk = p.pow(e);
    let phi = pk / p * (p - 1);
    let prime_factors: Vec<u64> = factorize(phi).into_iter().map(|(r, _)| r).collect();
    (2..pk)
        .find(|&g| gcd(g, p) == 1 && prime_factors.iter().all(|&r| pow_mod(g, phi / r, pk) != 1))
        .expect("odd prime powers have primitive roots")
}

fn cyclic_factors(q: u64) -> Vec<CyclicFactor> {
    let mut out = Vec::new();
    for (p, e) in factorize(q) {
        let pk = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => out.push(CyclicFactor { pk, generator: 3, order: 2 }),
                _ => {
                    out.push(CyclicFactor { pk, generator: pk - 1, order: 2 });
                    out.push(CyclicFactor { pk, generator: 5, order: pk / 4 });
                }
            }
        } else {
            out.push(CyclicFactor { pk, generator: primitive_root(p, e), order: pk / p * (p - 1) });
        }
    }
    out
}

/// Discrete-log exponent vectors of every unit modulo q with respect to the
/// generator list; `None` for non-units.
fn exponent_vectors(q: u64, factors: &[CyclicFactor]) -> Vec<Option<Vec<u64>>> {
    // for 2^k with k >= 3 the two factors share the same prime power; every
    // unit is ±5^j there, so both logs are resolved together.
    let mut logs: Vec<Vec<Option<u64>>> = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let f = &factors[i];
        if f.pk % 2 == 0 && f.pk >= 8 {
            let pk = f.pk;
            let mut minus = vec![None; pk as usize];
            let mut five = vec![None; pk as usize];
            let mut x = 1u64;
            for j in 0..pk / 4 {
                minus[x as usize] = Some(0);
                five[x as usize] = Some(j);
                let y = pk - x;
                minus[y as usize] = Some(1);
                five[y as usize] = Some(j);
                x = mul_mod(x, 5, pk);
            }
            logs.push(minus);
            logs.push(five);
            i += 2;
        } else {
            let mut table = vec![None; f.pk as usize];
            let mut x = 1u64;
            for j in 0..f.order {
                table[x as usize] = Some(j);
                x = mul_mod(x, f.generator, f.pk);
            }
            logs.push(table);
            i += 1;
        }
    }
    (0..q)
        .map(|n| {
            if gcd(n, q) != 1 {
                return None;
            }
            Some(
                factors
                    .iter()
                    .zip(&logs)
                    .map(|(f, t)| t[(n % f.pk) as usize].expect("unit has a discrete log"))
                    .collect(),
            )
        })
        .collect()
}

/// All characters modulo q in deterministic order: lexicographic in the
/// generator-exponent tuple, with generators ordered by ascending prime and,
/// for 2^k (k ≥ 3), the pair (−1, 5). Index 0 is the principal character.
pub fn enumerate_characters(q: u64) -> Result<Vec<Character>> {
    if q == 0 {
        return Err(Error::InvalidModulus(q));
    }
    let factors = cyclic_factors(q);
    let denom = factors.iter().fold(1, |d, f| lcm(d, f.order));
    let vectors = exponent_vectors(q, &factors);
    let orders: Vec<u64> = factors.iter().map(|f| f.order).collect();
    let count: u64 = orders.iter().product();

    let mut chars = Vec::with_capacity(count as usize);
    for idx in 0..count {
        // mixed-radix digits, most significant first
        let mut t = vec![0u64; orders.len()];
        let mut rem = idx;
        for (slot, &o) in t.iter_mut().zip(&orders).rev() {
            *slot = rem % o;
            rem /= o;
        }
        let table: Vec<Option<u64>> = vectors
            .iter()
            .map(|v| {
                v.as_ref().map(|e| {
                    e.iter()
                        .zip(&t)
                        .zip(&orders)
                        .map(|((&ei, &ti), &oi)| ei * ti % oi * (denom / oi))
                        .sum::<u64>()
                        % denom
                })
            })
            .collect();
        chars.push(Character::from_table(q, idx as usize, denom, table));
    }
    Ok(chars)
}

/// Character of modulus q at the given enumeration index.
pub fn character(q: u64, index: usize) -> Result<Character> {
    let all = enumerate_characters(q)?;
    let n = all.len();
    all.into_iter()
        .nth(index)
        .ok_or_else(|| Error::Domain(format!("character index {index} out of range for q={q} ({n} characters)")))
}

impl Character {
    fn from_table(modulus: u64, index: usize, denom: u64, table: Vec<Option<u64>>) -> Self {
        let minus_one = table[(modulus - 1) as usize];
        let parity = match minus_one {
            Some(k) if k != 0 => Parity::Odd,
            _ => Parity::Even,
        };
        let mut c = Character { modulus, index, denom, table, conductor: modulus, parity };
        c.conductor = c.compute_conductor();
        c
    }

    fn compute_conductor(&self) -> u64 {
        let q = self.modulus;
        let mut divisors: Vec<u64> = (1..=q).filter(|f| q % f == 0).collect();
        divisors.sort_unstable();
        for f in divisors {
            // χ is induced from modulus f iff it is trivial on units ≡ 1 (mod f)
            let trivial = (1..q)
                .step_by(f as usize)
                .filter(|&n| gcd(n, q) == 1)
                .all(|n| self.table[n as usize] == Some(0));
            if trivial {
                return f;
            }
        }
        q
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Position in `enumerate_characters(modulus)`; conjugates keep the index of
    /// the character they were derived from only if they coincide with it.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_principal(&self) -> bool {
        self.table.iter().all(|k| matches!(k, None | Some(0)))
    }

    /// Real characters take only the values 0 and ±1.
    pub fn is_real(&self) -> bool {
        self.table
            .iter()
            .all(|k| matches!(k, None | Some(0)) || *k == Some(self.denom / 2) && self.denom % 2 == 0)
    }

    /// Multiplicative order of χ.
    pub fn order(&self) -> u64 {
        let g = self.table.iter().flatten().fold(self.denom, |g, &k| gcd(g, k));
        self.denom / g
    }

    /// Exact exponent of χ(n) as a reduced fraction (num, den) in [0, 1), or
    /// None when gcd(n, q) > 1.
    pub fn exponent(&self, n: i64) -> Option<(u64, u64)> {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        self.table[r].map(|k| {
            let g = gcd(k, self.denom);
            (k / g, self.denom / g)
        })
    }

    /// χ(n).
    pub fn value(&self, n: i64) -> Complex64 {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        match self.table[r] {
            None => Complex64::new(0.0, 0.0),
            Some(k) => root_of_unity(k, self.denom),
        }
    }

    /// χ(n) for a non-negative argument, avoiding the signed reduction.
    pub fn value_u(&self, n: u64) -> Complex64 {
        match self.table[(n % self.modulus) as usize] {
            None => Complex64::new(0.0, 0.0),
            Some(k) => root_of_unity(k, self.denom),
        }
    }

    /// Value table χ(0), …, χ(q−1).
    pub fn values(&self) -> Vec<Complex64> {
        (0..self.modulus).map(|n| self.value_u(n)).collect()
    }

    /// Complex conjugate character χ̄.
    pub fn conjugate(&self) -> Character {
        let table = self
            .table
            .iter()
            .map(|k| k.map(|k| (self.denom - k) % self.denom))
            .collect();
        let mut c = Character { table, ..self.clone() };
        if c.table != self.table {
            c.index = conjugate_index(self);
        }
        c
    }

    /// Short label, e.g. `χ5[2]`.
    pub fn label(&self) -> String {
        format!("chi{}[{}]", self.modulus, self.index)
    }
}

fn conjugate_index(c: &Character) -> usize {
    let conj: Vec<Option<u64>> = c.table.iter().map(|k| k.map(|k| (c.denom - k) % c.denom)).collect();
    enumerate_characters(c.modulus)
        .expect("modulus already validated")
        .iter()
        .position(|d| d.table == conj)
        .expect("conjugate is a character of the same modulus")
}

/// exp(2πi k/d), exact at the quarter points.
fn root_of_unity(k: u64, d: u64) -> Complex64 {
    let k = k % d;
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k == d {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == d {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * k == 3 * d {
        return Complex64::new(0.0, -1.0);
    }
    let theta = 2.0 * PI * k as f64 / d as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// Gauss sum τ(χ) = Σ_{h=1}^{q} χ(h) e^{2πih/q}.
pub fn gauss_sum(chi: &Character) -> Complex64 {
    let q = chi.modulus;
    let d = chi.denom;
    // combine the two exponents over the common denominator lcm(d, q)
    let l = lcm(d, q);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for h in 1..=q {
        if let Some(k) = chi.table[(h % q) as usize] {
            let num = (k * (l / d) + h * (l / q)) % l;
            // Kahan summation keeps the 1e-13 target for the larger moduli
            let y = root_of_unity(num, l) - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
    }
    acc
}

/// Primitive characters of modulus q matching an optional parity, in
/// enumeration order.
pub fn primitive_characters(q: u64, parity: Option<Parity>) -> Result<Vec<Character>> {
    Ok(enumerate_characters(q)?
        .into_iter()
        .filter(|c| c.is_primitive() && parity.map_or(true, |p| c.parity() == p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn counts_match_totient() {
        for q in 1..=60 {
            assert_eq!(enumerate_characters(q).unwrap().len() as u64, totient(q), "q={q}");
        }
        assert_eq!(enumerate_characters(0), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn mod_four_and_five() {
        let c4 = enumerate_characters(4).unwrap();
        assert_eq!(c4.len(), 2);
        assert!(c4[0].is_principal());
        assert_eq!(c4[1].value(3), Complex64::new(-1.0, 0.0));
        assert_eq!(c4[1].parity(), Parity::Odd);

        let c5 = enumerate_characters(5).unwrap();
        let real: Vec<_> = c5.iter().filter(|c| c.is_real() && !c.is_principal()).collect();
        assert_eq!(real.len(), 1);
        assert_eq!(real[0].parity(), Parity::Even);
        assert_eq!(real[0].index(), 2);
        assert_eq!(c5[0].value(7), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn trivial_modulus_one() {
        let c = enumerate_characters(1).unwrap();
        assert_eq!(c.len(), 1);
        for n in -3..10 {
            assert_eq!(c[0].value(n), Complex64::new(1.0, 0.0));
        }
        assert!(close(gauss_sum(&c[0]), Complex64::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn zero_off_units_and_periodic() {
        for q in [6, 8, 12, 15] {
            for c in enumerate_characters(q).unwrap() {
                assert_eq!(c.value(q as i64), Complex64::new(0.0, 0.0));
                for n in -20..40i64 {
                    assert_eq!(c.value(n), c.value(n + q as i64));
                    let unit = gcd(n.rem_euclid(q as i64) as u64, q) == 1;
                    assert_eq!(c.value(n).norm() > 0.5, unit);
                }
            }
        }
    }

    #[test]
    fn conductors() {
        let c6 = enumerate_characters(6).unwrap();
        assert_eq!(c6[0].conductor(), 1);
        assert!(!c6[0].is_primitive());
        let c3 = enumerate_characters(3).unwrap();
        assert_eq!(c3[1].conductor(), 3);
        assert!(c3[1].is_primitive());
        // the mod-8 character agreeing with the odd mod-4 character on odd residues
        let chi4 = &enumerate_characters(4).unwrap()[1];
        let induced = enumerate_characters(8)
            .unwrap()
            .into_iter()
            .find(|c| (1..8).step_by(2).all(|n| c.value(n) == chi4.value(n)))
            .unwrap();
        assert_eq!(induced.conductor(), 4);
        assert!(!induced.is_primitive());
    }

    #[test]
    fn gauss_sum_examples() {
        let chi4 = &enumerate_characters(4).unwrap()[1];
        assert!(close(gauss_sum(chi4), Complex64::new(0.0, 2.0), 1e-13));
        let chi5 = &enumerate_characters(5).unwrap()[2];
        assert!(close(gauss_sum(chi5), Complex64::new(5f64.sqrt(), 0.0), 1e-13));
    }

    #[test]
    fn conjugation_roundtrip() {
        for c in enumerate_characters(13).unwrap() {
            let cc = c.conjugate().conjugate();
            assert_eq!(cc, c);
            for n in 0..13 {
                assert!(close(c.conjugate().value(n), c.value(n).conj(), 1e-15));
            }
        }
    }

    #[test]
    fn exponent_is_reduced() {
        let c = &enumerate_characters(7).unwrap()[2];
        for n in 1..7 {
            let (a, b) = c.exponent(n).unwrap();
            assert_eq!(gcd(a, b), if a == 0 { b } else { 1 });
        }
        assert_eq!(c.exponent(7), None);
    }
}
