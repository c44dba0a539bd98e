//! Twisted divisor sums σ_{z,χ}, σ̄_{z,χ}, σ_{z,χ₁,χ₂} and their Dirichlet
//! generating functions.

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::specfun::l_value;
use num_complex::Complex64;
use std::sync::OnceLock;

/// Largest n covered by the smallest-prime-factor sieve.
pub const SIEVE_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum DivisorSumKind {
    /// Σ_{d|n} d^z χ(d)
    Twisted,
    /// Σ_{d|n} d^z χ(n/d)
    BarTwisted,
    /// Σ_{d|n} d^z χ₁(d) χ₂(n/d)
    TwoChar,
}

/// Which twisted divisor sum, with its weight and characters.
#[derive(Debug, Clone)]
pub struct DivisorSumSpec {
    kind: DivisorSumKind,
    z: Complex64,
    chi: Character,
    chi2: Option<Character>,
}

impl DivisorSumSpec {
    /// σ_{z,χ}.
    pub fn twisted(z: f64, chi: &Character) -> Self {
        Self { kind: DivisorSumKind::Twisted, z: Complex64::new(z, 0.0), chi: chi.clone(), chi2: None }
    }

    /// σ̄_{z,χ}.
    pub fn bar_twisted(z: f64, chi: &Character) -> Self {
        Self { kind: DivisorSumKind::BarTwisted, z: Complex64::new(z, 0.0), chi: chi.clone(), chi2: None }
    }

    /// σ_{z,χ₁,χ₂}.
    pub fn two_char(z: f64, chi1: &Character, chi2: &Character) -> Self {
        Self { kind: DivisorSumKind::TwoChar, z: Complex64::new(z, 0.0), chi: chi1.clone(), chi2: Some(chi2.clone()) }
    }

    /// Same sum with a complex weight.
    pub fn with_complex_weight(mut self, z: Complex64) -> Self {
        self.z = z;
        self
    }

    pub fn kind(&self) -> DivisorSumKind {
        self.kind
    }

    pub fn weight(&self) -> Complex64 {
        self.z
    }

    /// Character attached to the divisor d (principal mod 1 when none is).
    pub(crate) fn chi_small(&self) -> Option<&Character> {
        match self.kind {
            DivisorSumKind::Twisted | DivisorSumKind::TwoChar => Some(&self.chi),
            DivisorSumKind::BarTwisted => None,
        }
    }

    /// Character attached to the codivisor n/d.
    pub(crate) fn chi_large(&self) -> Option<&Character> {
        match self.kind {
            DivisorSumKind::Twisted => None,
            DivisorSumKind::BarTwisted => Some(&self.chi),
            DivisorSumKind::TwoChar => self.chi2.as_ref(),
        }
    }

    pub(crate) fn power(&self, d: u64) -> Complex64 {
        let z = self.z;
        if z.im == 0.0 {
            let v = if z.re == z.re.round() && z.re.abs() < 64.0 {
                (d as f64).powi(z.re as i32)
            } else {
                (d as f64).powf(z.re)
            };
            Complex64::new(v, 0.0)
        } else {
            (z * (d as f64).ln()).exp()
        }
    }

    fn term(&self, d: u64, n: u64) -> Complex64 {
        let mut v = self.power(d);
        if let Some(c) = self.chi_small() {
            v *= c.value_u(d);
        }
        if let Some(c) = self.chi_large() {
            v *= c.value_u(n / d);
        }
        v
    }

    /// max(Re z, 0), the exponent in |f(n)| ≤ d(n) n^{max(Re z,0)}.
    pub fn growth_exponent(&self) -> f64 {
        self.z.re.max(0.0)
    }

    /// The generating function Σ f(n) n^{−s}: ζ(s)L(s−z,χ), ζ(s−z)L(s,χ) or
    /// L(s−z,χ₁)L(s,χ₂), each factor continued analytically.
    pub fn generating_function(&self, s: Complex64) -> Result<Complex64> {
        let trivial = crate::characters::character(1, 0)?;
        let small = self.chi_small().unwrap_or(&trivial);
        let large = self.chi_large().unwrap_or(&trivial);
        Ok(l_value(s - self.z, small)? * l_value(s, large)?)
    }

    pub fn label(&self) -> String {
        let z = if self.z.im == 0.0 { format!("{}", self.z.re) } else { format!("{}", self.z) };
        match self.kind {
            DivisorSumKind::Twisted => format!("sigma[{z},{}]", self.chi.label()),
            DivisorSumKind::BarTwisted => format!("sigmabar[{z},{}]", self.chi.label()),
            DivisorSumKind::TwoChar => {
                format!("sigma[{z},{},{}]", self.chi.label(), self.chi2.as_ref().expect("two characters").label())
            }
        }
    }
}

fn spf_sieve() -> &'static [u32] {
    static SIEVE: OnceLock<Vec<u32>> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let mut spf = vec![0u32; SIEVE_LIMIT + 1];
        for i in 2..=SIEVE_LIMIT {
            if spf[i] == 0 {
                let mut j = i;
                while j <= SIEVE_LIMIT {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        spf
    })
}

/// Prime factorization as (p, e) pairs, ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => out.push((p, 1)),
    };
    if n as usize <= SIEVE_LIMIT {
        let spf = spf_sieve();
        while n > 1 {
            let p = spf[n as usize] as u64;
            push(p, &mut out);
            n /= p;
        }
        return out;
    }
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        push(n, &mut out);
    }
    out
}

/// All positive divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// f_z(n) for the given sum.
pub fn divisor_sum(spec: &DivisorSumSpec, n: u64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain("divisor sums are defined for n ≥ 1".into()));
    }
    Ok(divisors(n).into_iter().map(|d| spec.term(d, n)).sum())
}

/// f_z(1), …, f_z(n_max) by a Dirichlet-convolution sieve (index 0 unused).
pub fn divisor_sum_table(spec: &DivisorSumSpec, n_max: usize) -> Vec<Complex64> {
    let small = spec.chi_small().map(|c| c.values());
    let large = spec.chi_large().map(|c| c.values());
    let lookup = |t: &Option<Vec<Complex64>>, n: usize| match t {
        Some(v) => v[n % v.len()],
        None => Complex64::new(1.0, 0.0),
    };
    let mut out = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for d in 1..=n_max {
        let v = lookup(&small, d);
        if v.norm() == 0.0 {
            continue;
        }
        let head = spec.power(d as u64) * v;
        let mut m = 1;
        while d * m <= n_max {
            out[d * m] += head * lookup(&large, m);
            m += 1;
        }
    }
    out
}

/// Outcome of comparing a truncated Dirichlet series with its closed form.
#[derive(Debug, Clone, Copy)]
pub struct SeriesCheck {
    pub residual: f64,
    /// Certified bound on the omitted tail.
    pub tail_bound: f64,
}

/// |Σ_{n≤terms} f_z(n) n^{−s} − closed form|, with the bound
/// Σ_{n>N} |f(n)| n^{−σ} ≤ 2 N^{m+3/2−σ}/(σ−m−3/2) from d(n) ≤ 2√n,
/// m = max(Re z, 0).
pub fn dirichlet_series_check(spec: &DivisorSumSpec, s: Complex64, terms: usize) -> Result<SeriesCheck> {
    let m = spec.growth_exponent();
    let need = (spec.z.re + 1.0).max(1.0) + 0.5;
    if s.re <= need {
        return Err(Error::Domain(format!("need Re(s) > {need} for absolute convergence, got s = {s}")));
    }
    if terms == 0 {
        return Err(Error::Domain("need at least one term".into()));
    }
    let table = divisor_sum_table(spec, terms);
    let mut partial = Complex64::new(0.0, 0.0);
    for n in (1..=terms).rev() {
        partial += table[n] * crate::specfun::zeta::real_pow_neg(n as f64, s);
    }
    let closed = spec.generating_function(s)?;
    let excess = s.re - m - 1.5;
    let tail_bound = 2.0 * (terms as f64).powf(-excess) / excess;
    Ok(SeriesCheck { residual: (partial - closed).norm(), tail_bound })
}

/// d_χ(n) = σ_{0,χ}(n) as a real number, for real χ.
pub fn d_chi(chi: &Character, n: u64) -> Result<f64> {
    Ok(divisor_sum(&DivisorSumSpec::twisted(0.0, chi), n)?.re)
}
