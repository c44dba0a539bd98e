//! Hypothesis flips shared by the integration tests and the acceptance run.

#![allow(dead_code)]

use std::f64::consts::PI;
use tbl::characters::{character, enumerate_characters, Parity};
use tbl::identities::{default_cases, CharRef, Family, IdentityCase, TheoremId};
use tbl::Error;

pub enum Expect {
    Reject,
    /// The flip leaves the theorem's hypotheses intact.
    Accept,
}

pub struct Flip {
    pub what: String,
    pub case: IdentityCase,
    pub expect: Expect,
}

fn flip(what: impl Into<String>, case: IdentityCase) -> Flip {
    Flip { what: what.into(), case, expect: Expect::Reject }
}

/// A character mod 9 induced from the one mod 3.
fn imprimitive() -> (u64, usize) {
    let c = enumerate_characters(9).unwrap().into_iter().find(|c| c.conductor() == 3).unwrap();
    (9, c.index())
}

/// Modulus product that the excluded-point clause is stated in.
fn modulus_product(case: &IdentityCase) -> f64 {
    use TheoremId::*;
    let q1 = case.chi.map_or(1, |c| c.modulus) as f64;
    let q2 = case.chi2.map_or(1, |c| c.modulus) as f64;
    match case.theorem {
        C3_5 | C3_6 => q1 * q1,
        _ => q1 * q2,
    }
}

/// Every single-hypothesis violation that applies to `id`, starting from its
/// first default case.
pub fn hypothesis_flips(id: TheoremId) -> Vec<Flip> {
    use TheoremId::*;
    let base = default_cases(id).remove(0);
    let mut out = Vec::new();

    for slot in 0..2 {
        let Some(c) = (if slot == 0 { base.chi } else { base.chi2 }) else { continue };
        let set = |m: u64, i: usize| {
            let mut k = base.clone();
            if slot == 0 {
                k.chi = Some(CharRef { modulus: m, index: i });
            } else {
                k.chi2 = Some(CharRef { modulus: m, index: i });
            }
            k
        };
        let (m9, i9) = imprimitive();
        out.push(flip(format!("slot {slot} imprimitive"), set(m9, i9)));
        out.push(flip(format!("slot {slot} principal"), set(1, 0)));
        let odd = character(c.modulus, c.index).unwrap().parity() == Parity::Odd;
        let (m, i) = if odd { (5, 2) } else { (3, 1) };
        let mut f = flip(format!("slot {slot} parity"), set(m, i));
        if matches!(id, C2_1 | C2_2) {
            f.expect = Expect::Accept;
        }
        out.push(f);
    }

    match id.family() {
        Family::Integer => {
            let k = base.k.unwrap_or(0);
            out.push(flip("k parity", base.clone().k(k + 1)));
            if matches!(id, T2_3 | T2_4) {
                out.push(flip("k = 0", base.clone().k(0)));
            }
            let nu = base.nu.unwrap_or(0.0);
            out.push(flip("ν", base.clone().nu(if nu > 0.0 { 0.0 } else { 0.3 })));
            if matches!(id, T2_9 | T2_12 | T2_13) {
                let a = base.a.unwrap();
                let x = 16.0 * PI * PI / (a * a * modulus_product(&base));
                out.push(flip("shift on 1", base.clone().x(x)));
                out.push(flip("shift on 2", base.clone().x(2.0 * x)));
            }
        }
        Family::Cohen => {
            if id == P1_1 {
                out.push(flip("integer ν", base.clone().nu(1.0)));
            } else if matches!(id, C3_1 | C3_2 | C3_3 | C3_4) {
                out.push(flip("ν ≠ 1/2", base.clone().nu(0.3)));
            } else {
                out.push(flip("integer ν", base.clone().nu(1.0)));
                out.push(flip("N below floor", base.clone().nu(2.5).big_n(0)));
            }
            let m = modulus_product(&base);
            out.push(flip("Mx = 1", base.clone().x(1.0 / m)));
            out.push(flip("Mx = 3", base.clone().x(3.0 / m)));
        }
        Family::Voronoi => {
            out.push(flip("ν at strip edge", base.clone().nu(0.5)));
            out.push(flip("ν = 0", base.clone().nu(0.0)));
            let (a, b) = (base.alpha.unwrap(), base.beta.unwrap());
            out.push(flip("integer α", base.clone().interval(1.0, b)));
            out.push(flip("integer β", base.clone().interval(a, 3.0)));
            out.push(flip("α > β", base.clone().interval(b, a)));
        }
    }
    out
}

/// `Ok` when the flip behaves as expected, otherwise a description.
pub fn judge(f: &Flip) -> Result<(), String> {
    let got = f.case.check();
    match (&f.expect, got) {
        (Expect::Reject, Err(Error::Hypothesis(_) | Error::ExcludedParameter(_))) => Ok(()),
        (Expect::Accept, Ok(())) => Ok(()),
        (_, got) => Err(format!("{} / {}: {:?}", f.case.theorem, f.what, got)),
    }
}
