//! The theorem registry. Each identity is checked by computing its two sides
//! along independent code paths and reporting the residual:
//!
//! - the Bessel-series side comes from [`bessel_series`](crate::series::bessel_series),
//!   or for the Voronoi formulas from an exact finite divisor sum;
//! - the other side uses only closed-form constants (Γ, ζ, L, L′, Gauss sums, γ)
//!   plus the shifted-power, log-kernel and rational-tail series and the Voronoi
//!   dual sums.
//!
//! The two sides share nothing beyond the primitive special functions.

mod cohen;
mod integer;
mod suite;
mod voronoi;

pub use suite::{
    default_cases, positivity_scan, reports_to_json, reports_to_jsonl, run_cases, run_suite, PositivityEntry, SuiteFilter,
    SuiteSummary, TolProfile,
};
pub use voronoi::finite_side;

use crate::characters::{character, Character, Parity};
use crate::error::{Error, Result};
use crate::series::{Smoothing, TestFunction};
use num_complex::Complex64;
use serde::{Serialize, Serializer};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

macro_rules! theorems {
    ($($v:ident => $name:literal, $desc:literal;)*) => {
        /// Every registered identity.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId { $($v),* }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$v),*];

            /// The identifier used on the command line and in reports.
            pub fn name(self) -> &'static str {
                match self { $(TheoremId::$v => $name),* }
            }

            /// One-line statement of what is summed.
            pub fn description(self) -> &'static str {
                match self { $(TheoremId::$v => $desc),* }
            }
        }
    };
}

theorems! {
    T2_1 => "T2_1", "σ_{k,χ} n^{ν/2} K_ν, χ odd, k even ≥ 0, ν > 0";
    T2_2 => "T2_2", "σ_{k,χ} K_0, χ odd, k even ≥ 0";
    T2_3 => "T2_3", "σ̄_{k,χ} n^{ν/2} K_ν, χ odd, k even ≥ 2, ν > 0";
    T2_4 => "T2_4", "σ̄_{k,χ} K_0, χ odd, k even ≥ 2";
    T2_5 => "T2_5", "σ_{k,χ} n^{ν/2} K_ν, χ even non-principal, k odd, ν > 0";
    T2_6 => "T2_6", "σ_{k,χ} K_0, χ even non-principal, k odd";
    T2_7 => "T2_7", "σ̄_{k,χ} n^{ν/2} K_ν, χ even non-principal, k odd, ν > 0";
    T2_8 => "T2_8", "σ̄_{k,χ} K_0, χ even non-principal, k odd";
    T2_9 => "T2_9", "d_{χ₁,χ₂} K_0, both even non-principal";
    T2_10 => "T2_10", "σ_{k,χ₁,χ₂} n^{ν/2} K_ν, matched parities, k odd, ν > 0";
    T2_11 => "T2_11", "σ_{k,χ₁,χ₂} K_0, matched parities, k odd";
    T2_12 => "T2_12", "d_{χ₁,χ₂} K_0, both odd";
    T2_13 => "T2_13", "d_χ K_0, χ even non-principal";
    T2_14 => "T2_14", "σ_{k,χ₁,χ₂} n^{ν/2} K_ν, mixed parities, k even ≥ 0, ν > 0";
    T2_15 => "T2_15", "σ_{k,χ₁,χ₂} K_0, mixed parities, k even ≥ 0";
    C2_1 => "C2_1", "σ_k(n)χ(n) n^{ν/2} K_ν, χ non-principal, k odd, ν > 0";
    C2_2 => "C2_2", "σ_k(n)χ(n) K_0, χ non-principal, k odd";
    C2_3 => "C2_3", "d_χ K_0, χ real odd";
    T3_1 => "T3_1", "σ_{−ν,χ̄} Cohen-type, χ even non-principal";
    T3_2 => "T3_2", "σ̄_{−ν,χ̄} Cohen-type, χ even non-principal";
    T3_3 => "T3_3", "σ_{−ν,χ̄} Cohen-type, χ odd";
    T3_4 => "T3_4", "σ̄_{−ν,χ̄} Cohen-type, χ odd";
    T3_5 => "T3_5", "σ_{−ν,χ̄₁,χ̄₂} Cohen-type, both even non-principal";
    T3_6 => "T3_6", "σ_{−ν,χ̄₁,χ̄₂} Cohen-type, both odd";
    T3_7 => "T3_7", "σ_{−ν,χ̄₁,χ̄₂} Cohen-type, χ₁ even non-principal, χ₂ odd";
    T3_8 => "T3_8", "σ_{−ν,χ̄₁,χ̄₂} Cohen-type, χ₁ odd, χ₂ even non-principal";
    C3_1 => "C3_1", "σ_{−1/2,χ̄} e^{−4π√(nx)}, χ even non-principal";
    C3_2 => "C3_2", "σ̄_{−1/2,χ̄} e^{−4π√(nx)}, χ even non-principal";
    C3_3 => "C3_3", "σ_{−1/2,χ̄} e^{−4π√(nx)}, χ odd";
    C3_4 => "C3_4", "σ̄_{−1/2,χ̄} e^{−4π√(nx)}, χ odd";
    C3_5 => "C3_5", "σ_{−ν}(n)χ̄(n) Cohen-type, χ even non-principal";
    C3_6 => "C3_6", "σ_{−ν}(n)χ̄(n) Cohen-type, χ odd";
    T4_1 => "T4_1", "Voronoi for σ̄_{−ν,χ}, χ even non-principal";
    T4_2 => "T4_2", "Voronoi for σ_{−ν,χ}, χ even non-principal";
    T4_3 => "T4_3", "Voronoi for σ̄_{−ν,χ}(j)/j, χ odd";
    T4_4 => "T4_4", "Voronoi for σ_{−ν,χ}, χ odd";
    T4_5 => "T4_5", "Voronoi for σ_{−ν,χ₂,χ₁}, both even non-principal";
    T4_6 => "T4_6", "Voronoi for σ_{−ν,χ₂,χ₁}(j)/j, both odd";
    T4_7 => "T4_7", "Voronoi for σ_{−ν,χ₂,χ₁}, χ₁ even non-principal, χ₂ odd";
    T4_8 => "T4_8", "Voronoi for σ_{−ν,χ₂,χ₁}(j)/j, χ₁ odd, χ₂ even non-principal";
    C4_1 => "C4_1", "Voronoi for σ_{−ν}(j)χ(j), χ even non-principal";
    C4_2 => "C4_2", "Voronoi for σ_{−ν}(j)χ(j)/j, χ odd";
    P1_1 => "P1_1_classical", "σ_{−ν} Cohen-type, no character";
}

/// The family an identity belongs to, which fixes how its sides are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Integer weight k ≥ 0, kernel K_ν(a√(nx)).
    Integer,
    /// Weight −ν, kernel K_ν(4π√(nx)), plus the classical baseline.
    Cohen,
    /// Finite sums against a test function.
    Voronoi,
}

impl TheoremId {
    pub fn family(self) -> Family {
        let n = self.name();
        if n.starts_with("T2") || n.starts_with("C2") {
            Family::Integer
        } else if n.starts_with("T4") || n.starts_with("C4") {
            Family::Voronoi
        } else {
            Family::Cohen
        }
    }

    /// Number of characters the identity takes.
    pub fn character_count(self) -> usize {
        match requirements(self).chars {
            CharReq::None => 0,
            CharReq::One(_) => 1,
            _ => 2,
        }
    }

    pub fn valid_ids() -> String {
        Self::ALL.iter().map(|t| t.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Self::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s) || (*t == TheoremId::P1_1 && s.eq_ignore_ascii_case("P1_1")))
            .ok_or_else(|| Error::Domain(format!("unknown theorem '{s}'; valid identifiers: {}", Self::valid_ids())))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A character addressed by modulus and enumeration index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CharRef {
    pub modulus: u64,
    pub index: usize,
}

/// One parameter point of one identity. Absent fields are those the identity
/// does not take; for two-character identities `chi` is χ₁ (modulus p) and
/// `chi2` is χ₂ (modulus q).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCase {
    pub theorem: TheoremId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<CharRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi2: Option<CharRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    /// Truncation index N of the Cohen-type identities; the smallest
    /// admissible value when absent.
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<TestFunction>,
    /// Summation of the Voronoi dual series; the smooth cutoff when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smoothing: Option<Smoothing>,
}

impl IdentityCase {
    pub fn new(theorem: TheoremId) -> Self {
        Self {
            theorem,
            chi: None,
            chi2: None,
            k: None,
            nu: None,
            a: None,
            x: None,
            n: None,
            alpha: None,
            beta: None,
            f: None,
            smoothing: None,
        }
    }

    pub fn chi(mut self, modulus: u64, index: usize) -> Self {
        self.chi = Some(CharRef { modulus, index });
        self
    }

    pub fn chi2(mut self, modulus: u64, index: usize) -> Self {
        self.chi2 = Some(CharRef { modulus, index });
        self
    }

    pub fn k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn nu(mut self, nu: f64) -> Self {
        self.nu = Some(nu);
        self
    }

    pub fn a(mut self, a: f64) -> Self {
        self.a = Some(a);
        self
    }

    pub fn x(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }

    pub fn big_n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    pub fn interval(mut self, alpha: f64, beta: f64) -> Self {
        self.alpha = Some(alpha);
        self.beta = Some(beta);
        self
    }

    pub fn test_fn(mut self, f: TestFunction) -> Self {
        self.f = Some(f);
        self
    }

    pub fn smoothing(mut self, s: Smoothing) -> Self {
        self.smoothing = Some(s);
        self
    }

    /// Checks every hypothesis of the identity at this point.
    pub fn check(&self) -> Result<()> {
        self.resolve().map(|_| ())
    }

    pub(crate) fn resolve(&self) -> Result<Resolved> {
        resolve(self)
    }
}

/// A checked case with its characters built.
#[derive(Debug, Clone)]
pub(crate) struct Resolved {
    pub chi: Option<Character>,
    pub chi2: Option<Character>,
    pub k: u32,
    pub nu: f64,
    pub a: f64,
    pub x: f64,
    pub n: u32,
    pub alpha: f64,
    pub beta: f64,
    pub f: TestFunction,
    pub smoothing: Smoothing,
}

impl Resolved {
    pub fn chi(&self) -> &Character {
        self.chi.as_ref().expect("identity takes a character")
    }

    pub fn chi2(&self) -> &Character {
        self.chi2.as_ref().expect("identity takes two characters")
    }
}

/// Both sides of an identity with their term counts.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Sides {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

// ---------------------------------------------------------------------------
// hypotheses

#[derive(Debug, Clone, Copy, PartialEq)]
enum CharKind {
    Odd,
    EvenNonPrincipal,
    NonPrincipal,
    RealOdd,
}

impl CharKind {
    fn admits(self, c: &Character) -> bool {
        match self {
            CharKind::Odd => c.parity() == Parity::Odd,
            CharKind::EvenNonPrincipal => c.parity() == Parity::Even && !c.is_principal(),
            CharKind::NonPrincipal => !c.is_principal(),
            CharKind::RealOdd => c.parity() == Parity::Odd && c.is_real(),
        }
    }

    fn phrase(self) -> &'static str {
        match self {
            CharKind::Odd => "an odd primitive character",
            CharKind::EvenNonPrincipal => "a non-principal even primitive character",
            CharKind::NonPrincipal => "a non-principal primitive character",
            CharKind::RealOdd => "a real odd primitive character",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum CharReq {
    None,
    One(CharKind),
    Two(CharKind, CharKind),
    /// both non-principal even or both odd
    Matched,
    /// one non-principal even, the other odd
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum KReq {
    Absent,
    Zero,
    EvenFrom(u32),
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum NuReq {
    Zero,
    Positive,
    NonInteger,
    Half,
    Strip,
}

/// Which combination must avoid the positive integers.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Excluded {
    None,
    /// a²·M·x/16π² for the modulus product M
    Shift,
    /// M·x
    Scaled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum ModProduct {
    One,
    Q,
    PQ,
    QSquared,
}

#[derive(Debug, Clone, Copy)]
struct Req {
    chars: CharReq,
    k: KReq,
    nu: NuReq,
    excluded: Excluded,
    modulus: ModProduct,
    /// Cohen truncation index: None, or Some(at least one)
    big_n: Option<bool>,
}

fn requirements(id: TheoremId) -> Req {
    use CharKind::*;
    use TheoremId::*;
    let one = |c| CharReq::One(c);
    let base = Req {
        chars: CharReq::None,
        k: KReq::Absent,
        nu: NuReq::Zero,
        excluded: Excluded::None,
        modulus: ModProduct::Q,
        big_n: None,
    };
    let integer = |chars, k, nu| Req { chars, k, nu, ..base };
    let cohen = |chars, modulus, at_least_one| Req {
        chars,
        nu: NuReq::NonInteger,
        excluded: Excluded::Scaled,
        modulus,
        big_n: Some(at_least_one),
        ..base
    };
    let half = |c| Req { chars: one(c), nu: NuReq::Half, excluded: Excluded::Scaled, ..base };
    let vor = |chars, modulus| Req { chars, nu: NuReq::Strip, modulus, ..base };
    match id {
        T2_1 => integer(one(Odd), KReq::EvenFrom(0), NuReq::Positive),
        T2_2 => integer(one(Odd), KReq::EvenFrom(0), NuReq::Zero),
        T2_3 => integer(one(Odd), KReq::EvenFrom(2), NuReq::Positive),
        T2_4 => integer(one(Odd), KReq::EvenFrom(2), NuReq::Zero),
        T2_5 | T2_7 => integer(one(EvenNonPrincipal), KReq::Odd, NuReq::Positive),
        T2_6 | T2_8 => integer(one(EvenNonPrincipal), KReq::Odd, NuReq::Zero),
        T2_9 => Req {
            excluded: Excluded::Shift,
            modulus: ModProduct::PQ,
            ..integer(CharReq::Two(EvenNonPrincipal, EvenNonPrincipal), KReq::Zero, NuReq::Zero)
        },
        T2_10 => Req { modulus: ModProduct::PQ, ..integer(CharReq::Matched, KReq::Odd, NuReq::Positive) },
        T2_11 => Req { modulus: ModProduct::PQ, ..integer(CharReq::Matched, KReq::Odd, NuReq::Zero) },
        T2_12 => Req {
            excluded: Excluded::Shift,
            modulus: ModProduct::PQ,
            ..integer(CharReq::Two(Odd, Odd), KReq::Zero, NuReq::Zero)
        },
        T2_13 => Req { excluded: Excluded::Shift, ..integer(one(EvenNonPrincipal), KReq::Zero, NuReq::Zero) },
        T2_14 => Req { modulus: ModProduct::PQ, ..integer(CharReq::Mixed, KReq::EvenFrom(0), NuReq::Positive) },
        T2_15 => Req { modulus: ModProduct::PQ, ..integer(CharReq::Mixed, KReq::EvenFrom(0), NuReq::Zero) },
        C2_1 => Req { modulus: ModProduct::QSquared, ..integer(one(NonPrincipal), KReq::Odd, NuReq::Positive) },
        C2_2 => Req { modulus: ModProduct::QSquared, ..integer(one(NonPrincipal), KReq::Odd, NuReq::Zero) },
        C2_3 => integer(one(RealOdd), KReq::Zero, NuReq::Zero),
        T3_1 | T3_2 => cohen(one(EvenNonPrincipal), ModProduct::Q, false),
        T3_3 => cohen(one(Odd), ModProduct::Q, false),
        T3_4 => cohen(one(Odd), ModProduct::Q, true),
        T3_5 => cohen(CharReq::Two(EvenNonPrincipal, EvenNonPrincipal), ModProduct::PQ, false),
        T3_6 => cohen(CharReq::Two(Odd, Odd), ModProduct::PQ, true),
        T3_7 => cohen(CharReq::Two(EvenNonPrincipal, Odd), ModProduct::PQ, true),
        T3_8 => cohen(CharReq::Two(Odd, EvenNonPrincipal), ModProduct::PQ, false),
        C3_1 | C3_2 => half(EvenNonPrincipal),
        C3_3 | C3_4 => half(Odd),
        C3_5 => cohen(one(EvenNonPrincipal), ModProduct::QSquared, false),
        C3_6 => cohen(one(Odd), ModProduct::QSquared, true),
        T4_1 | T4_2 => vor(one(EvenNonPrincipal), ModProduct::Q),
        T4_3 | T4_4 => vor(one(Odd), ModProduct::Q),
        T4_5 => vor(CharReq::Two(EvenNonPrincipal, EvenNonPrincipal), ModProduct::PQ),
        T4_6 => vor(CharReq::Two(Odd, Odd), ModProduct::PQ),
        T4_7 => vor(CharReq::Two(EvenNonPrincipal, Odd), ModProduct::PQ),
        T4_8 => vor(CharReq::Two(Odd, EvenNonPrincipal), ModProduct::PQ),
        C4_1 => vor(one(EvenNonPrincipal), ModProduct::QSquared),
        C4_2 => vor(one(Odd), ModProduct::QSquared),
        P1_1 => cohen(CharReq::None, ModProduct::One, false),
    }
}

fn hypothesis(id: TheoremId, clause: impl fmt::Display) -> Error {
    Error::Hypothesis(format!("{id} requires {clause}"))
}

fn missing(id: TheoremId, what: &str) -> Error {
    Error::Domain(format!("{id} needs a value for {what}"))
}

fn unused(id: TheoremId, what: &str) -> Error {
    Error::Domain(format!("{id} takes no {what}"))
}

fn build_char(id: TheoremId, r: CharRef, which: &str) -> Result<Character> {
    let c = character(r.modulus, r.index)?;
    if !c.is_primitive() {
        return Err(hypothesis(
            id,
            format!("{which} to be primitive; {} has conductor {}", c.label(), c.conductor()),
        ));
    }
    Ok(c)
}

fn need_kind(id: TheoremId, c: &Character, kind: CharKind, which: &str) -> Result<()> {
    if kind.admits(c) {
        Ok(())
    } else {
        Err(hypothesis(id, format!("{which} to be {} ({} is {})", kind.phrase(), c.label(), describe(c))))
    }
}

fn describe(c: &Character) -> String {
    if c.is_principal() {
        "principal".into()
    } else {
        format!("{}{}", if c.is_real() { "real " } else { "" }, c.parity())
    }
}

/// True when v lies on a positive integer (up to rounding in its computation).
fn on_positive_integer(v: f64) -> bool {
    let r = v.round();
    r >= 1.0 && (v - r).abs() <= 1e-9 * r
}

fn resolve(case: &IdentityCase) -> Result<Resolved> {
    let id = case.theorem;
    let req = requirements(id);
    let family = id.family();

    // characters
    let (chi, chi2) = match req.chars {
        CharReq::None => {
            if case.chi.is_some() || case.chi2.is_some() {
                return Err(unused(id, "character"));
            }
            (None, None)
        }
        CharReq::One(kind) => {
            if case.chi2.is_some() {
                return Err(unused(id, "second character"));
            }
            let c = build_char(id, case.chi.ok_or_else(|| missing(id, "the character"))?, "χ")?;
            need_kind(id, &c, kind, "χ")?;
            (Some(c), None)
        }
        two => {
            let c1 = build_char(id, case.chi.ok_or_else(|| missing(id, "χ₁"))?, "χ₁")?;
            let c2 = build_char(id, case.chi2.ok_or_else(|| missing(id, "χ₂"))?, "χ₂")?;
            match two {
                CharReq::Two(k1, k2) => {
                    need_kind(id, &c1, k1, "χ₁")?;
                    need_kind(id, &c2, k2, "χ₂")?;
                }
                CharReq::Matched => {
                    let even = |c: &Character| CharKind::EvenNonPrincipal.admits(c);
                    let odd = |c: &Character| c.parity() == Parity::Odd;
                    if !((even(&c1) && even(&c2)) || (odd(&c1) && odd(&c2))) {
                        return Err(hypothesis(
                            id,
                            format!(
                                "χ₁ and χ₂ to be both non-principal even or both odd ({} is {}, {} is {})",
                                c1.label(),
                                describe(&c1),
                                c2.label(),
                                describe(&c2)
                            ),
                        ));
                    }
                }
                CharReq::Mixed => {
                    let even = |c: &Character| CharKind::EvenNonPrincipal.admits(c);
                    let odd = |c: &Character| c.parity() == Parity::Odd;
                    if !((even(&c1) && odd(&c2)) || (odd(&c1) && even(&c2))) {
                        return Err(hypothesis(
                            id,
                            format!(
                                "one of χ₁, χ₂ to be non-principal even and the other odd ({} is {}, {} is {})",
                                c1.label(),
                                describe(&c1),
                                c2.label(),
                                describe(&c2)
                            ),
                        ));
                    }
                }
                _ => unreachable!(),
            }
            (Some(c1), Some(c2))
        }
    };

    // k
    let k = match (req.k, case.k) {
        (KReq::Absent, Some(_)) => return Err(unused(id, "k")),
        (KReq::Absent, None) => 0,
        (KReq::Zero, k) => {
            let k = k.unwrap_or(0);
            if k != 0 {
                return Err(hypothesis(id, format!("k = 0, got k = {k}")));
            }
            0
        }
        (KReq::EvenFrom(min), k) => {
            let k = k.ok_or_else(|| missing(id, "k"))?;
            if k % 2 != 0 || k < min {
                return Err(hypothesis(id, format!("k to be an even integer ≥ {min}, got k = {k}")));
            }
            k
        }
        (KReq::Odd, k) => {
            let k = k.ok_or_else(|| missing(id, "k"))?;
            if k % 2 != 1 {
                return Err(hypothesis(id, format!("k to be an odd integer ≥ 1, got k = {k}")));
            }
            k
        }
    };

    // ν
    let nu = match req.nu {
        NuReq::Zero => {
            let nu = case.nu.unwrap_or(0.0);
            if nu != 0.0 {
                return Err(hypothesis(id, format!("ν = 0, got ν = {nu}")));
            }
            0.0
        }
        NuReq::Half => {
            let nu = case.nu.unwrap_or(0.5);
            if nu != 0.5 {
                return Err(hypothesis(id, format!("ν = 1/2, got ν = {nu}")));
            }
            0.5
        }
        NuReq::Positive => {
            let nu = case.nu.ok_or_else(|| missing(id, "ν"))?;
            if !(nu > 0.0) || !nu.is_finite() {
                return Err(hypothesis(id, format!("Re(ν) > 0, got ν = {nu}")));
            }
            nu
        }
        NuReq::NonInteger => {
            let nu = case.nu.ok_or_else(|| missing(id, "ν"))?;
            if !(nu >= 0.0) || !nu.is_finite() || nu == nu.round() {
                return Err(hypothesis(id, format!("ν ∉ ℤ with Re(ν) ≥ 0, got ν = {nu}")));
            }
            nu
        }
        NuReq::Strip => {
            let nu = case.nu.ok_or_else(|| missing(id, "ν"))?;
            if !(nu > 0.0 && nu < 0.5) {
                return Err(hypothesis(id, format!("0 < Re(ν) < 1/2, got ν = {nu}")));
            }
            nu
        }
    };

    // N
    let n = match req.big_n {
        None => {
            if case.n.is_some() {
                return Err(unused(id, "truncation index N"));
            }
            0
        }
        Some(at_least_one) => {
            let floor = ((nu + 1.0) / 2.0).floor() as u32;
            let min = if at_least_one { floor.max(1) } else { floor };
            // the identity holds for every admissible N; default to the smallest
            let n = case.n.unwrap_or(min);
            if n < min {
                return Err(hypothesis(id, format!("N ≥ {min} at ν = {nu}, got N = {n}")));
            }
            n
        }
    };

    // a, x, interval
    let (mut a, mut x) = (4.0 * PI, 0.0);
    let (mut alpha, mut beta, mut f) = (0.0, 0.0, TestFunction::Exp);
    match family {
        Family::Integer | Family::Cohen => {
            if family == Family::Integer {
                a = case.a.ok_or_else(|| missing(id, "a"))?;
                if !(a > 0.0) || !a.is_finite() {
                    return Err(Error::Domain(format!("{id} needs a > 0, got a = {a}")));
                }
            } else if case.a.is_some() {
                return Err(unused(id, "a (the kernel is fixed at 4π√(nx))"));
            }
            x = case.x.ok_or_else(|| missing(id, "x"))?;
            if !(x > 0.0) || !x.is_finite() {
                return Err(Error::Domain(format!("{id} needs x > 0, got x = {x}")));
            }
            if case.alpha.is_some() || case.beta.is_some() || case.f.is_some() || case.smoothing.is_some() {
                return Err(unused(id, "interval, test function or smoothing"));
            }
        }
        Family::Voronoi => {
            if case.a.is_some() || case.x.is_some() {
                return Err(unused(id, "a or x"));
            }
            alpha = case.alpha.ok_or_else(|| missing(id, "α"))?;
            beta = case.beta.ok_or_else(|| missing(id, "β"))?;
            f = case.f.ok_or_else(|| missing(id, "the test function"))?;
            if !(alpha > 0.0 && beta > alpha) || !beta.is_finite() {
                return Err(hypothesis(id, format!("0 < α < β, got (α, β) = ({alpha}, {beta})")));
            }
            for (name, v) in [("α", alpha), ("β", beta)] {
                if v == v.round() {
                    return Err(Error::ExcludedParameter(format!("{id} requires {name} ∉ ℤ, got {name} = {v}")));
                }
            }
        }
    }

    // excluded points
    let m = match req.modulus {
        ModProduct::One => 1.0,
        ModProduct::Q => chi.as_ref().map_or(1.0, |c| c.modulus() as f64),
        ModProduct::PQ => chi.as_ref().zip(chi2.as_ref()).map_or(1.0, |(c1, c2)| (c1.modulus() * c2.modulus()) as f64),
        ModProduct::QSquared => chi.as_ref().map_or(1.0, |c| (c.modulus() as f64).powi(2)),
    };
    match req.excluded {
        Excluded::None => {}
        Excluded::Shift => {
            let c = a * a * m * x / (16.0 * PI * PI);
            if on_positive_integer(c) {
                return Err(Error::ExcludedParameter(format!(
                    "{id} requires a²·{m}·x/16π² ∉ ℤ₊, got {c} at a = {a}, x = {x}"
                )));
            }
        }
        Excluded::Scaled => {
            let c = m * x;
            if on_positive_integer(c) {
                return Err(Error::ExcludedParameter(format!("{id} requires {m}·x ∉ ℤ₊, got {m}·{x} = {c}")));
            }
        }
    }

    Ok(Resolved {
        chi,
        chi2,
        k,
        nu,
        a,
        x,
        n,
        alpha,
        beta,
        f,
        smoothing: case.smoothing.unwrap_or_default(),
    })
}

// ---------------------------------------------------------------------------
// verification

/// Below this |lhs| the absolute error decides pass/fail.
pub fn absolute_floor(id: TheoremId) -> f64 {
    match id.family() {
        Family::Voronoi => 1.0,
        _ => 1e-6,
    }
}

/// The outcome of checking one case.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub case: IdentityCase,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub tol: f64,
    pub pass: bool,
    pub wall_time: Duration,
    /// Set when the case could not be evaluated (suite runs only).
    pub error: Option<String>,
}

impl VerificationReport {
    fn from_sides(case: &IdentityCase, s: Sides, tol: f64, wall_time: Duration) -> Self {
        let abs_err = (s.lhs - s.rhs).norm();
        let rel_err = abs_err / s.lhs.norm();
        let measured = if s.lhs.norm() < absolute_floor(case.theorem) { abs_err } else { rel_err };
        Self {
            case: case.clone(),
            lhs: s.lhs,
            rhs: s.rhs,
            abs_err,
            rel_err,
            lhs_terms: s.lhs_terms,
            rhs_terms: s.rhs_terms,
            tol,
            pass: measured <= tol,
            wall_time,
            error: None,
        }
    }

    pub(crate) fn failed(case: &IdentityCase, tol: f64, e: &Error, wall_time: Duration) -> Self {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        Self {
            case: case.clone(),
            lhs: nan,
            rhs: nan,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            lhs_terms: 0,
            rhs_terms: 0,
            tol,
            pass: false,
            wall_time,
            error: Some(e.to_string()),
        }
    }

    /// The error measure the pass decision used.
    pub fn measured_err(&self) -> f64 {
        if self.lhs.norm() < absolute_floor(self.case.theorem) {
            self.abs_err
        } else {
            self.rel_err
        }
    }
}

#[derive(Serialize)]
struct Terms {
    lhs: usize,
    rhs: usize,
}

#[derive(Serialize)]
struct Record<'a> {
    theorem_id: TheoremId,
    params: &'a IdentityCase,
    lhs_re: f64,
    lhs_im: f64,
    rhs_re: f64,
    rhs_im: f64,
    abs_err: f64,
    rel_err: f64,
    tol: f64,
    pass: bool,
    terms: Terms,
    wall_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: &'a Option<String>,
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Record {
            theorem_id: self.case.theorem,
            params: &self.case,
            lhs_re: self.lhs.re,
            lhs_im: self.lhs.im,
            rhs_re: self.rhs.re,
            rhs_im: self.rhs.im,
            abs_err: self.abs_err,
            rel_err: self.rel_err,
            tol: self.tol,
            pass: self.pass,
            terms: Terms { lhs: self.lhs_terms, rhs: self.rhs_terms },
            wall_ms: self.wall_time.as_secs_f64() * 1e3,
            error: &self.error,
        }
        .serialize(s)
    }
}

/// Computes both sides of `case` and compares them at tolerance `tol`
/// (relative, or absolute when |lhs| is below [`absolute_floor`]).
pub fn verify(case: &IdentityCase, tol: f64) -> Result<VerificationReport> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let r = case.resolve()?;
    let t0 = Instant::now();
    let sides = match case.theorem.family() {
        Family::Integer => integer::evaluate(case.theorem, &r)?,
        Family::Cohen => cohen::evaluate(case.theorem, &r)?,
        Family::Voronoi => voronoi::evaluate(case.theorem, &r)?,
    };
    Ok(VerificationReport::from_sides(case, sides, tol, t0.elapsed()))
}

/// The δ_k pole term x^{−ν/2−1} (or 2L(1,χ)/(a²x) at ν = 0) carried by the
/// odd-character identities with k = 0; zero for k > 0 and for every other
/// identity.
pub fn delta_term(case: &IdentityCase) -> Result<Complex64> {
    let r = case.resolve()?;
    integer::delta_term(case.theorem, &r)
}

// ---------------------------------------------------------------------------
// shared helpers

pub(crate) fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
