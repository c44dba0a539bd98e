//! The default parameter grid, the concurrent suite runner, report
//! serialization and the L(1, χ) positivity scan.

use super::{verify, Family, IdentityCase, TheoremId, VerificationReport};
use crate::characters::{primitive_characters, Parity};
use crate::error::{Error, Result};
use crate::series::TestFunction;
use crate::specfun::l_real;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

/// Tolerance per identity family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TolProfile {
    pub integer: f64,
    pub cohen: f64,
    /// The ν = 1/2 exponential forms.
    pub half_order: f64,
    pub voronoi: f64,
}

impl Default for TolProfile {
    fn default() -> Self {
        Self { integer: 1e-8, cohen: 1e-7, half_order: 1e-9, voronoi: 1e-3 }
    }
}

impl TolProfile {
    /// The same tolerance everywhere.
    pub fn uniform(tol: f64) -> Self {
        Self { integer: tol, cohen: tol, half_order: tol, voronoi: tol }
    }

    pub fn for_theorem(&self, id: TheoremId) -> f64 {
        use TheoremId::*;
        match id {
            C3_1 | C3_2 | C3_3 | C3_4 => self.half_order,
            _ => match id.family() {
                Family::Integer => self.integer,
                Family::Cohen => self.cohen,
                Family::Voronoi => self.voronoi,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        for v in [self.integer, self.cohen, self.half_order, self.voronoi] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("tolerances must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// Selects theorems by case-insensitive glob patterns on their identifiers
/// ("T3_*", "C2_?", "*"). No patterns select nothing.
#[derive(Debug, Clone, Default)]
pub struct SuiteFilter {
    patterns: Vec<glob::Pattern>,
}

impl SuiteFilter {
    pub fn all() -> Self {
        Self { patterns: vec![glob::Pattern::new("*").expect("valid pattern")] }
    }

    pub fn new<S: AsRef<str>>(patterns: &[S]) -> Result<Self> {
        let patterns = patterns
            .iter()
            .map(|p| {
                let p = p.as_ref().trim();
                glob::Pattern::new(p).map_err(|e| Error::Domain(format!("bad filter pattern '{p}': {e}")))
            })
            .collect::<Result<_>>()?;
        Ok(Self { patterns })
    }

    pub fn matches(&self, id: TheoremId) -> bool {
        let opts = glob::MatchOptions { case_sensitive: false, ..Default::default() };
        self.patterns.iter().any(|p| p.matches_with(id.name(), opts))
    }
}

/// Pass/fail counts over a report list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Cases that could not be evaluated at all (counted in `failed` too).
    pub errored: usize,
}

impl SuiteSummary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        Self {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
            errored: reports.iter().filter(|r| r.error.is_some()).count(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

// character shorthands: (modulus, index)
const O3: (u64, usize) = (3, 1);
const O4: (u64, usize) = (4, 1);
const O5: (u64, usize) = (5, 1);
const O7: (u64, usize) = (7, 1);
const O7R: (u64, usize) = (7, 3);
const O8: (u64, usize) = (8, 3);
const E5: (u64, usize) = (5, 2);
const E7: (u64, usize) = (7, 2);
const E7B: (u64, usize) = (7, 4);
const E8: (u64, usize) = (8, 1);

fn one(id: TheoremId, c: (u64, usize)) -> IdentityCase {
    IdentityCase::new(id).chi(c.0, c.1)
}

fn pair(id: TheoremId, c1: (u64, usize), c2: (u64, usize)) -> IdentityCase {
    one(id, c1).chi2(c2.0, c2.1)
}

fn integer_cases(id: TheoremId) -> Vec<IdentityCase> {
    use TheoremId::*;
    // (χ, χ₂, k, ν, a, x)
    // Large k + ν pairs with a√x ≳ 1: at a√x ≈ 0.27 the Bessel side of a
    // weight-4 sum cancels from terms near 1e10 down to O(10), which leaves
    // only ~1e−6 relative accuracy in double precision.
    type Point = ((u64, usize), Option<(u64, usize)>, u32, f64, f64, f64);
    let points: Vec<Point> = match id {
        T2_1 => vec![(O3, None, 0, 0.3, 0.5, 0.75), (O7, None, 2, 0.5, 1.0, 1.9), (O5, None, 4, 1.2, 2.0, 0.3)],
        T2_2 => vec![(O3, None, 0, 0.0, 1.0, 0.3), (O4, None, 2, 0.0, 2.0, 0.75), (O7, None, 4, 0.0, 0.5, 1.9)],
        T2_3 => vec![(O7, None, 2, 0.3, 2.0, 0.75), (O4, None, 4, 0.5, 1.0, 1.9), (O5, None, 6, 0.3, 0.5, 0.3)],
        T2_4 => vec![(O4, None, 2, 0.0, 1.0, 0.3), (O3, None, 4, 0.0, 2.0, 1.9), (O8, None, 2, 0.0, 0.5, 0.75)],
        T2_5 => vec![(E5, None, 1, 0.3, 0.5, 0.75), (E8, None, 3, 0.5, 1.0, 0.3), (E7, None, 5, 1.5, 2.0, 1.9)],
        T2_6 => vec![(E5, None, 1, 0.0, 2.0, 0.3), (E7, None, 3, 0.0, 1.0, 1.9), (E8, None, 1, 0.0, 0.5, 0.75)],
        T2_7 => vec![(E5, None, 1, 0.3, 1.0, 1.9), (E8, None, 3, 0.5, 0.5, 0.75), (E7B, None, 1, 1.2, 2.0, 0.3)],
        T2_8 => vec![(E5, None, 3, 0.0, 1.0, 0.75), (E8, None, 1, 0.0, 2.0, 1.9), (E7, None, 5, 0.0, 0.5, 0.3)],
        T2_9 => vec![(E5, Some(E8), 0, 0.0, 1.0, 0.75), (E5, Some(E7), 0, 0.0, 2.0, 0.3), (E8, Some(E5), 0, 0.0, 0.5, 1.9)],
        T2_10 => vec![(O3, Some(O4), 1, 0.3, 1.0, 0.75), (E5, Some(E8), 3, 0.5, 2.0, 0.3), (O7, Some(O3), 1, 1.5, 0.5, 1.9)],
        T2_11 => vec![(O3, Some(O4), 1, 0.0, 2.0, 1.9), (E5, Some(E8), 3, 0.0, 1.0, 0.3), (E7, Some(E5), 1, 0.0, 0.5, 0.75)],
        T2_12 => vec![(O3, Some(O4), 0, 0.0, 1.0, 0.75), (O5, Some(O3), 0, 0.0, 2.0, 0.3), (O7R, Some(O4), 0, 0.0, 0.5, 1.9)],
        T2_13 => vec![(E5, None, 0, 0.0, 1.0, 0.3), (E8, None, 0, 0.0, 2.0, 0.75), (E7, None, 0, 0.0, 0.5, 1.9)],
        T2_14 => vec![(O3, Some(E5), 0, 0.3, 0.5, 0.75), (E5, Some(O4), 2, 0.5, 1.0, 1.9), (E8, Some(O7), 4, 1.2, 2.0, 0.3)],
        T2_15 => vec![(O3, Some(E5), 0, 0.0, 1.0, 0.3), (E5, Some(O4), 2, 0.0, 2.0, 0.75), (O7, Some(E8), 0, 0.0, 0.5, 1.9)],
        C2_1 => vec![(E5, None, 1, 0.3, 1.0, 0.75), (O3, None, 3, 0.5, 2.0, 0.3), (O7, None, 1, 1.5, 0.5, 1.9)],
        C2_2 => vec![(O4, None, 1, 0.0, 1.0, 1.9), (E5, None, 3, 0.0, 2.0, 0.3), (E7, None, 1, 0.0, 0.5, 0.75)],
        C2_3 => vec![(O3, None, 0, 0.0, 1.0, 0.75), (O4, None, 0, 0.0, 2.0, 0.3), (O7R, None, 0, 0.0, 0.5, 1.9)],
        _ => unreachable!(),
    };
    let takes_k = !matches!(id, T2_9 | T2_12 | T2_13 | C2_3);
    points
        .into_iter()
        .map(|(c1, c2, k, nu, a, x)| {
            let mut case = match c2 {
                Some(c2) => pair(id, c1, c2),
                None => one(id, c1),
            }
            .a(a)
            .x(x);
            if takes_k {
                case = case.k(k);
            }
            if nu > 0.0 {
                case = case.nu(nu);
            }
            case
        })
        .collect()
}

/// The ν grid and truncation indices of the weight −ν suites.
pub const COHEN_NU: [f64; 3] = [0.25, 0.3, 0.45];
pub const COHEN_N: [u32; 2] = [1, 2];
const COHEN_X: f64 = 0.21;

fn cohen_cases(id: TheoremId) -> Vec<IdentityCase> {
    use TheoremId::*;
    let base = match id {
        T3_1 => one(id, E5),
        T3_2 => one(id, E7),
        T3_3 => one(id, O7),
        T3_4 => one(id, O4),
        T3_5 => pair(id, E5, E8),
        T3_6 => pair(id, O3, O4),
        T3_7 => pair(id, E5, O3),
        T3_8 => pair(id, O3, E5),
        C3_5 => one(id, E5),
        C3_6 => one(id, O3),
        P1_1 => IdentityCase::new(id),
        C3_1 | C3_2 | C3_3 | C3_4 => {
            let chars = match id {
                C3_1 => [E5, E8, E7],
                C3_2 => [E5, E8, E7B],
                C3_3 => [O7, O3, O5],
                _ => [O4, O3, O7R],
            };
            return chars.iter().zip([0.21, 0.37, 0.55]).map(|(&c, x)| one(id, c).x(x)).collect();
        }
        _ => unreachable!(),
    };
    let x = if id == P1_1 { 0.7 } else { COHEN_X };
    COHEN_NU
        .iter()
        .flat_map(|&nu| COHEN_N.iter().map(move |&n| (nu, n)))
        .map(|(nu, n)| base.clone().nu(nu).x(x).big_n(n))
        .collect()
}

/// Test functions and intervals of the Voronoi grid.
pub const VORONOI_INTERVALS: [(f64, f64); 2] = [(0.5, 3.4), (1.3, 5.7)];
pub const VORONOI_NU: f64 = 0.25;

fn voronoi_cases(id: TheoremId) -> Vec<IdentityCase> {
    use TheoremId::*;
    let base = match id {
        T4_1 | T4_2 => one(id, E5),
        T4_3 | T4_4 => one(id, O3),
        T4_5 => pair(id, E5, E5),
        T4_6 => pair(id, O3, O4),
        T4_7 => pair(id, E5, O3),
        T4_8 => pair(id, O3, E5),
        C4_1 => one(id, E5),
        C4_2 => one(id, O3),
        _ => unreachable!(),
    };
    let base = base.nu(VORONOI_NU);
    if matches!(id, C4_1 | C4_2) {
        // the corollaries only at the three test functions on the first interval
        let (a, b) = VORONOI_INTERVALS[0];
        return TestFunction::ALL.iter().map(|&f| base.clone().interval(a, b).test_fn(f)).collect();
    }
    TestFunction::ALL
        .iter()
        .flat_map(|&f| VORONOI_INTERVALS.iter().map(move |&(a, b)| (f, a, b)))
        .map(|(f, a, b)| base.clone().interval(a, b).test_fn(f))
        .collect()
}

/// The registered parameter points of one theorem (at least three each).
pub fn default_cases(id: TheoremId) -> Vec<IdentityCase> {
    match id.family() {
        Family::Integer => integer_cases(id),
        Family::Cohen => cohen_cases(id),
        Family::Voronoi => voronoi_cases(id),
    }
}

/// Verifies every registered case of the selected theorems concurrently.
/// Failures, including cases that raise, are reported rather than thrown;
/// the output is in registry order regardless of scheduling.
pub fn run_suite(filter: &SuiteFilter, tol: &TolProfile) -> Vec<VerificationReport> {
    let cases: Vec<IdentityCase> =
        TheoremId::ALL.iter().filter(|&&t| filter.matches(t)).flat_map(|&t| default_cases(t)).collect();
    run_cases(&cases, tol)
}

/// Verifies the given cases concurrently, in input order.
pub fn run_cases(cases: &[IdentityCase], tol: &TolProfile) -> Vec<VerificationReport> {
    cases
        .par_iter()
        .map(|case| {
            let t = tol.for_theorem(case.theorem);
            let t0 = Instant::now();
            verify(case, t).unwrap_or_else(|e| VerificationReport::failed(case, t, &e, t0.elapsed()))
        })
        .collect()
}

/// One JSON record per line.
pub fn reports_to_jsonl(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

/// A single JSON document holding the summary and every record.
pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        summary: SuiteSummary,
        results: &'a [VerificationReport],
    }
    serde_json::to_string_pretty(&Doc { summary: SuiteSummary::of(reports), results: reports }).expect("reports serialize")
}

/// L(1, χ) for one real primitive non-principal character.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityEntry {
    pub q: u64,
    pub index: usize,
    pub parity: Parity,
    pub value: f64,
}

/// L(1, χ) for every real primitive non-principal χ with modulus 3 ≤ q ≤ q_max.
pub fn positivity_scan(q_max: u64) -> Result<Vec<PositivityEntry>> {
    if q_max < 3 {
        return Err(Error::Domain(format!("positivity scan needs q_max ≥ 3, got {q_max}")));
    }
    let mut out = Vec::new();
    for q in 3..=q_max {
        for c in primitive_characters(q, None)? {
            if c.is_real() && !c.is_principal() {
                let v = l_real(1.0, &c)?;
                out.push(PositivityEntry { q, index: c.index(), parity: c.parity(), value: v.re });
            }
        }
    }
    Ok(out)
}
