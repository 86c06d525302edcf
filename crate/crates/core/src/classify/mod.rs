//! Admissible integral cohomology of the Milnor fiber from the Lê numbers
//! and the coarse invariants of the critical locus.
//!
//! Reduced cohomology lives in degrees `n-1` and `n`. A profile records the
//! free ranks `b_nm1`, `b_n` and what is allowed for the torsion of the top
//! group (the lower group is always free).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::components::Branches;
use crate::le::{Interval, LeAnalysis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0} is not prime")]
pub struct NotPrime(pub u64);

/// Which primes may occur in the torsion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PrimeRule {
    #[serde(rename = "ALL")]
    All,
    /// Only 3 and primes congruent to 1 mod 6.
    #[serde(rename = "RULE_3_OR_1_MOD_6")]
    ThreeOrOneModSix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TorsionDescriptor {
    None,
    /// Torsion is `Z/bZ` for some `b >= 1`, every prime dividing `b`
    /// obeying the rule.
    SingleCyclic {
        allowed_primes: PrimeRule,
    },
    /// At most `bound - 1` cyclic summands of `p`-power order, for every
    /// prime `p`.
    Bounded {
        bound: u64,
        allowed_primes: PrimeRule,
    },
}

impl TorsionDescriptor {
    /// Normal form for "fewer than `bound` p-primary summands for each p".
    pub fn from_bound(bound: u64, allowed_primes: PrimeRule) -> Self {
        match bound {
            0 | 1 => TorsionDescriptor::None,
            2 => TorsionDescriptor::SingleCyclic { allowed_primes },
            _ => TorsionDescriptor::Bounded { bound, allowed_primes },
        }
    }

    /// Strict upper bound on the number of `p`-primary summands.
    pub fn bound(&self) -> u64 {
        match self {
            TorsionDescriptor::None => 1,
            TorsionDescriptor::SingleCyclic { .. } => 2,
            TorsionDescriptor::Bounded { bound, .. } => *bound,
        }
    }

    pub fn prime_rule(&self) -> Option<PrimeRule> {
        match self {
            TorsionDescriptor::None => None,
            TorsionDescriptor::SingleCyclic { allowed_primes } | TorsionDescriptor::Bounded { allowed_primes, .. } => {
                Some(*allowed_primes)
            }
        }
    }
}

impl fmt::Display for TorsionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes = |r: &PrimeRule| match r {
            PrimeRule::All => "any primes",
            PrimeRule::ThreeOrOneModSix => "primes 3 or 1 mod 6",
        };
        match self {
            TorsionDescriptor::None => write!(f, "none"),
            TorsionDescriptor::SingleCyclic { allowed_primes } => write!(f, "cyclic Z/b, {}", primes(allowed_primes)),
            TorsionDescriptor::Bounded { bound, allowed_primes } => {
                write!(
                    f,
                    "fewer than {bound} p-primary summands per prime, {}",
                    primes(allowed_primes)
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyProfile {
    /// Rank of reduced cohomology in degree `n-1`.
    pub b_nm1: u64,
    /// Free rank of reduced cohomology in degree `n`.
    pub b_n: u64,
    pub torsion: TorsionDescriptor,
    /// Labels of the rules that produced or refined this profile.
    pub source: Vec<String>,
    /// No singularity realizing these Lê numbers is known.
    pub open_example: bool,
    pub notes: Vec<String>,
}

/// Everything the classifier looks at. Optional fields widen the answer
/// when absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyInput {
    pub lambda0: u64,
    pub lambda1: u64,
    /// Multiplicity at the origin of the reduced critical locus.
    pub m: Option<u64>,
    /// Number of local irreducible components of the critical locus.
    pub r: Option<Interval>,
    /// Generic transversal Milnor numbers, one per local component.
    pub mu: Option<Vec<u64>>,
    pub n: Option<usize>,
}

impl ClassifyInput {
    pub fn new(lambda0: u64, lambda1: u64) -> Self {
        ClassifyInput {
            lambda0,
            lambda1,
            ..Default::default()
        }
    }

    /// Invariants of an analysis. The transversal Milnor numbers are listed
    /// per local branch, so they are only passed on when every branch count
    /// is known.
    pub fn from_analysis(a: &LeAnalysis) -> Self {
        let mut mu = Some(Vec::new());
        for c in &a.lambda1_cycle {
            match (&mut mu, c.component.branches) {
                (Some(list), Branches::Known(k)) => list.extend(std::iter::repeat_n(c.mu(), k as usize)),
                _ => mu = None,
            }
        }
        ClassifyInput {
            lambda0: a.lambda0,
            lambda1: a.lambda1,
            m: a.m,
            r: Some(a.r),
            mu,
            n: Some(a.n),
        }
    }

    fn r_exact(&self) -> Option<u64> {
        self.r.and_then(|r| r.as_exact())
    }

    fn mu_total(&self) -> Option<u64> {
        self.mu.as_ref().map(|v| v.iter().sum())
    }
}

pub const CONSTANT_FAMILY: &str = "constant-milnor-family";
pub const SIMPLE_LINE: &str = "simple-transversal-line";
pub const UNIT_POLAR: &str = "unit-polar-number";
pub const RANK_TWO_LE: &str = "rank-two-le-module";
pub const RANK_TWO_POLAR: &str = "rank-two-polar-module";
pub const EQUAL_THREES: &str = "equal-le-numbers-three";
pub const ENVELOPE: &str = "betti-bound-envelope";
pub const TRACE_REFINEMENT: &str = "monodromy-trace-refinement";
pub const SLICE_BOUND: &str = "transversal-milnor-bound";
pub const LEFSCHETZ_EXCLUSION: &str = "lefschetz-exclusion";

fn invalid(msg: &str) -> ClassifyError {
    ClassifyError::InvalidInput(msg.into())
}

fn inconsistent(msg: &str) -> ClassifyError {
    ClassifyError::Inconsistent(msg.into())
}

fn check(input: &ClassifyInput) -> Result<(), ClassifyError> {
    let (l0, l1) = (input.lambda0, input.lambda1);
    if l1 == 0 {
        return Err(invalid("lambda1 must be positive for a one-dimensional critical locus"));
    }
    if input.m == Some(0) {
        return Err(invalid("m must be positive"));
    }
    if let Some(r) = input.r {
        if r.lo > r.hi || r.hi == 0 {
            return Err(invalid("r must be a non-empty range of positive integers"));
        }
    }
    if let Some(mu) = &input.mu {
        if mu.is_empty() || mu.contains(&0) {
            return Err(invalid("transversal Milnor numbers must be positive and non-empty"));
        }
    }

    // Each component meets the hyperplane in its multiplicity and carries a
    // positive Milnor number, so r <= m <= lambda1.
    if let Some(m) = input.m {
        if m > l1 {
            return Err(inconsistent("m exceeds lambda1"));
        }
        if l0 > 0 && m - 1 > l0 {
            return Err(inconsistent("m - 1 exceeds lambda0"));
        }
        if input.r.is_some_and(|r| r.lo > m) {
            return Err(inconsistent("more components than the multiplicity allows"));
        }
    }
    if input.r.is_some_and(|r| r.lo > l1) {
        return Err(inconsistent("more components than lambda1 allows"));
    }
    if let Some(mu) = &input.mu {
        if input.mu_total().unwrap() > l1 {
            return Err(inconsistent("transversal Milnor numbers sum past lambda1"));
        }
        let k = mu.len() as u64;
        if input.r.is_some_and(|r| !r.contains(k)) || input.m.is_some_and(|m| k > m) {
            return Err(inconsistent(
                "number of transversal Milnor numbers does not match the components",
            ));
        }
    }

    if l0 == 0 {
        if input.m.is_some_and(|m| m != 1) || input.r.is_some_and(|r| !r.contains(1)) {
            return Err(inconsistent("lambda0 = 0 forces a smooth critical locus"));
        }
        if input.mu_total().is_some_and(|s| s != l1) {
            return Err(inconsistent(
                "lambda0 = 0 forces the transversal Milnor number to be lambda1",
            ));
        }
    }
    if l1 == 1 && l0 == 1 {
        return Err(inconsistent("lambda1 = 1 forces lambda0 >= 2 or lambda0 = 0"));
    }
    if l0 == 1 && l1 >= 2 {
        if input.m.is_some_and(|m| m != 2) {
            return Err(inconsistent("lambda0 = 1 forces m = 2"));
        }
        if l1 >= 3 && input.r_exact() == Some(1) {
            return Err(inconsistent(
                "lambda0 = 1 with an irreducible critical locus forces lambda1 = 2",
            ));
        }
    }
    if l1 == 2 && l0 == 2 {
        return Err(inconsistent("lambda1 = 2 forces lambda0 >= 3 or lambda0 <= 1"));
    }
    if l0 == 3 && l1 == 3 && input.r_exact() == Some(1) && input.m.is_some_and(|m| m != 1) {
        return Err(inconsistent(
            "lambda0 = lambda1 = 3 with an irreducible critical locus forces m = 1",
        ));
    }
    Ok(())
}

fn profile(b_nm1: u64, b_n: u64, torsion: TorsionDescriptor, source: &str) -> CohomologyProfile {
    CohomologyProfile {
        b_nm1,
        b_n,
        torsion,
        source: vec![source.to_string()],
        open_example: false,
        notes: Vec::new(),
    }
}

fn single_cyclic(rule: PrimeRule) -> TorsionDescriptor {
    TorsionDescriptor::SingleCyclic { allowed_primes: rule }
}

/// The complete list of admissible profiles, ordered by `b_nm1`.
pub fn classify(input: &ClassifyInput) -> Result<Vec<CohomologyProfile>, ClassifyError> {
    check(input)?;
    let (l0, l1, m) = (input.lambda0, input.lambda1, input.m);
    let mut out = match (l0, l1) {
        (0, _) => vec![profile(l1, 0, TorsionDescriptor::None, CONSTANT_FAMILY)],
        (_, 1) => vec![profile(0, l0 - 1, TorsionDescriptor::None, SIMPLE_LINE)],
        (1, _) => {
            let mut p = profile(l1 - 1, 0, TorsionDescriptor::None, UNIT_POLAR);
            p.open_example = true;
            p.notes.push("mult_0 f = 2 and m = 2".into());
            if l1 == 2 {
                p.notes.push(
                    "if the critical locus is irreducible, its vertical monodromy must be the identity (not computed)"
                        .into(),
                );
            }
            vec![p]
        }
        (_, 2) => {
            if m == Some(1) {
                let mut p = profile(0, l0 - 2, single_cyclic(PrimeRule::ThreeOrOneModSix), RANK_TWO_LE);
                p.source.push(TRACE_REFINEMENT.into());
                vec![p]
            } else {
                vec![
                    profile(0, l0 - 2, single_cyclic(PrimeRule::All), RANK_TWO_LE),
                    profile(1, l0 - 1, TorsionDescriptor::None, RANK_TWO_LE),
                ]
            }
        }
        (2, _) => {
            if m == Some(2) {
                let mut p = profile(l1 - 2, 0, single_cyclic(PrimeRule::ThreeOrOneModSix), RANK_TWO_POLAR);
                p.source.push(TRACE_REFINEMENT.into());
                vec![p]
            } else {
                vec![
                    profile(l1 - 2, 0, single_cyclic(PrimeRule::All), RANK_TWO_POLAR),
                    profile(l1 - 1, 1, TorsionDescriptor::None, RANK_TWO_POLAR),
                ]
            }
        }
        (3, 3) => {
            let mut p = profile(2, 2, TorsionDescriptor::None, EQUAL_THREES);
            p.open_example = true;
            if input.r_exact() == Some(1) {
                p.notes
                    .push("the critical locus is smooth and transversal to the hyperplane".into());
            }
            vec![p]
        }
        _ => envelope(l0, l1),
    };

    if let Some(total) = input.mu_total() {
        out.retain(|p| p.b_nm1 <= total);
        for p in &mut out {
            p.source.push(SLICE_BOUND.into());
        }
        if out.is_empty() {
            return Err(inconsistent("no profile fits under the transversal Milnor numbers"));
        }
    }
    out.sort_by_key(|p| (p.b_nm1, p.b_n));
    Ok(out)
}

/// Betti bounds alone: `b_nm1 - b_n = lambda1 - lambda0`, both strictly
/// below the corresponding Lê number together with any torsion count, and
/// equal Lê numbers exclude `b_nm1 < 2`.
fn envelope(l0: u64, l1: u64) -> Vec<CohomologyProfile> {
    (0..l1)
        .filter(|&b1| b1 + l0 >= l1 && (l0 != l1 || b1 >= 2))
        .map(|b1| {
            let b2 = b1 + l0 - l1;
            let mut p = profile(b1, b2, TorsionDescriptor::from_bound(l1 - b1, PrimeRule::All), ENVELOPE);
            if l0 == l1 {
                p.source.push(LEFSCHETZ_EXCLUSION.into());
            }
            p
        })
        .collect()
}

/// Kernel minus cokernel rank of a `lambda1 -> lambda0` map.
pub fn euler_consistency(profile: &CohomologyProfile, lambda0: u64, lambda1: u64) -> bool {
    profile.b_nm1 as i128 - profile.b_n as i128 == lambda1 as i128 - lambda0 as i128
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Whether `p` may divide torsion constrained by a monodromy with
/// characteristic polynomial `t^2 +- t + 1`.
pub fn prime_allowed(p: u64) -> Result<bool, NotPrime> {
    if !is_prime(p) {
        return Err(NotPrime(p));
    }
    Ok(p == 3 || p % 6 == 1)
}

/// Degree labels for reports.
pub fn degree_labels(n: usize) -> (String, String) {
    (format!("H^{}", n.saturating_sub(1)), format!("H^{n}"))
}

#[cfg(test)]
mod tests;
