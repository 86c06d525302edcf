//! Splitting a one-dimensional scheme at the origin into irreducible curve
//! components over the rationals, with lengths, multiplicities at the
//! origin and branch counts over the complex numbers.

mod prime;

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factor::{factor_polynomial, univariate_factor};
use crate::ideal::{
    colength_of, gb, local_dim_of, radical_membership, saturate, Colength, IdealBasis, IdealError, LocalDim,
};
use crate::poly::{Monomial, Polynomial, VarList};
use crate::seeds;

/// Tuning for the splitter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitConfig {
    /// Largest degree of a minimal polynomial the splitter will factor.
    pub max_factor_degree: u32,
    /// Random draws per genericity-dependent step.
    pub trials: u32,
    pub seed: u64,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            max_factor_degree: 6,
            trials: 4,
            seed: seeds::DEFAULT_SEED,
        }
    }
}

/// How many complex branches a rational component splits into at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "count", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branches {
    Known(u32),
    Unknown,
}

/// One reduced irreducible curve germ through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveComponent {
    /// Reduced global basis of the prime ideal.
    pub prime: IdealBasis,
    /// Multiplicity of the component in the ambient scheme.
    pub length: u64,
    pub mult_origin: u64,
    pub branches: Branches,
}

/// What the splitter set aside.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitDiagnostics {
    /// Components (or pieces) that do not pass through the origin.
    pub discarded: Vec<IdealBasis>,
    /// Pieces that could not be split into primes.
    pub residual: Vec<IdealBasis>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub components: Vec<CurveComponent>,
    pub input: Vec<Polynomial>,
    pub diagnostics: SplitDiagnostics,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("the scheme is not a curve at the origin (local dimension {0:?})")]
    NotCurve(LocalDim),
    #[error("could not split every piece into prime components")]
    SplitIncomplete(Box<CycleDecomposition>),
    #[error("random linear forms never agreed on a generic value")]
    GenericTrialFailed,
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

fn random_linear(vars: &VarList, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = vars.len();
    Polynomial::from_terms(
        vars.clone(),
        (0..n).map(|i| {
            let c: i64 = rng.gen_range(1..=30) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (Monomial::var(n, i), BigRational::from_integer(c.into()))
        }),
    )
}

fn random_combination(gens: &[Polynomial], rng: &mut ChaCha8Rng) -> Polynomial {
    gens.iter().fold(Polynomial::zero(gens[0].vars().clone()), |acc, g| {
        let c: i64 = rng.gen_range(1..=30) * if rng.gen_bool(0.5) { 1 } else { -1 };
        acc.add(&g.scale(&BigRational::from_integer(c.into())))
    })
}

fn with(gens: &[Polynomial], extra: &Polynomial) -> Vec<Polynomial> {
    let mut v = gens.to_vec();
    v.push(extra.clone());
    v
}

/// Cover `V(I)` by pieces whose reduced bases have no reducible generator.
fn factor_pieces(vars: &VarList, gens: &[Polynomial]) -> Vec<IdealBasis> {
    let mut stack = vec![gb(vars, gens)];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while let Some(basis) = stack.pop() {
        if basis.is_unit() || !seen.insert(basis_key(&basis)) {
            continue;
        }
        let split = basis.generators().iter().find_map(|g| {
            let f = factor_polynomial(g).ok()?;
            (!f.is_irreducible() && !f.factors.is_empty()).then_some(f.factors)
        });
        match split {
            Some(factors) => {
                for (f, _) in factors {
                    stack.push(gb(vars, &with(basis.generators(), &f)));
                }
            }
            None => out.push(basis),
        }
    }
    out
}

fn basis_key(b: &IdealBasis) -> Vec<String> {
    b.generators().iter().map(|g| g.to_string()).collect()
}

/// Split the scheme `V(gens)` into its one-dimensional components through
/// the origin.
pub fn split_components(gens: &[Polynomial], config: &SplitConfig) -> Result<CycleDecomposition, SplitError> {
    let input = IdealBasis::new(gens.to_vec(), crate::poly::MonomialOrder::GlobalDegrevlex)?;
    let vars = input.vars().clone();
    let n = vars.len();
    match local_dim_of(n, gens) {
        LocalDim::Dim(1) => {}
        other => return Err(SplitError::NotCurve(other)),
    }
    let mut diagnostics = SplitDiagnostics {
        seed: config.seed,
        ..Default::default()
    };
    let mut rng = seeds::stream(config.seed, "split/projection");

    let mut primes: Vec<IdealBasis> = Vec::new();
    for piece in factor_pieces(&vars, gens) {
        match local_dim_of(n, piece.generators()) {
            LocalDim::Dim(1) => {}
            LocalDim::Empty => {
                diagnostics.discarded.push(piece);
                continue;
            }
            LocalDim::Dim(_) => continue,
        }
        match prime::curve_primes(&piece, config.max_factor_degree, config.trials, &mut rng) {
            prime::Primes::Found(ps) => {
                for p in ps {
                    if !primes.contains(&p) && !diagnostics.discarded.contains(&p) {
                        if local_dim_of(n, p.generators()) == LocalDim::Dim(1) {
                            primes.push(p);
                        } else {
                            diagnostics.discarded.push(p);
                        }
                    }
                }
            }
            prime::Primes::TooLarge(r) | prime::Primes::NotGeneric(r) => diagnostics.residual.push(r),
        }
    }
    primes.sort_by_key(basis_key);

    let whole = gb(&vars, gens);
    let mut components = Vec::new();
    for (i, p) in primes.iter().enumerate() {
        let mult_origin = multiplicity_at_origin(p, config)?;
        let others: Vec<&IdealBasis> = primes
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q)
            .collect();
        let mut rng = seeds::stream(config.seed, &format!("split/length/{}", basis_key(p).join(",")));
        let length = component_length(&whole, p, &others, mult_origin, config.trials, &mut rng)?;
        components.push(CurveComponent {
            prime: p.clone(),
            length,
            mult_origin,
            branches: geometric_branch_count(p, mult_origin),
        });
    }
    let decomposition = CycleDecomposition {
        components,
        input: gens.to_vec(),
        diagnostics,
    };
    if decomposition.diagnostics.residual.is_empty() {
        Ok(decomposition)
    } else {
        Err(SplitError::SplitIncomplete(Box::new(decomposition)))
    }
}

/// Length of the scheme along `p`: the intersection number of the part of
/// the scheme supported on `p` with a hyperplane, divided by that of `p`.
fn component_length(
    whole: &IdealBasis,
    p: &IdealBasis,
    others: &[&IdealBasis],
    mult_origin: u64,
    trials: u32,
    rng: &mut ChaCha8Rng,
) -> Result<u64, SplitError> {
    let vars = whole.vars().clone();
    let n = vars.len();
    let mut found: Option<u64> = None;
    for _ in 0..4 * trials.max(2) {
        // Remove embedded points at the origin and the other components.
        let mut removing = random_linear(&vars, rng);
        let mut ok = !radical_membership(&removing, p)?;
        for q in others {
            let g = random_combination(q.generators(), rng);
            ok &= !radical_membership(&g, p)?;
            removing = removing.mul(&g);
        }
        if !ok {
            continue;
        }
        let part = saturate(whole, &removing)?;
        let ell = random_linear(&vars, rng);
        let (Colength::Finite(on_p), Colength::Finite(on_part)) = (
            colength_of(n, &with(p.generators(), &ell)),
            colength_of(n, &with(part.generators(), &ell)),
        ) else {
            continue;
        };
        if on_p != mult_origin || on_part % on_p != 0 {
            continue;
        }
        let ratio = on_part / on_p;
        match found {
            Some(r) if r == ratio => return Ok(r),
            Some(_) => return Err(SplitError::GenericTrialFailed),
            None => found = Some(ratio),
        }
    }
    Err(SplitError::GenericTrialFailed)
}

/// Multiplicity at the origin of the curve `V(prime)`: the least
/// intersection number with a hyperplane through the origin, confirmed by
/// two draws.
pub fn multiplicity_at_origin(prime: &IdealBasis, config: &SplitConfig) -> Result<u64, SplitError> {
    let vars = prime.vars().clone();
    let mut rng = seeds::stream(config.seed, &format!("split/mult/{}", basis_key(prime).join(",")));
    let wanted = config.trials.max(2) as usize;
    let values: Vec<u64> = (0..4 * wanted)
        .filter_map(|_| {
            let ell = random_linear(&vars, &mut rng);
            colength_of(vars.len(), &with(prime.generators(), &ell)).finite()
        })
        .take(wanted)
        .collect();
    let least = values.iter().copied().min().ok_or(SplitError::GenericTrialFailed)?;
    if least == 0 || values.iter().filter(|&&v| v == least).count() < 2 {
        return Err(SplitError::GenericTrialFailed);
    }
    Ok(least)
}

/// Number of complex branches at the origin of the rational curve
/// `V(prime)`, when it can be read off: smooth curves, plane curves with
/// an ordinary singular point, and binomial plane curves.
pub fn geometric_branch_count(prime: &IdealBasis, mult_origin: u64) -> Branches {
    if mult_origin == 1 {
        return Branches::Known(1);
    }
    let basis = gb(prime.vars(), prime.generators());
    let n = basis.nvars();
    let mut pivots = BTreeSet::new();
    let mut curved = Vec::new();
    for g in basis.generators() {
        if g.total_degree() == 1 {
            let (m, _) = g.leading_term(crate::poly::MonomialOrder::GlobalDegrevlex).unwrap();
            pivots.insert(m.support().next().unwrap());
        } else {
            curved.push(g);
        }
    }
    let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let [h] = curved.as_slice() else {
        return Branches::Unknown;
    };
    let &[a, b] = free.as_slice() else {
        return Branches::Unknown;
    };
    if let Some(k) = binomial_branches(h, a, b) {
        return Branches::Known(k);
    }
    match ordinary_point_branches(h, a, b) {
        Some(k) => Branches::Known(k),
        None => Branches::Unknown,
    }
}

/// `c1 a^p + c2 b^q` has `gcd(p, q)` branches.
fn binomial_branches(h: &Polynomial, a: usize, b: usize) -> Option<u32> {
    let terms: Vec<&Monomial> = h.terms().map(|(m, _)| m).collect();
    let [m1, m2] = terms.as_slice() else { return None };
    let pure = |m: &Monomial, v: usize| m.support().all(|i| i == v) && m.exponent(v) > 0;
    let (p, q) = if pure(m1, a) && pure(m2, b) {
        (m1.exponent(a), m2.exponent(b))
    } else if pure(m1, b) && pure(m2, a) {
        (m2.exponent(a), m1.exponent(b))
    } else {
        return None;
    };
    Some(p.gcd(&q))
}

/// If the tangent cone of `h` at the origin is a binary form without
/// repeated factors over the complex numbers, its degree is the number of
/// branches.
fn ordinary_point_branches(h: &Polynomial, a: usize, b: usize) -> Option<u32> {
    let d = h.order_at_origin();
    let cone = Polynomial::from_terms(
        h.vars().clone(),
        h.terms()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone())),
    );
    let one = Polynomial::one(h.vars().clone());
    let dehom = cone.substitute(b, &one).ok()?;
    // b^2 dividing the cone means a repeated tangent along a = 0.
    if dehom.degree_in(a) + 1 < d {
        return None;
    }
    let f = univariate_factor(&dehom).ok()?;
    f.factors.iter().all(|(_, e)| *e == 1).then_some(d)
}
