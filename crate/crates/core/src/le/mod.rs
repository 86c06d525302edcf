//! From a polynomial to its polar curve, Lê cycle and Lê numbers, with the
//! genericity checks on the distinguished coordinate (variable 0).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::components::{split_components, Branches, CurveComponent, SplitConfig, SplitDiagnostics, SplitError};
use crate::ideal::{colength_of, local_dim_of, radical_membership, Colength, IdealError, LocalDim};
use crate::poly::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeError {
    #[error("need at least 3 variables, got {0}")]
    TooFewVariables(usize),
    #[error("the polynomial is constant")]
    Constant,
    #[error("the hypersurface is smooth at the origin")]
    Smooth,
    #[error("the critical locus has local dimension {0} at the origin, not 1")]
    DimNotOne(usize),
    #[error("the distinguished coordinate is not generic: {reason}")]
    NotGeneric {
        reason: String,
        genericity: GenericityReport,
    },
    #[error("a polar component does not meet the polar hypersurface properly")]
    ImproperIntersection,
    #[error("splitting components: {0}")]
    Split(SplitError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

impl From<SplitError> for LeError {
    fn from(e: SplitError) -> Self {
        LeError::Split(e)
    }
}

/// The hypotheses on the distinguished coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    /// The hyperplane slice has an isolated critical point.
    pub slice_isolated: bool,
    /// Per Lê component: it meets the hyperplane with its multiplicity.
    pub transversal_ok: Vec<bool>,
    /// The partial Jacobian scheme is a curve at the origin.
    pub jacobian_dim_ok: bool,
}

impl GenericityReport {
    pub fn all_ok(&self) -> bool {
        self.slice_isolated && self.jacobian_dim_ok && self.transversal_ok.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarComponent {
    pub component: CurveComponent,
    /// Intersection number with the hypersurface of the first partial.
    pub polar_meet: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeComponent {
    pub component: CurveComponent,
    /// Intersection number with the hyperplane of the first coordinate.
    pub hyperplane_meet: u64,
}

impl LeComponent {
    pub fn mu(&self) -> u64 {
        self.component.length
    }
}

/// Inclusive integer interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: u64,
    pub hi: u64,
}

impl Interval {
    pub fn exact(v: u64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn as_exact(&self) -> Option<u64> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeAnalysis {
    pub gamma1: Vec<PolarComponent>,
    pub lambda1_cycle: Vec<LeComponent>,
    pub lambda0: u64,
    pub lambda1: u64,
    /// Multiplicity of the reduced critical locus; `None` when some Lê
    /// component is not transversal to the hyperplane.
    pub m: Option<u64>,
    /// Number of components of the critical locus over the complex numbers.
    pub r: Interval,
    /// Ambient dimension minus one.
    pub n: usize,
    pub genericity: GenericityReport,
    pub diagnostics: SplitDiagnostics,
}

impl LeAnalysis {
    pub fn is_valid(&self) -> bool {
        self.genericity.all_ok()
    }

    pub fn mu(&self) -> Vec<u64> {
        self.lambda1_cycle.iter().map(LeComponent::mu).collect()
    }

    /// `m - 1 <= lambda0` when both are known and `lambda0 > 0`.
    pub fn trace_bound_holds(&self) -> Option<bool> {
        match self.m {
            Some(m) if self.lambda0 > 0 => Some(m <= self.lambda0 + 1),
            _ => None,
        }
    }
}

/// The partials with respect to `z_1..z_n` and with respect to all
/// variables.
pub fn jacobian_scheme(f: &Polynomial) -> Result<(Vec<Polynomial>, Vec<Polynomial>), LeError> {
    let nv = f.nvars();
    if nv < 2 {
        return Err(LeError::TooFewVariables(nv));
    }
    if f.is_constant() {
        return Err(LeError::Constant);
    }
    let full: Vec<Polynomial> = (0..nv)
        .map(|i| f.partial_derivative(i).expect("index in range"))
        .collect();
    let partial = full[1..].to_vec();
    match local_dim_of(nv, &full) {
        LocalDim::Empty => return Err(LeError::Smooth),
        LocalDim::Dim(1) => {}
        LocalDim::Dim(d) => return Err(LeError::DimNotOne(d)),
    }
    Ok((partial, full))
}

fn with(gens: &[Polynomial], extra: &Polynomial) -> Vec<Polynomial> {
    let mut v = gens.to_vec();
    v.push(extra.clone());
    v
}

/// Components on which the first partial vanishes belong to the Lê cycle,
/// the others to the polar curve.
pub fn split_polar_le(
    components: Vec<CurveComponent>,
    dfdz0: &Polynomial,
) -> Result<(Vec<CurveComponent>, Vec<CurveComponent>), LeError> {
    let mut polar = Vec::new();
    let mut le = Vec::new();
    for c in components {
        if radical_membership(dfdz0, &c.prime)? {
            le.push(c);
        } else {
            polar.push(c);
        }
    }
    Ok((polar, le))
}

/// Intersection number of the polar curve with `V(dfdz0)`.
pub fn lambda0(gamma1: &[CurveComponent], dfdz0: &Polynomial) -> Result<(u64, Vec<u64>), LeError> {
    let mut total = 0;
    let mut each = Vec::new();
    for c in gamma1 {
        let k = colength_of(c.prime.nvars(), &with(c.prime.generators(), dfdz0))
            .finite()
            .ok_or(LeError::ImproperIntersection)?;
        each.push(k);
        total += c.length * k;
    }
    Ok((total, each))
}

/// Intersection number of the Lê cycle with the hyperplane `z_0 = 0`,
/// with the per-component meets. `None` if some component lies in the
/// hyperplane.
pub fn lambda1(cycle: &[CurveComponent]) -> Option<(u64, Vec<u64>)> {
    let mut total = 0;
    let mut each = Vec::new();
    for c in cycle {
        let z0 = Polynomial::var(c.prime.vars(), 0);
        let k = colength_of(c.prime.nvars(), &with(c.prime.generators(), &z0)).finite()?;
        each.push(k);
        total += c.length * k;
    }
    Some((total, each))
}

fn slice_isolated(f: &Polynomial, partial: &[Polynomial]) -> bool {
    let z0 = Polynomial::var(f.vars(), 0);
    local_dim_of(f.nvars(), &with(partial, &z0)) == LocalDim::Dim(0)
}

/// The genericity flags for a decomposition of the partial Jacobian scheme.
pub fn check_genericity(f: &Polynomial, le: &[CurveComponent]) -> GenericityReport {
    let partial: Vec<Polynomial> = (1..f.nvars())
        .map(|i| f.partial_derivative(i).expect("index in range"))
        .collect();
    let jacobian_dim_ok = local_dim_of(f.nvars(), &partial) == LocalDim::Dim(1);
    let transversal_ok = le
        .iter()
        .map(|c| {
            let z0 = Polynomial::var(c.prime.vars(), 0);
            colength_of(c.prime.nvars(), &with(c.prime.generators(), &z0)) == Colength::Finite(c.mult_origin)
        })
        .collect();
    GenericityReport {
        slice_isolated: slice_isolated(f, &partial),
        transversal_ok,
        jacobian_dim_ok,
    }
}

/// The full pipeline.
pub fn analyze(f: &Polynomial, config: &SplitConfig) -> Result<LeAnalysis, LeError> {
    let nv = f.nvars();
    if nv < 3 {
        return Err(LeError::TooFewVariables(nv));
    }
    let (partial, full) = jacobian_scheme(f)?;
    let dfdz0 = &full[0];

    let jacobian_dim_ok = local_dim_of(nv, &partial) == LocalDim::Dim(1);
    if !jacobian_dim_ok {
        return Err(LeError::NotGeneric {
            reason: "the partial Jacobian scheme is not a curve at the origin".into(),
            genericity: GenericityReport {
                slice_isolated: slice_isolated(f, &partial),
                transversal_ok: Vec::new(),
                jacobian_dim_ok,
            },
        });
    }
    let decomposition = split_components(&partial, config)?;
    let (polar, le) = split_polar_le(decomposition.components, dfdz0)?;
    let genericity = check_genericity(f, &le);

    let Some((lambda1, meets)) = lambda1(&le) else {
        return Err(LeError::NotGeneric {
            reason: "a Lê component lies in the hyperplane".into(),
            genericity,
        });
    };
    let (lambda0, polar_meets) = lambda0(&polar, dfdz0)?;

    let m = genericity.transversal_ok.iter().all(|&b| b).then(|| meets.iter().sum());
    let r = le.iter().fold(Interval::exact(0), |acc, c| {
        let (lo, hi) = match c.branches {
            Branches::Known(k) => (u64::from(k), u64::from(k)),
            Branches::Unknown => (1, c.mult_origin),
        };
        Interval {
            lo: acc.lo + lo,
            hi: acc.hi + hi,
        }
    });
    Ok(LeAnalysis {
        gamma1: polar
            .into_iter()
            .zip(polar_meets)
            .map(|(component, polar_meet)| PolarComponent { component, polar_meet })
            .collect(),
        lambda1_cycle: le
            .into_iter()
            .zip(meets)
            .map(|(component, hyperplane_meet)| LeComponent {
                component,
                hyperplane_meet,
            })
            .collect(),
        lambda0,
        lambda1,
        m,
        r,
        n: nv - 1,
        genericity,
        diagnostics: decomposition.diagnostics,
    })
}
