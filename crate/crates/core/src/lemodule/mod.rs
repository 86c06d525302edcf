//! Integer linear algebra for candidate Lê modules: a boundary map
//! `D: Z^lambda1 -> Z^lambda0` with monodromies `A0`, `A1`, and the
//! cohomology its kernel and cokernel would give.
//!
//! Nothing here constructs these maps from a polynomial; candidates are only
//! checked for consistency.

mod intpoly;
mod matrix;
mod snf;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::classify::{is_prime, NotPrime};

pub use intpoly::{
    char_poly, cyclotomic, cyclotomic_factor, cyclotomic_indices, euler_phi, moebius, possible_char_polys, IntPoly,
};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SnfResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeModuleError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error(transparent)]
    NotPrime(#[from] NotPrime),
    #[error("cannot read matrix: {0}")]
    Parse(String),
}

/// Serde helpers writing big integers as decimal strings.
pub(crate) mod big {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn one<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelCokernel {
    pub kernel_rank: usize,
    pub cokernel_free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    #[serde(serialize_with = "big::vec")]
    pub torsion: Vec<BigInt>,
}

impl KernelCokernel {
    /// Number of cyclic summands of `p`-power order.
    pub fn tau(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.torsion.iter().filter(|d| (*d % &p).is_zero()).count()
    }
}

/// Kernel rank and cokernel of `D` acting on column vectors.
pub fn kernel_cokernel(d: &IntegerMatrix) -> KernelCokernel {
    let snf = smith_normal_form(d);
    let rank = snf.rank();
    KernelCokernel {
        kernel_rank: d.cols() - rank,
        cokernel_free_rank: d.rows() - rank,
        torsion: snf.diag.iter().filter(|x| **x > BigInt::one()).cloned().collect(),
    }
}

/// Rank over the field with `p` elements.
pub fn mod_p_rank(a: &IntegerMatrix, p: u64) -> Result<usize, LeModuleError> {
    if !is_prime(p) {
        return Err(NotPrime(p).into());
    }
    let pb = BigInt::from(p);
    let p = p as u128;
    let mut m: Vec<Vec<u128>> = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|e| {
                    let r = ((e % &pb) + &pb) % &pb;
                    u128::try_from(r).unwrap()
                })
                .collect()
        })
        .collect();
    let inv = |x: u128| -> u128 {
        // Fermat
        let (mut base, mut e, mut acc) = (x % p, p - 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..a.cols() {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let scale = inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = *x * scale % p;
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Mod-`p` dimensions next to the values the integral groups predict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UctRow {
    pub p: u64,
    pub rank_mod_p: usize,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    pub tau: usize,
    /// `kernel_dim = kernel_rank + tau` and `cokernel_dim = cokernel_free_rank + tau`.
    pub consistent: bool,
}

pub fn uct_table(d: &IntegerMatrix, kc: &KernelCokernel, primes: &[u64]) -> Result<Vec<UctRow>, LeModuleError> {
    primes
        .iter()
        .map(|&p| {
            let rank_mod_p = mod_p_rank(d, p)?;
            let kernel_dim = d.cols() - rank_mod_p;
            let cokernel_dim = d.rows() - rank_mod_p;
            let tau = kc.tau(p);
            Ok(UctRow {
                p,
                rank_mod_p,
                kernel_dim,
                cokernel_dim,
                tau,
                consistent: kernel_dim == kc.kernel_rank + tau && cokernel_dim == kc.cokernel_free_rank + tau,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceCheck {
    #[serde(serialize_with = "big::one")]
    pub expected: BigInt,
    #[serde(serialize_with = "big::one")]
    pub actual: BigInt,
    pub ok: bool,
}

impl TraceCheck {
    fn new(expected: BigInt, actual: BigInt) -> Self {
        let ok = expected == actual;
        TraceCheck { expected, actual, ok }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPolyCheck {
    pub char_poly: IntPoly,
    /// Cyclotomic indices, or `None` when not a product of cyclotomics.
    pub cyclotomic: Option<Vec<u64>>,
    pub ok: bool,
}

impl CharPolyCheck {
    fn of(a: &IntegerMatrix) -> Result<Self, LeModuleError> {
        let char_poly = char_poly(a)?;
        let cyclotomic = cyclotomic_factor(&char_poly);
        Ok(CharPolyCheck {
            ok: cyclotomic.is_some(),
            char_poly,
            cyclotomic,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateReport {
    pub lambda0: usize,
    pub lambda1: usize,
    /// `D A1 = A0 D`
    pub commutes: bool,
    pub trace_alpha0: TraceCheck,
    pub trace_alpha1: TraceCheck,
    pub alpha0: CharPolyCheck,
    pub alpha1: CharPolyCheck,
    /// `m - 1 <= lambda0`
    pub multiplicity_bound: bool,
    /// When `m - 1 = lambda0`: whether `A0` has characteristic polynomial
    /// `(t-1)^lambda0` or `(t+1)^lambda0`.
    pub equality_case: Option<bool>,
    pub kernel_cokernel: KernelCokernel,
    pub uct: Vec<UctRow>,
}

impl CandidateReport {
    pub fn all_ok(&self) -> bool {
        self.commutes
            && self.trace_alpha0.ok
            && self.trace_alpha1.ok
            && self.alpha0.ok
            && self.alpha1.ok
            && self.multiplicity_bound
            && self.equality_case != Some(false)
            && self.uct.iter().all(|r| r.consistent)
    }
}

/// Every necessary condition on `(D, A0, A1)` for multiplicity `m` of the
/// critical locus in ambient dimension `n + 1`.
pub fn verify_le_module_candidate(
    d: &IntegerMatrix,
    a0: &IntegerMatrix,
    a1: &IntegerMatrix,
    m: u64,
    n: u64,
    primes: &[u64],
) -> Result<CandidateReport, LeModuleError> {
    let (l0, l1) = (d.rows(), d.cols());
    if a0.rows() != l0 || a0.cols() != l0 {
        return Err(LeModuleError::ShapeMismatch(format!(
            "A0 is {}x{}, D has {l0} rows",
            a0.rows(),
            a0.cols()
        )));
    }
    if a1.rows() != l1 || a1.cols() != l1 {
        return Err(LeModuleError::ShapeMismatch(format!(
            "A1 is {}x{}, D has {l1} columns",
            a1.rows(),
            a1.cols()
        )));
    }
    let sign = if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let m_big = BigInt::from(m);
    let commutes = d.mul(a1)? == a0.mul(d)?;
    let trace_alpha0 = TraceCheck::new(&sign * (&m_big - 1), a0.trace());
    let trace_alpha1 = TraceCheck::new(&sign * &m_big, a1.trace());
    let alpha0 = CharPolyCheck::of(a0)?;
    let alpha1 = CharPolyCheck::of(a1)?;
    let multiplicity_bound = m.saturating_sub(1) <= l0 as u64;
    let equality_case = (m >= 1 && m - 1 == l0 as u64).then(|| {
        let e = l0 as u32;
        alpha0.char_poly == IntPoly::linear(1).pow(e) || alpha0.char_poly == IntPoly::linear(-1).pow(e)
    });
    let kernel_cokernel = kernel_cokernel(d);
    let uct = uct_table(d, &kernel_cokernel, primes)?;
    Ok(CandidateReport {
        lambda0: l0,
        lambda1: l1,
        commutes,
        trace_alpha0,
        trace_alpha1,
        alpha0,
        alpha1,
        multiplicity_bound,
        equality_case,
        kernel_cokernel,
        uct,
    })
}
