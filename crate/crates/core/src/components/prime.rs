//! Prime components of a curve piece by a generic linear projection.
//!
//! In coordinates `y = B x` with `B` random and unimodular, the first
//! coordinate is a Noether normalisation parameter and the second a
//! primitive element. Over the function field `K = Q(y0)` the piece becomes
//! zero-dimensional; squarefree minimal polynomials give its radical, and
//! the irreducible factors of the minimal polynomial of `y1` give its primes.
//! Contraction back to polynomials is saturation by the leading
//! coefficients of a block basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::factor::factor_polynomial;
use crate::ideal::{affine_dimension, block_basis, eliminate, gb, saturate, staircase_colength, IdealBasis};
use crate::poly::{Monomial, Polynomial, TermOrder, VarList};

const BLOCK: TermOrder = TermOrder::Block { split: 1 };

pub(crate) enum Primes {
    Found(Vec<IdealBasis>),
    /// The piece needs a factorisation beyond the degree bound.
    TooLarge(IdealBasis),
    /// No projection in the allotted trials was generic.
    NotGeneric(IdealBasis),
}

type Matrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect()
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

/// Inverse of a unitriangular integer matrix.
fn unitriangular_inverse(t: &Matrix, upper: bool) -> Matrix {
    let n = t.len();
    let mut inv = identity(n);
    let idx: Vec<usize> = if upper {
        (0..n).rev().collect()
    } else {
        (0..n).collect()
    };
    for &col in &idx {
        for &row in &idx {
            let before = if upper { row < col } else { row > col };
            if !before {
                continue;
            }
            // solve for inv[row][col] from t * inv = I
            let range: Vec<usize> = if upper {
                (row + 1..=col).collect()
            } else {
                (col..row).collect()
            };
            let s: BigInt = range.iter().map(|&k| &t[row][k] * &inv[k][col]).sum();
            inv[row][col] = -s;
        }
    }
    inv
}

/// Random unimodular `B` with its inverse.
fn random_change(n: usize, rng: &mut ChaCha8Rng) -> (Matrix, Matrix) {
    let mut u = identity(n);
    let mut l = identity(n);
    for i in 0..n {
        for j in 0..n {
            if i < j {
                u[i][j] = BigInt::from(rng.gen_range(-2i64..=2));
            } else if i > j {
                l[i][j] = BigInt::from(rng.gen_range(-2i64..=2));
            }
        }
    }
    let b = matmul(&u, &l);
    let binv = matmul(&unitriangular_inverse(&l, false), &unitriangular_inverse(&u, true));
    debug_assert_eq!(matmul(&b, &binv), identity(n));
    (b, binv)
}

fn linear_images(vars: &VarList, m: &Matrix) -> Vec<Polynomial> {
    m.iter()
        .map(|row| {
            Polynomial::from_terms(
                vars.clone(),
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (Monomial::var(vars.len(), j), BigRational::from_integer(c.clone()))),
            )
        })
        .collect()
}

/// Coefficient in `y0` of the leading monomial of `g` in the remaining
/// variables.
fn parameter_lc(g: &Polynomial) -> Polynomial {
    let n = g.nvars();
    let lead = g.leading_term_in(BLOCK).expect("nonzero").0;
    let key = &lead.exponents()[1..];
    Polynomial::from_terms(
        g.vars().clone(),
        g.terms()
            .filter(|(m, _)| &m.exponents()[1..] == key)
            .map(|(m, c)| (Monomial::var(n, 0).pow(m.exponent(0)), c.clone())),
    )
}

/// `J_K ∩ Q[y]`, together with the dimension of `K[y]/J_K` over `K`
/// (`None` if that is infinite).
fn contract(vars: &VarList, gens: &[Polynomial]) -> (IdealBasis, Option<u64>) {
    let block = block_basis(vars, gens, 1);
    let lms: Vec<Vec<u32>> = block
        .iter()
        .map(|g| g.leading_term_in(BLOCK).unwrap().0.exponents()[1..].to_vec())
        .collect();
    let dim_k = staircase_colength(&lms, vars.len() - 1);
    let d = block
        .iter()
        .map(parameter_lc)
        .filter(|c| !c.is_constant())
        .fold(Polynomial::one(vars.clone()), |acc, c| acc.mul(&c));
    let basis = gb(vars, gens);
    if d.is_constant() {
        (basis, dim_k)
    } else {
        (saturate(&basis, &d).expect("nonzero"), dim_k)
    }
}

/// Distinct irreducible factors involving `y_i` common to every generator
/// of the elimination ideal onto `(y0, y_i)`.
fn minimal_factors(gens: &[Polynomial], i: usize) -> Vec<Polynomial> {
    let n = gens[0].nvars();
    let elim: Vec<usize> = (1..n).filter(|&k| k != i).collect();
    let e = eliminate(gens, &elim).expect("same ring");
    let mut common: Option<Vec<Polynomial>> = None;
    for g in e.generators() {
        let fs: Vec<Polynomial> = factor_polynomial(g)
            .expect("nonzero")
            .factors
            .into_iter()
            .map(|(f, _)| f)
            .filter(|f| f.degree_in(i) > 0)
            .collect();
        common = Some(match common {
            None => fs,
            Some(c) => c.into_iter().filter(|f| fs.contains(f)).collect(),
        });
    }
    common.unwrap_or_default()
}

/// Whether every one-dimensional component of `V(gens)` lies on one of the
/// `primes`: removing the primes must leave at most finitely many points.
/// A component on which the parameter is constant is invisible over the
/// function field, so this guards against unlucky projections.
fn complete(gens: &[Polynomial], primes: &[IdealBasis], rng: &mut ChaCha8Rng) -> bool {
    let vars = gens[0].vars().clone();
    let g = primes.iter().fold(Polynomial::one(vars.clone()), |acc, p| {
        let comb = p.generators().iter().fold(Polynomial::zero(vars.clone()), |a, q| {
            let c: i64 = rng.gen_range(1..=9);
            a.add(&q.scale(&BigRational::from_integer(c.into())))
        });
        acc.mul(&comb)
    });
    let rest = saturate(&gb(&vars, gens), &g).expect("nonzero");
    !matches!(affine_dimension(&rest), Some(d) if d >= 1)
}

pub(crate) fn curve_primes(piece: &IdealBasis, max_degree: u32, trials: u32, rng: &mut ChaCha8Rng) -> Primes {
    let vars = piece.vars().clone();
    let n = vars.len();
    for _ in 0..trials.max(1) {
        let (b, binv) = random_change(n, rng);
        let to_y = linear_images(&vars, &binv);
        let to_x = linear_images(&vars, &b);
        let iy: Vec<Polynomial> = piece.generators().iter().map(|g| g.compose(&to_y)).collect();

        let (_, dim_k) = contract(&vars, &iy);
        let Some(dim_k) = dim_k else { continue };
        if dim_k == 0 {
            if complete(&iy, &[], rng) {
                return Primes::Found(Vec::new());
            }
            continue;
        }

        let mut squarefree: Vec<Vec<Polynomial>> = Vec::new();
        for i in 1..n {
            squarefree.push(minimal_factors(&iy, i));
        }
        let mut radical_gens = iy.clone();
        for fs in &squarefree {
            radical_gens.push(fs.iter().fold(Polynomial::one(vars.clone()), |a, f| a.mul(f)));
        }
        let (radical, dim_r) = contract(&vars, &radical_gens);
        let dim_r = dim_r.expect("radical of a curve piece stays finite over K");
        if dim_r > u64::from(max_degree) {
            return Primes::TooLarge(piece.clone());
        }
        let branches = &squarefree[0];
        let primitive: u64 = branches.iter().map(|h| u64::from(h.degree_in(1))).sum();
        if primitive != dim_r {
            continue;
        }
        let mut primes_y = Vec::new();
        for h in branches {
            let mut gens = radical.generators().to_vec();
            gens.push(h.clone());
            primes_y.push(contract(&vars, &gens).0);
        }
        if !complete(&iy, &primes_y, rng) {
            continue;
        }
        let primes = primes_y
            .iter()
            .map(|p| {
                let back: Vec<Polynomial> = p.generators().iter().map(|g| g.compose(&to_x)).collect();
                gb(&vars, &back)
            })
            .collect();
        return Primes::Found(primes);
    }
    Primes::NotGeneric(piece.clone())
}
