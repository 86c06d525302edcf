//! Factorisation of polynomials over the rationals.
//!
//! Univariate polynomials are factored by Zassenhaus' method. Multivariate
//! polynomials are sheared to be monic in one variable, specialised at an
//! integer point, factored there, Hensel-lifted back and recombined by
//! exact trial division.

mod upoly;
mod zassenhaus;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ideal::{intersect, IdealBasis};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

pub(crate) use upoly::UPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial involves more than one variable")]
    NotUnivariate,
}

/// `content * prod(factor^exponent)`, factors primitive with integer
/// coefficients and positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigRational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self, vars: &crate::poly::VarList) -> Polynomial {
        self.factors.iter().fold(
            Polynomial::constant(vars.clone(), self.content.clone()),
            |acc, (f, e)| acc.mul(&f.pow(*e)),
        )
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }
}

/// Factor a polynomial in at most one variable.
pub fn univariate_factor(p: &Polynomial) -> Result<Factorization, FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    if p.involved_vars().len() > 1 {
        return Err(FactorError::NotUnivariate);
    }
    Ok(finish(p, factor_univariate(p)))
}

/// Factor a multivariate polynomial into irreducibles over the rationals.
pub fn factor_polynomial(p: &Polynomial) -> Result<Factorization, FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    Ok(finish(p, factor_primitive(&p.primitive())))
}

fn finish(p: &Polynomial, mut factors: Vec<(Polynomial, u32)>) -> Factorization {
    factors.sort_by(|a, b| {
        a.0.total_degree()
            .cmp(&b.0.total_degree())
            .then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
    let lead = |q: &Polynomial| q.leading_term(MonomialOrder::GlobalDegrevlex).unwrap().1.clone();
    let denom = factors.iter().fold(BigRational::one(), |acc, (f, e)| {
        acc * num_traits::pow(lead(f), *e as usize)
    });
    Factorization {
        content: lead(p) / denom,
        factors,
    }
}

fn factor_univariate(p: &Polynomial) -> Vec<(Polynomial, u32)> {
    let Some(v) = p.univariate_var() else {
        return Vec::new();
    };
    zassenhaus::factor_integer(&to_upoly(p, v))
        .into_iter()
        .map(|(f, e)| (from_upoly(&f, p.vars(), v), e))
        .collect()
}

fn to_upoly(p: &Polynomial, v: usize) -> UPoly {
    let mut c = vec![BigRational::zero(); p.degree_in(v) as usize + 1];
    for (m, a) in p.terms() {
        c[m.exponent(v) as usize] += a;
    }
    UPoly(c).trimmed()
}

fn from_upoly(u: &UPoly, vars: &crate::poly::VarList, v: usize) -> Polynomial {
    let n = vars.len();
    Polynomial::from_terms(
        vars.clone(),
        u.0.iter()
            .enumerate()
            .map(|(k, c)| (Monomial::var(n, v).pow(k as u32), c.clone())),
    )
}

/// Factor a nonzero primitive polynomial (content is discarded).
fn factor_primitive(p: &Polynomial) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    let mut f = p.clone();
    let n = f.nvars();
    for i in 0..n {
        let e = f.terms().map(|(m, _)| m.exponent(i)).min().unwrap_or(0);
        if e > 0 {
            out.push((Polynomial::var(f.vars(), i), e));
            let xe = Polynomial::var(f.vars(), i).pow(e);
            f = f.div_exact(&xe).expect("monomial content divides");
        }
    }
    if f.is_constant() {
        return out;
    }
    if f.involved_vars().len() == 1 {
        out.extend(factor_univariate(&f));
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_fac7);
    for g in distinct_irreducibles(&f, &mut rng) {
        let mut e = 0;
        while let Some(q) = f.div_exact(&g) {
            f = q;
            e += 1;
        }
        debug_assert!(e > 0);
        out.push((g, e));
    }
    out
}

/// Distinct irreducible factors of a polynomial in at least two variables
/// with no monomial content.
fn distinct_irreducibles(f: &Polynomial, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let involved = f.involved_vars();
    if involved.len() <= 1 {
        return factor_univariate(f).into_iter().map(|(g, _)| g).collect();
    }
    let d = f.total_degree();
    let main = involved
        .iter()
        .copied()
        .find(|&v| !f.coefficient(&Monomial::var(f.nvars(), v).pow(d)).is_zero())
        .unwrap_or(involved[0]);
    let others: Vec<usize> = involved.iter().copied().filter(|&v| v != main).collect();
    let (sheared, shear) = make_monic(f, main, &others, rng);

    let mut tries = 0;
    loop {
        tries += 1;
        let range = 2 + tries as i64;
        let point: Vec<i64> = others.iter().map(|_| rng.gen_range(-range..=range)).collect();
        let spec = specialize(&sheared, main, &others, &point);
        if spec.gcd(&spec.derivative()).degree() == Some(0) {
            let lifted = lift_and_recombine(&sheared, main, &others, &point, &spec);
            return lifted
                .into_iter()
                .map(|h| unshear(&h, main, &others, &shear).primitive())
                .collect();
        }
        if tries == 6 {
            let df = f.partial_derivative(main).expect("index in range");
            let g = poly_gcd(f, &df);
            if !g.is_constant() {
                let sf = f.div_exact(&g).expect("gcd divides");
                return distinct_irreducibles(&sf.primitive(), rng);
            }
        }
    }
}

fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let ia = IdealBasis::new(vec![a.clone()], MonomialOrder::GlobalDegrevlex).unwrap();
    let ib = IdealBasis::new(vec![b.clone()], MonomialOrder::GlobalDegrevlex).unwrap();
    let lcm = intersect(&ia, &ib).expect("same ring");
    let l = &lcm.generators()[0];
    a.mul(b).div_exact(l).expect("lcm divides the product")
}

/// Substitute `x_i -> x_i + c_i * x_main` until the top-degree part has a
/// pure power of `x_main`.
fn make_monic(f: &Polynomial, main: usize, others: &[usize], rng: &mut ChaCha8Rng) -> (Polynomial, Vec<i64>) {
    let n = f.nvars();
    let d = f.total_degree();
    let top = Monomial::var(n, main).pow(d);
    let mut shear = vec![0i64; others.len()];
    let mut range = 2;
    loop {
        let g = apply_shear(f, main, others, &shear, 1);
        if !g.coefficient(&top).is_zero() {
            return (g, shear);
        }
        for c in &mut shear {
            *c = rng.gen_range(-range..=range);
        }
        range += 1;
    }
}

fn apply_shear(f: &Polynomial, main: usize, others: &[usize], shear: &[i64], sign: i64) -> Polynomial {
    if shear.iter().all(|&c| c == 0) {
        return f.clone();
    }
    let vars = f.vars();
    let y = Polynomial::var(vars, main);
    let images: Vec<Polynomial> = (0..f.nvars())
        .map(|i| {
            let xi = Polynomial::var(vars, i);
            match others.iter().position(|&o| o == i) {
                Some(k) => xi.add(&y.scale(&BigRational::from_integer((sign * shear[k]).into()))),
                None => xi,
            }
        })
        .collect();
    f.compose(&images)
}

fn unshear(f: &Polynomial, main: usize, others: &[usize], shear: &[i64]) -> Polynomial {
    apply_shear(f, main, others, shear, -1)
}

fn specialize(f: &Polynomial, main: usize, others: &[usize], point: &[i64]) -> UPoly {
    let mut c = vec![BigRational::zero(); f.degree_in(main) as usize + 1];
    for (m, a) in f.terms() {
        let mut v = a.clone();
        for (&o, &x) in others.iter().zip(point) {
            let e = m.exponent(o);
            if e > 0 {
                v *= BigRational::from_integer(num_traits::pow(num_bigint::BigInt::from(x), e as usize));
            }
        }
        c[m.exponent(main) as usize] += v;
    }
    UPoly(c).trimmed()
}

/// Coefficients in `x_main` indexed by the exponent vector of the others.
type MPoly = BTreeMap<Vec<u32>, UPoly>;

fn to_mpoly(f: &Polynomial, main: usize) -> MPoly {
    let mut out: BTreeMap<Vec<u32>, Vec<BigRational>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut key = m.exponents().to_vec();
        let k = key[main] as usize;
        key[main] = 0;
        let slot = out.entry(key).or_default();
        if slot.len() <= k {
            slot.resize(k + 1, BigRational::zero());
        }
        slot[k] += c;
    }
    out.into_iter()
        .map(|(k, v)| (k, UPoly(v).trimmed()))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

fn from_mpoly(m: &MPoly, main: usize, vars: &crate::poly::VarList) -> Polynomial {
    Polynomial::from_terms(
        vars.clone(),
        m.iter().flat_map(|(key, u)| {
            u.0.iter().enumerate().map(move |(k, c)| {
                let mut e = key.clone();
                e[main] = k as u32;
                (Monomial::from_exponents(e), c.clone())
            })
        }),
    )
}

fn key_degree(k: &[u32]) -> u32 {
    k.iter().sum()
}

fn mul_trunc(a: &MPoly, b: &MPoly, bound: u32) -> MPoly {
    let mut out: MPoly = BTreeMap::new();
    for (ka, ua) in a {
        for (kb, ub) in b {
            let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            if key_degree(&k) > bound {
                continue;
            }
            let prod = ua.mul(ub);
            let e = out.entry(k).or_insert_with(UPoly::zero);
            *e = e.add(&prod);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn lift_and_recombine(f: &Polynomial, main: usize, others: &[usize], point: &[i64], spec: &UPoly) -> Vec<Polynomial> {
    let local = zassenhaus::factor_integer(spec);
    if local.len() <= 1 {
        return vec![f.clone()];
    }
    let vars = f.vars();
    let shift = |sign: i64| -> Vec<Polynomial> {
        (0..f.nvars())
            .map(|i| {
                let xi = Polynomial::var(vars, i);
                match others.iter().position(|&o| o == i) {
                    Some(k) => xi.add(&Polynomial::from_int(vars.clone(), sign * point[k])),
                    None => xi,
                }
            })
            .collect()
    };
    let shifted = f.compose(&shift(1));
    let lc = shifted.coefficient(&Monomial::var(f.nvars(), main).pow(shifted.degree_in(main)));
    let target = to_mpoly(&shifted.scale(&lc.recip()), main);
    let bound = target.keys().map(|k| key_degree(k)).max().unwrap_or(0);

    let g: Vec<UPoly> = local.iter().map(|(u, _)| u.monic()).collect();
    let r = g.len();
    let cofactor_inverses: Vec<UPoly> = (0..r)
        .map(|i| {
            let co = (0..r)
                .filter(|&l| l != i)
                .fold(UPoly::constant(BigRational::one()), |acc, l| acc.mul(&g[l]));
            co.inverse_mod(&g[i]).expect("specialised factors are coprime")
        })
        .collect();
    let zero_key = vec![0u32; f.nvars()];
    let mut lifted: Vec<MPoly> = g
        .iter()
        .map(|u| BTreeMap::from([(zero_key.clone(), u.clone())]))
        .collect();

    for j in 1..=bound {
        let prod = lifted
            .iter()
            .skip(1)
            .fold(lifted[0].clone(), |acc, h| mul_trunc(&acc, h, j));
        for (key, coeff) in target.iter().filter(|(k, _)| key_degree(k) == j) {
            let have = prod.get(key).cloned().unwrap_or_else(UPoly::zero);
            let err = coeff.sub(&have);
            if err.is_zero() {
                continue;
            }
            for i in 0..r {
                let delta = err.mul(&cofactor_inverses[i]).rem(&g[i]);
                if !delta.is_zero() {
                    let e = lifted[i].entry(key.clone()).or_insert_with(UPoly::zero);
                    *e = e.add(&delta);
                }
            }
        }
        // Error terms present in the product but absent from the target.
        for (key, have) in prod.iter().filter(|(k, _)| key_degree(k) == j) {
            if target.contains_key(key) {
                continue;
            }
            let err = have.scale(&-BigRational::one());
            for i in 0..r {
                let delta = err.mul(&cofactor_inverses[i]).rem(&g[i]);
                if !delta.is_zero() {
                    let e = lifted[i].entry(key.clone()).or_insert_with(UPoly::zero);
                    *e = e.add(&delta);
                }
            }
        }
        for h in &mut lifted {
            h.retain(|_, v| !v.is_zero());
        }
    }

    let mut remaining: Vec<usize> = (0..r).collect();
    let mut rest = from_mpoly(&target, main, vars);
    let mut found: Vec<Polynomial> = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in subsets(&remaining, size) {
            let cand = subset
                .iter()
                .skip(1)
                .fold(lifted[subset[0]].clone(), |acc, &i| mul_trunc(&acc, &lifted[i], bound));
            let h = from_mpoly(&cand, main, vars);
            if let Some(q) = rest.div_exact(&h) {
                found.push(h);
                rest = q;
                remaining.retain(|i| !subset.contains(i));
                continue 'outer;
            }
        }
        size += 1;
    }
    if !rest.is_constant() {
        found.push(rest);
    }
    let back = shift(-1);
    found.into_iter().map(|h| h.compose(&back)).collect()
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}
