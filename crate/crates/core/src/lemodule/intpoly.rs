use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::matrix::IntegerMatrix;
use super::LeModuleError;

/// Polynomial in `t` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }

    /// `t - a`
    pub fn linear(a: i64) -> Self {
        Self::from_i64(&[-a, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.0.last().is_some_and(One::is_one)
    }

    /// Sum of the roots with multiplicity, for a monic polynomial.
    pub fn root_sum(&self) -> BigInt {
        match self.0.len() {
            0 | 1 => BigInt::zero(),
            n => -&self.0[n - 2],
        }
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return (IntPoly(Vec::new()), self.clone());
        }
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.0.iter().enumerate() {
                r[k + i] -= &c * di;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (IntPoly::new(q), IntPoly::new(r))
    }

    fn exact_div_monic(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.divrem_monic(d);
        r.0.is_empty().then_some(q)
    }
}

impl fmt::Display for IntPoly {
    /// Highest degree first, no spaces: `t^2+t+1`, `t-1`, `-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let a = c.abs();
            let coeff = if a.is_one() && k > 0 {
                String::new()
            } else {
                a.to_string()
            };
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            write!(f, "{sign}{coeff}{var}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Characteristic polynomial `det(t I - A)`, by Faddeev-LeVerrier with exact
/// integer division.
pub fn char_poly(a: &IntegerMatrix) -> Result<IntPoly, LeModuleError> {
    if !a.is_square() {
        return Err(LeModuleError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntegerMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a.mul(&m).expect("square");
        for i in 0..n {
            *next.get_mut(i, i) += &coeffs[n - k + 1];
        }
        let am = a.mul(&next).expect("square");
        let (q, r) = am.trace().div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
        m = next;
    }
    Ok(IntPoly::new(coeffs))
}

pub fn euler_phi(k: u64) -> u64 {
    let (mut n, mut out, mut p) = (k, k, 2);
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

pub fn moebius(k: u64) -> i64 {
    let (mut n, mut sign, mut p) = (k, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The `k`-th cyclotomic polynomial.
pub fn cyclotomic(k: u64) -> IntPoly {
    let mut cache = BTreeMap::new();
    cyclotomic_cached(k, &mut cache)
}

fn cyclotomic_cached(k: u64, cache: &mut BTreeMap<u64, IntPoly>) -> IntPoly {
    if let Some(p) = cache.get(&k) {
        return p.clone();
    }
    let mut coeffs = vec![BigInt::zero(); k as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[k as usize] = BigInt::one();
    let mut p = IntPoly::new(coeffs);
    for d in (1..k).filter(|d| k.is_multiple_of(*d)) {
        let phi_d = cyclotomic_cached(d, cache);
        p = p.exact_div_monic(&phi_d).expect("cyclotomic division is exact");
    }
    cache.insert(k, p.clone());
    p
}

/// Indices `k` with `phi(k) <= degree`; `phi(k) >= sqrt(k/2)` keeps them
/// below `2 degree^2 + 2`.
pub fn cyclotomic_indices(degree: usize) -> Vec<u64> {
    let d = degree as u64;
    (1..=2 * d * d + 2).filter(|&k| euler_phi(k) <= d).collect()
}

/// Indices of the cyclotomic factors, with repetition and in increasing
/// order, or `None` if `q` is not a product of cyclotomic polynomials.
pub fn cyclotomic_factor(q: &IntPoly) -> Option<Vec<u64>> {
    if !q.is_monic() {
        return None;
    }
    let mut rest = q.clone();
    let mut out = Vec::new();
    let mut cache = BTreeMap::new();
    for k in cyclotomic_indices(q.degree().unwrap_or(0)) {
        let phi = cyclotomic_cached(k, &mut cache);
        while rest.degree() >= phi.degree() {
            match rest.exact_div_monic(&phi) {
                Some(next) => {
                    rest = next;
                    out.push(k);
                }
                None => break,
            }
        }
    }
    (rest == IntPoly::one()).then_some(out)
}

/// All products of cyclotomic polynomials of the given degree whose roots
/// sum to `trace`, ordered by their factor lists.
pub fn possible_char_polys(degree: usize, trace: i64) -> Vec<IntPoly> {
    let indices: Vec<(u64, usize, i64)> = cyclotomic_indices(degree)
        .into_iter()
        .map(|k| (k, euler_phi(k) as usize, moebius(k)))
        .collect();
    let mut found = Vec::new();
    let mut chosen = Vec::new();
    fn walk(
        indices: &[(u64, usize, i64)],
        start: usize,
        left: usize,
        trace_left: i64,
        chosen: &mut Vec<u64>,
        found: &mut Vec<Vec<u64>>,
    ) {
        if left == 0 {
            if trace_left == 0 {
                found.push(chosen.clone());
            }
            return;
        }
        // each factor moves the trace by at most its degree
        if trace_left.unsigned_abs() as usize > left {
            return;
        }
        for (i, &(k, deg, mu)) in indices.iter().enumerate().skip(start) {
            if deg <= left {
                chosen.push(k);
                walk(indices, i, left - deg, trace_left - mu, chosen, found);
                chosen.pop();
            }
        }
    }
    if degree > 0 {
        walk(&indices, 0, degree, trace, &mut chosen, &mut found);
    }
    let mut cache = BTreeMap::new();
    found
        .into_iter()
        .map(|ks| {
            ks.iter()
                .fold(IntPoly::one(), |acc, &k| acc.mul(&cyclotomic_cached(k, &mut cache)))
        })
        .collect()
}
