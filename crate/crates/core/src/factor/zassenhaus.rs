//! Univariate factorisation over the integers: factor modulo a small prime,
//! lift p-adically, recombine by trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::upoly::UPoly;

/// Polynomial over the prime field, coefficients low to high, trimmed.
type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(b[db], p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * bj % p) % p;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut result: Fp = vec![1];
    let b = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        result = fp_divrem(&fp_mul(&result, &result, p), m, p).1;
        if e.bit(i) {
            result = fp_divrem(&fp_mul(&result, &b, p), m, p).1;
        }
    }
    result
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// Monic irreducible factors of a monic squarefree polynomial mod `p`.
fn fp_factor(f: &Fp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let mut out = Vec::new();
    let x: Fp = vec![0, 1];
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    let pe = BigUint::from(p);
    while 2 * d <= rest.len().saturating_sub(1) {
        h = fp_powmod(&h, &pe, &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            equal_degree(&g, d, p, rng, &mut out);
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(fp_monic(&rest, p));
    }
    out
}

fn equal_degree(g: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = g.len() - 1;
    if n == d {
        out.push(fp_monic(g, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, g, p), &vec![1], p);
        let c = fp_gcd(&b, g, p);
        if c.len() > 1 && c.len() < g.len() {
            equal_degree(&c, d, p, rng, out);
            equal_degree(&fp_divrem(g, &c, p).0, d, p, rng, out);
            return;
        }
    }
}

fn reduce(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|k| k * k <= n).all(|k| n % k != 0))
}

/// Integer polynomial helpers, coefficients low to high.
fn z_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Exact quotient `a / b` over the integers, if it exists.
fn z_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() <= db {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

fn z_primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    a.into_iter().map(|c| c / &g).collect()
}

/// Lift `f = lc * prod(g_i) mod p` to modulus `p^k >= bound`. Each lifted
/// factor is monic with coefficients reduced modulo the final modulus.
fn hensel_lift(f: &[BigInt], g: &[Fp], p: u64, bound: &BigInt) -> (Vec<Vec<BigInt>>, BigInt) {
    let r = g.len();
    let lc = f.last().unwrap().clone();
    let lc_p = lc.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    // s_i * lc * prod_{l != i} g_l = 1 mod (g_i, p)
    let inverses: Vec<Fp> = (0..r)
        .map(|i| {
            let co = (0..r)
                .filter(|&l| l != i)
                .fold(vec![lc_p], |acc, l| fp_mul(&acc, &g[l], p));
            fp_inverse(&co, &g[i], p)
        })
        .collect();
    let mut lifted: Vec<Vec<BigInt>> = g
        .iter()
        .map(|gi| gi.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while &modulus < bound {
        let prod = lifted.iter().fold(vec![lc.clone()], |acc, h| z_mul(&acc, h));
        let err: Vec<BigInt> = (0..f.len())
            .map(|i| {
                let diff = &f[i] - prod.get(i).cloned().unwrap_or_else(BigInt::zero);
                debug_assert!((&diff % &modulus).is_zero());
                diff / &modulus
            })
            .collect();
        let e = reduce(&err, p);
        for i in 0..r {
            let delta = fp_divrem(&fp_mul(&e, &inverses[i], p), &g[i], p).1;
            for (k, &c) in delta.iter().enumerate() {
                lifted[i][k] += BigInt::from(c) * &modulus;
            }
        }
        modulus *= &pb;
    }
    for h in &mut lifted {
        for c in h.iter_mut() {
            *c = c.mod_floor(&modulus);
        }
    }
    (lifted, modulus)
}

fn fp_inverse(a: &Fp, m: &Fp, p: u64) -> Fp {
    let (mut r0, mut r1) = (m.clone(), fp_divrem(a, m, p).1);
    let (mut s0, mut s1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    debug_assert_eq!(r0.len(), 1);
    let inv = inv_mod(r0[0], p);
    fp_divrem(&s0.iter().map(|&c| c * inv % p).collect(), m, p).1
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

/// Irreducible factors of a primitive squarefree integer polynomial of
/// positive degree with positive leading coefficient.
fn factor_squarefree(f: &[BigInt], rng: &mut ChaCha8Rng) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Pick the prime with the fewest modular factors among a few candidates.
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in primes() {
        if (f[n].clone() % p).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        if fp_gcd(&fp, &fp_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let factors = fp_factor(&fp_monic(&fp, p), p, rng);
        if factors.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime is good");

    // Coefficient bound for any factor, times the leading coefficient.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let lc = f[n].abs();
    let bound = (norm2.sqrt() + 1u32) * (BigInt::one() << n) * &lc * 2u32;
    let (lifted, modulus) = hensel_lift(f, &modular, p, &bound);

    let mut current = f.to_vec();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in subsets(remaining.len(), size) {
            let picked: Vec<usize> = subset.iter().map(|&k| remaining[k]).collect();
            let lcc = current.last().unwrap().clone();
            let cand = picked
                .iter()
                .fold(vec![lcc], |acc, &i| z_mul(&acc, &lifted[i]))
                .iter()
                .map(|c| symmetric(c, &modulus))
                .collect();
            let cand = z_primitive(cand);
            if let Some(q) = z_div_exact(&current, &cand) {
                found.push(cand);
                current = q;
                remaining.retain(|i| !picked.contains(i));
                continue 'outer;
            }
        }
        size += 1;
    }
    found.push(z_primitive(current));
    found
}

/// Irreducible factors over the rationals with multiplicities, each with
/// coprime integer coefficients and positive leading coefficient.
pub(crate) fn factor_integer(p: &UPoly) -> Vec<(UPoly, u32)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x2a55_e4a5);
    let mut out = Vec::new();
    for (part, mult) in squarefree_parts(p) {
        let ints = part.primitive_integer();
        for g in factor_squarefree(&ints, &mut rng) {
            out.push((UPoly::from_integers(g), mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0 .0.iter().rev().cmp(b.0 .0.iter().rev()))
    });
    out
}

/// Yun's squarefree decomposition; parts of positive degree only.
fn squarefree_parts(f: &UPoly) -> Vec<(UPoly, u32)> {
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.divrem(&b).0;
    let mut d = df.divrem(&b).0.sub(&c.derivative());
    let mut i = 1;
    let mut out = Vec::new();
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        c = c.divrem(&a).0;
        d = d.divrem(&a).0.sub(&c.derivative());
        i += 1;
    }
    out
}
