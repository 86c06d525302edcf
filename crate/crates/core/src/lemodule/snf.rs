use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::big;
use super::matrix::IntegerMatrix;

/// `u * a * v == s`, `s` diagonal with a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    /// The first `min(rows, cols)` diagonal entries of `s`.
    #[serde(serialize_with = "big::vec")]
    pub diag: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smallest nonzero entry (by absolute value) in the lower-right block
/// starting at `t`.
fn smallest(s: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let e = s.get(i, j);
            if !e.is_zero() && best.is_none_or(|(bi, bj)| e.abs() < s.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Quotient rounded to the nearest integer, so remainders are at most half
/// the pivot.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    // the floor remainder has the sign of `b`, so `q + 1` shrinks it
    if (&r * 2u32).abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
    let (rows, cols) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // clear column t and row t against the pivot
            let mut residue = false;
            for i in t + 1..rows {
                if !s.get(i, t).is_zero() {
                    let q = -nearest_quotient(s.get(i, t), s.get(t, t));
                    s.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    residue |= !s.get(i, t).is_zero();
                }
            }
            for j in t + 1..cols {
                if !s.get(t, j).is_zero() {
                    let q = -nearest_quotient(s.get(t, j), s.get(t, t));
                    s.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    residue |= !s.get(t, j).is_zero();
                }
            }
            if residue {
                // a smaller remainder becomes the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    let e = s.get(i, t);
                    if !e.is_zero() && e.abs() < s.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let e = s.get(t, j);
                    if !e.is_zero() && e.abs() < s.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // the pivot must divide the rest of the block
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    let diag = (0..rows.min(cols)).map(|i| s.get(i, i).clone()).collect();
    SnfResult { s, u, v, diag }
}
