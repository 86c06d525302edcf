//! Fraction-free working representation shared by the basis engines.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Polynomial, TermOrder, VarList};

/// Integer polynomial with terms sorted in descending `TermOrder`, kept
/// primitive with a positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Sp {
    pub terms: Vec<(Monomial, BigInt)>,
}

impl Sp {
    pub fn from_poly(p: &Polynomial, ord: TermOrder) -> Sp {
        let (_, prim) = p.content_and_primitive();
        let mut terms: Vec<(Monomial, BigInt)> = prim.terms().map(|(m, c)| (m.clone(), c.numer().clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut s = Sp { terms };
        s.normalize();
        s
    }

    pub fn to_poly(&self, vars: &VarList) -> Polynomial {
        Polynomial::from_terms(
            vars.clone(),
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
        )
    }

    /// Rational polynomial scaled to leading coefficient 1.
    pub fn to_monic(&self, vars: &VarList) -> Polynomial {
        match self.terms.first() {
            None => Polynomial::zero(vars.clone()),
            Some((_, lc)) => Polynomial::from_terms(
                vars.clone(),
                self.terms
                    .iter()
                    .map(|(m, c)| (m.clone(), BigRational::new(c.clone(), lc.clone()))),
            ),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn normalize(&mut self) {
        let Some((_, lc)) = self.terms.first() else {
            return;
        };
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if lc.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
    }

    /// `a*self - b*m*g`, merging in `ord`.
    pub fn combine(&self, a: &BigInt, b: &BigInt, m: &Monomial, g: &Sp, ord: TermOrder) -> Sp {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<Monomial> = g.terms.iter().map(|t| t.0.mul(m)).collect();
        while i < self.terms.len() || j < g.terms.len() {
            let which = if i == self.terms.len() {
                Ordering::Less
            } else if j == g.terms.len() {
                Ordering::Greater
            } else {
                ord.cmp(&self.terms[i].0, &shifted[j])
            };
            match which {
                Ordering::Greater => {
                    out.push((self.terms[i].0.clone(), a * &self.terms[i].1));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted[j].clone(), -(b * &g.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a * &self.terms[i].1 - b * &g.terms[j].1;
                    if !c.is_zero() {
                        out.push((shifted[j].clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let mut s = Sp { terms: out };
        s.normalize();
        s
    }

    /// Cancel the term at `idx` (whose monomial is divisible by `lm(g)`).
    pub fn reduce_at(&self, idx: usize, g: &Sp, ord: TermOrder) -> Sp {
        let (m, c) = &self.terms[idx];
        let q = g.lm().quotient_of(m).expect("reducer must divide");
        let d = c.gcd(g.lc());
        let a = g.lc() / &d;
        let b = c / &d;
        self.combine(&a, &b, &q, g, ord)
    }

    /// S-polynomial of two nonzero elements.
    pub fn spoly(f: &Sp, g: &Sp, ord: TermOrder) -> Sp {
        let l = f.lm().lcm(g.lm());
        let mf = f.lm().quotient_of(&l).unwrap();
        let mg = g.lm().quotient_of(&l).unwrap();
        let d = f.lc().gcd(g.lc());
        let a = g.lc() / &d;
        let b = f.lc() / &d;
        let left = Sp {
            terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect(),
        };
        left.combine(&a, &b, &mg, g, ord)
    }
}

/// Full reduction of `h` by `basis` (global orders only).
pub(crate) fn full_reduce(h: Sp, basis: &[&Sp], ord: TermOrder) -> Sp {
    let mut h = h;
    let mut i = 0;
    while i < h.terms.len() {
        let m = &h.terms[i].0;
        match basis.iter().find(|g| g.lm().divides(m)) {
            Some(g) => h = h.reduce_at(i, g, ord),
            None => i += 1,
        }
    }
    h
}

/// Reduce only the leading term until it is irreducible.
pub(crate) fn top_reduce(h: Sp, basis: &[&Sp], ord: TermOrder) -> Sp {
    let mut h = h;
    while !h.is_zero() {
        match basis.iter().find(|g| g.lm().divides(h.lm())) {
            Some(g) => h = h.reduce_at(0, g, ord),
            None => break,
        }
    }
    h
}
