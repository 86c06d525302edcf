//! Standard bases for the local degree order, via homogenisation: a
//! Groebner basis of the homogenised generators under a degree order that
//! breaks ties with the local order dehomogenises to a standard basis.

use crate::poly::{Monomial, TermOrder};

use super::groebner::groebner;
use super::sp::Sp;

const LOCAL: TermOrder = TermOrder::NegDegRevLex;

fn homogenize(f: &Sp) -> Sp {
    let d = f.max_degree();
    let mut terms: Vec<(Monomial, _)> = f
        .terms
        .iter()
        .map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.push(d - m.degree());
            (Monomial::from_exponents(e), c.clone())
        })
        .collect();
    terms.sort_by(|a, b| TermOrder::HomLocal.cmp(&b.0, &a.0));
    let mut s = Sp { terms };
    s.normalize();
    s
}

fn dehomogenize(f: &Sp, nvars: usize) -> Sp {
    let mut terms: Vec<(Monomial, _)> = f.terms.iter().map(|(m, c)| (m.truncated(nvars), c.clone())).collect();
    terms.sort_by(|a, b| LOCAL.cmp(&b.0, &a.0));
    let mut s = Sp { terms };
    s.normalize();
    s
}

/// A minimal standard basis, sorted by leading monomial, largest first.
pub(crate) fn standard_basis(gens: Vec<Sp>) -> Vec<Sp> {
    let gens: Vec<Sp> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let Some(nvars) = gens.first().map(|g| g.lm().nvars()) else {
        return Vec::new();
    };
    if gens.iter().any(|g| g.terms.iter().any(|(m, _)| m.is_one())) {
        // A unit at the origin.
        return vec![Sp {
            terms: vec![(Monomial::one(nvars), 1.into())],
        }];
    }
    let hom: Vec<Sp> = gens.iter().map(homogenize).collect();
    let basis: Vec<Sp> = groebner(hom, TermOrder::HomLocal)
        .iter()
        .map(|g| dehomogenize(g, nvars))
        .collect();
    minimalize(basis)
}

fn minimalize(mut basis: Vec<Sp>) -> Vec<Sp> {
    basis.sort_by(|a, b| LOCAL.cmp(b.lm(), a.lm()));
    let mut out: Vec<Sp> = Vec::new();
    for g in basis {
        if !out.iter().any(|o| o.lm().divides(g.lm())) {
            out.push(g);
        }
    }
    out
}
