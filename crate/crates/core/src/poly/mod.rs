//! Exact multivariate polynomials over the rationals.
//!
//! Variable index 0 is always the distinguished coordinate `z0`. Terms are
//! kept in a map keyed by [`Monomial`], whose natural `Ord` is the global
//! degree reverse lexicographic order, and zero coefficients are never
//! stored, so structural equality is mathematical equality.

mod monomial;
mod order;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use monomial::Monomial;
pub(crate) use order::TermOrder;
pub use order::{compare, MonomialOrder};
pub use parse::parse_polynomial;

/// Shared, ordered list of variable names.
pub type VarList = Arc<[String]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown identifier `{name}` at position {position}")]
    UnknownIdentifier { name: String, position: usize },
    #[error("exponent at position {position} is not a positive integer")]
    BadExponent { position: usize },
    #[error("invalid variable list: {0}")]
    BadVariables(String),
    #[error("variable lists differ")]
    VariableMismatch,
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("exponent vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
}

/// Build a shared variable list, rejecting empty, duplicate or malformed names.
pub fn var_list<S: AsRef<str>>(names: &[S]) -> Result<VarList, PolyError> {
    if names.is_empty() {
        return Err(PolyError::BadVariables("no variables given".into()));
    }
    let mut out: Vec<String> = Vec::with_capacity(names.len());
    for n in names {
        let n = n.as_ref().trim();
        let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(PolyError::BadVariables(format!("`{n}` is not an identifier")));
        }
        if out.iter().any(|o| o == n) {
            return Err(PolyError::BadVariables(format!("`{n}` appears twice")));
        }
        out.push(n.to_string());
    }
    Ok(out.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact result of `a op b`; both operands must share a variable list.
pub fn arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
    a.check_same_ring(b)?;
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    })
}

#[derive(Clone)]
pub struct Polynomial {
    vars: VarList,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(vars: VarList) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarList, c: BigRational) -> Self {
        let n = vars.len();
        Self::from_terms(vars, [(Monomial::one(n), c)])
    }

    pub fn from_int(vars: VarList, c: i64) -> Self {
        Self::constant(vars, BigRational::from_integer(c.into()))
    }

    pub fn one(vars: VarList) -> Self {
        Self::from_int(vars, 1)
    }

    /// The variable `x_index`. Panics if the index is out of range.
    pub fn var(vars: &VarList, index: usize) -> Self {
        let n = vars.len();
        assert!(index < n, "variable index out of range");
        Self::from_terms(vars.clone(), [(Monomial::var(n, index), BigRational::one())])
    }

    pub fn from_terms<I>(vars: VarList, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), vars.len());
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        Polynomial { vars, terms: map }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in ascending degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree; 0 for constants and for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn order_at_origin(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).min().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Indices of the variables that actually occur.
    pub fn involved_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exponent(i) > 0))
            .collect()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &BigRational)> {
        self.leading_term_in(order.term_order())
    }

    pub(crate) fn leading_term_in(&self, order: TermOrder) -> Option<(&Monomial, &BigRational)> {
        match order {
            TermOrder::DegRevLex => self.terms.iter().next_back(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)),
        }
    }

    pub(crate) fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    pub(crate) fn check_same_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch)
        }
    }

    fn assert_ring(&self, other: &Polynomial) {
        assert!(self.same_ring(other), "polynomials over different variable lists");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_ring(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m, c.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.assert_ring(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m, -c.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_ring(other);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut terms, &ma.mul(mb), ca * cb);
            }
        }
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.vars.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial, PolyError> {
        self.check_index(var)?;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(var);
            (e > 0).then(|| (m.with_exponent(var, e - 1), c * BigRational::from_integer(e.into())))
        });
        Ok(Polynomial::from_terms(self.vars.clone(), terms))
    }

    /// Replace `x_var` by `q`.
    pub fn substitute(&self, var: usize, q: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_index(var)?;
        self.check_same_ring(q)?;
        let images: Vec<Polynomial> = (0..self.nvars())
            .map(|i| {
                if i == var {
                    q.clone()
                } else {
                    Polynomial::var(&self.vars, i)
                }
            })
            .collect();
        Ok(self.compose(&images))
    }

    /// Simultaneously replace every `x_i` by `images[i]`. The images may live
    /// over a different variable list; the result lives over theirs.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target.clone()), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target.clone(), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Split as `content * primitive`, where the primitive part has coprime
    /// integer coefficients and a positive degrevlex-leading coefficient.
    pub fn content_and_primitive(&self) -> (BigRational, Polynomial) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let denom_lcm = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut g = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        let lead_negative = self.terms.values().next_back().unwrap().is_negative();
        if lead_negative {
            g = -g;
        }
        let terms = self
            .terms
            .keys()
            .cloned()
            .zip(nums.into_iter().map(|n| BigRational::from_integer(n / &g)))
            .collect();
        let content = BigRational::new(g, denom_lcm);
        (
            content,
            Polynomial {
                vars: self.vars.clone(),
                terms,
            },
        )
    }

    pub fn primitive(&self) -> Polynomial {
        self.content_and_primitive().1
    }

    /// Scale so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        self.assert_ring(d);
        let (dm, dc) = d.leading_term_in(TermOrder::DegRevLex)?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.vars.clone());
        while let Some((m, c)) = rem.leading_term_in(TermOrder::DegRevLex) {
            let qm = dm.quotient_of(m)?;
            let qc = c / &dc;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            accumulate(&mut quot.terms, &qm, qc);
        }
        Some(quot)
    }

    /// The single variable occurring, if exactly one does.
    pub fn univariate_var(&self) -> Option<usize> {
        match self.involved_vars().as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }

    fn check_index(&self, var: usize) -> Result<(), PolyError> {
        if var < self.nvars() {
            Ok(())
        } else {
            Err(PolyError::IndexOutOfRange {
                index: var,
                nvars: self.nvars(),
            })
        }
    }

    /// Embed into a larger ring whose first variables are ours.
    pub(crate) fn extend_to(&self, vars: &VarList) -> Polynomial {
        let extra = vars.len() - self.nvars();
        Polynomial {
            vars: vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.extended(extra), c.clone())).collect(),
        }
    }

    /// Drop trailing variables, which must not occur.
    pub(crate) fn restrict_to(&self, vars: &VarList) -> Polynomial {
        let n = vars.len();
        debug_assert!(self.terms.keys().all(|m| m.exponents()[n..].iter().all(|&e| e == 0)));
        Polynomial {
            vars: vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.truncated(n), c.clone())).collect(),
        }
    }

    /// Reorder variables: new variable `i` is old variable `perm[i]`.
    pub(crate) fn permute(&self, perm: &[usize], vars: &VarList) -> Polynomial {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Polynomial::from_terms(
            vars.clone(),
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; perm.len()];
                for (old, &x) in m.exponents().iter().enumerate() {
                    e[inv[old]] = x;
                }
                (Monomial::from_exponents(e), c.clone())
            }),
        )
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, BigRational>, m: &Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    if let Some(v) = terms.get_mut(m) {
        *v += c;
        if v.is_zero() {
            terms.remove(m);
        }
    } else {
        terms.insert(m.clone(), c);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
