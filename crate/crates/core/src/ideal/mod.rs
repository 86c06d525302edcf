//! Groebner bases, local standard bases at the origin, and the ideal
//! operations built from them.

mod groebner;
mod local;
mod sp;
mod staircase;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Monomial, MonomialOrder, Polynomial, TermOrder, VarList};

pub(crate) use sp::Sp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("no generators given")]
    NoGenerators,
    #[error("generators live over different variable lists")]
    VariableMismatch,
    #[error("the polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("operation requires a global monomial order")]
    LocalOrder,
}

/// Generators of an ideal together with the order they are a basis for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    vars: VarList,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    reduced: bool,
}

impl IdealBasis {
    /// An unprocessed generating set.
    pub fn new(generators: Vec<Polynomial>, order: MonomialOrder) -> Result<Self, IdealError> {
        let vars = ring_of(&generators)?;
        Ok(IdealBasis {
            vars,
            generators,
            order,
            reduced: false,
        })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Leading monomials under the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .filter_map(|g| g.leading_term(self.order).map(|(m, _)| m.clone()))
            .collect()
    }

    /// True for the unit ideal (only meaningful on reduced bases).
    pub fn is_unit(&self) -> bool {
        self.reduced && self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    /// Membership for global reduced bases via normal form.
    pub fn contains(&self, p: &Polynomial) -> bool {
        assert!(self.reduced && self.order == MonomialOrder::GlobalDegrevlex);
        normal_form_in(p, &self.generators, TermOrder::DegRevLex).is_zero()
    }

    fn from_sps(vars: &VarList, sps: &[Sp], order: MonomialOrder) -> Self {
        IdealBasis {
            vars: vars.clone(),
            generators: sps.iter().map(|s| s.to_monic(vars)).collect(),
            order,
            reduced: true,
        }
    }
}

/// Intersection multiplicity at the origin: dimension of the local quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

/// Krull dimension of a germ at the origin; `Empty` when the origin is not
/// on the variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LocalDim {
    Dim(usize),
    Empty,
}

fn ring_of(gens: &[Polynomial]) -> Result<VarList, IdealError> {
    let first = gens.first().ok_or(IdealError::NoGenerators)?;
    if gens.iter().any(|g| !g.same_ring(first)) {
        return Err(IdealError::VariableMismatch);
    }
    Ok(first.vars().clone())
}

fn to_sps(gens: &[Polynomial], ord: TermOrder) -> Vec<Sp> {
    gens.iter()
        .filter(|g| !g.is_zero())
        .map(|g| Sp::from_poly(g, ord))
        .collect()
}

fn exps(sps: &[Sp]) -> Vec<Vec<u32>> {
    sps.iter().map(|s| s.lm().exponents().to_vec()).collect()
}

pub(crate) fn gb_in(gens: &[Polynomial], ord: TermOrder) -> Vec<Sp> {
    groebner::groebner(to_sps(gens, ord), ord)
}

/// Reduced degrevlex basis of polynomials known to share a ring.
pub(crate) fn gb(vars: &VarList, gens: &[Polynomial]) -> IdealBasis {
    IdealBasis::from_sps(vars, &gb_in(gens, TermOrder::DegRevLex), MonomialOrder::GlobalDegrevlex)
}

/// Reduced basis for the block order comparing variables `split..` first.
pub(crate) fn block_basis(vars: &VarList, gens: &[Polynomial], split: usize) -> Vec<Polynomial> {
    gb_in(gens, TermOrder::Block { split })
        .iter()
        .map(|s| s.to_poly(vars))
        .collect()
}

pub(crate) fn staircase_colength(gens: &[Vec<u32>], nvars: usize) -> Option<u64> {
    staircase::colength(gens, nvars)
}

pub(crate) fn local_sb(gens: &[Polynomial]) -> Vec<Sp> {
    local::standard_basis(to_sps(gens, TermOrder::NegDegRevLex))
}

fn normal_form_in(p: &Polynomial, basis: &[Polynomial], ord: TermOrder) -> Polynomial {
    let sps = to_sps(basis, ord);
    let refs: Vec<&Sp> = sps.iter().collect();
    sp::full_reduce(Sp::from_poly(p, ord), &refs, ord).to_poly(p.vars())
}

/// Reduced Groebner basis for a global order.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<IdealBasis, IdealError> {
    if order != MonomialOrder::GlobalDegrevlex {
        return Err(IdealError::LocalOrder);
    }
    let vars = ring_of(gens)?;
    Ok(gb(&vars, gens))
}

/// Standard basis for the local order at the origin, minimal with monic
/// leading terms.
pub fn mora_standard_basis(gens: &[Polynomial]) -> Result<IdealBasis, IdealError> {
    let vars = ring_of(gens)?;
    Ok(IdealBasis::from_sps(
        &vars,
        &local_sb(gens),
        MonomialOrder::LocalNegDegrevlex,
    ))
}

pub(crate) fn colength_of(nvars: usize, gens: &[Polynomial]) -> Colength {
    let sb = local_sb(gens);
    match staircase::colength(&exps(&sb), nvars) {
        Some(n) => Colength::Finite(n),
        None => Colength::Infinite,
    }
}

pub(crate) fn local_dim_of(nvars: usize, gens: &[Polynomial]) -> LocalDim {
    let sb = local_sb(gens);
    match staircase::dimension(&exps(&sb), nvars) {
        Some(d) => LocalDim::Dim(d),
        None => LocalDim::Empty,
    }
}

/// Dimension of the local quotient ring at the origin.
pub fn local_colength(gens: &[Polynomial]) -> Result<Colength, IdealError> {
    let vars = ring_of(gens)?;
    Ok(colength_of(vars.len(), gens))
}

/// Krull dimension at the origin of the vanishing scheme.
pub fn local_dimension(gens: &[Polynomial]) -> Result<LocalDim, IdealError> {
    let vars = ring_of(gens)?;
    Ok(local_dim_of(vars.len(), gens))
}

/// Multiplicity at the origin of a germ of dimension one, read off the
/// tangent cone. `None` if the local dimension is not one.
pub fn tangent_cone_multiplicity(gens: &[Polynomial]) -> Result<Option<u64>, IdealError> {
    let vars = ring_of(gens)?;
    let e = exps(&local_sb(gens));
    Ok(match staircase::dimension(&e, vars.len()) {
        Some(1) => Some(staircase::degree_dim1(&e, vars.len())),
        _ => None,
    })
}

/// Affine dimension of `V(I)` for a global basis; `None` for the unit ideal.
pub fn affine_dimension(basis: &IdealBasis) -> Option<usize> {
    let basis = &global_reduced(basis);
    let lms: Vec<Vec<u32>> = basis
        .leading_monomials()
        .iter()
        .map(|m| m.exponents().to_vec())
        .collect();
    staircase::dimension(&lms, basis.nvars())
}

/// Degree of a one-dimensional affine variety from its reduced degrevlex
/// basis (the degree of its projective closure).
pub fn affine_degree(basis: &IdealBasis) -> u64 {
    let basis = &global_reduced(basis);
    let lms: Vec<Vec<u32>> = basis
        .leading_monomials()
        .iter()
        .map(|m| m.exponents().to_vec())
        .collect();
    staircase::degree_dim1(&lms, basis.nvars())
}

/// Normal form of `p` with respect to a reduced global basis, scaled to be
/// primitive.
pub fn normal_form(p: &Polynomial, basis: &IdealBasis) -> Result<Polynomial, IdealError> {
    if basis.order() != MonomialOrder::GlobalDegrevlex {
        return Err(IdealError::LocalOrder);
    }
    if !p.same_ring(&Polynomial::zero(basis.vars().clone())) {
        return Err(IdealError::VariableMismatch);
    }
    let b = global_reduced(basis);
    Ok(normal_form_in(p, b.generators(), TermOrder::DegRevLex))
}

fn global_reduced(basis: &IdealBasis) -> IdealBasis {
    if basis.is_reduced() && basis.order() == MonomialOrder::GlobalDegrevlex {
        basis.clone()
    } else {
        gb(basis.vars(), basis.generators())
    }
}

pub(crate) fn fresh_var(vars: &VarList) -> VarList {
    let mut name = String::from("t");
    while vars.contains(&name) {
        name.push('_');
    }
    let mut v: Vec<String> = vars.to_vec();
    v.push(name);
    v.into()
}

/// Elements of `gens` (over the ring with one extra trailing variable) that
/// survive eliminating that variable, brought back to `vars`.
fn eliminate_last(vars: &VarList, ext: &VarList, gens: &[Polynomial]) -> Vec<Polynomial> {
    let n = vars.len();
    gb_in(gens, TermOrder::Block { split: n })
        .into_iter()
        .filter(|s| s.lm().exponent(n) == 0)
        .map(|s| s.to_poly(ext).restrict_to(vars))
        .collect()
}

/// Reduced basis of `I ∩ k[x_i : i not in elim]`, over the same ring.
pub fn eliminate(gens: &[Polynomial], elim: &[usize]) -> Result<IdealBasis, IdealError> {
    let vars = ring_of(gens)?;
    let n = vars.len();
    let mut perm: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
    let split = perm.len();
    perm.extend((0..n).filter(|i| elim.contains(i)));
    let pvars: VarList = perm.iter().map(|&i| vars[i].clone()).collect::<Vec<_>>().into();
    let moved: Vec<Polynomial> = gens.iter().map(|g| g.permute(&perm, &pvars)).collect();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let kept: Vec<Polynomial> = gb_in(&moved, TermOrder::Block { split })
        .into_iter()
        .filter(|s| s.lm().exponents()[split..].iter().all(|&e| e == 0))
        .map(|s| s.to_poly(&pvars).permute(&inv, &vars))
        .collect();
    Ok(gb(&vars, &kept))
}

/// `I ∩ J` as a reduced global basis.
pub fn intersect(i: &IdealBasis, j: &IdealBasis) -> Result<IdealBasis, IdealError> {
    if i.vars() != j.vars() {
        return Err(IdealError::VariableMismatch);
    }
    let vars = i.vars().clone();
    let ext = fresh_var(&vars);
    let t = Polynomial::var(&ext, vars.len());
    let one_minus_t = Polynomial::one(ext.clone()).sub(&t);
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|g| t.mul(&g.extend_to(&ext))).collect();
    gens.extend(j.generators().iter().map(|g| one_minus_t.mul(&g.extend_to(&ext))));
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(gb(&vars, &[Polynomial::zero(vars.clone())]));
    }
    Ok(gb(&vars, &eliminate_last(&vars, &ext, &gens)))
}

/// `(I : g)` as a reduced global basis.
pub fn ideal_quotient(i: &IdealBasis, g: &Polynomial) -> Result<IdealBasis, IdealError> {
    if g.is_zero() {
        return Err(IdealError::ZeroPolynomial);
    }
    if i.vars() != g.vars() {
        return Err(IdealError::VariableMismatch);
    }
    let vars = i.vars().clone();
    let principal = IdealBasis::new(vec![g.clone()], MonomialOrder::GlobalDegrevlex)?;
    let cap = intersect(i, &principal)?;
    let divided: Vec<Polynomial> = cap
        .generators()
        .iter()
        .map(|h| h.div_exact(g).expect("element of (g) is divisible by g"))
        .collect();
    if divided.is_empty() {
        return Ok(gb(&vars, &[Polynomial::zero(vars.clone())]));
    }
    Ok(gb(&vars, &divided))
}

/// `(I : g^inf)` as a reduced global basis.
pub fn saturate(i: &IdealBasis, g: &Polynomial) -> Result<IdealBasis, IdealError> {
    if g.is_zero() {
        return Err(IdealError::ZeroPolynomial);
    }
    if i.vars() != g.vars() {
        return Err(IdealError::VariableMismatch);
    }
    let vars = i.vars().clone();
    if g.is_constant() {
        return Ok(gb(&vars, i.generators()));
    }
    let ext = fresh_var(&vars);
    let t = Polynomial::var(&ext, vars.len());
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|h| h.extend_to(&ext)).collect();
    gens.push(Polynomial::one(ext.clone()).sub(&t.mul(&g.extend_to(&ext))));
    let kept = eliminate_last(&vars, &ext, &gens);
    if kept.is_empty() {
        return Ok(gb(&vars, &[Polynomial::zero(vars.clone())]));
    }
    Ok(gb(&vars, &kept))
}

/// Whether `p` vanishes on all of `V(I)`.
pub fn radical_membership(p: &Polynomial, i: &IdealBasis) -> Result<bool, IdealError> {
    if i.vars() != p.vars() {
        return Err(IdealError::VariableMismatch);
    }
    if p.is_zero() {
        return Ok(true);
    }
    let vars = i.vars().clone();
    let ext = fresh_var(&vars);
    let t = Polynomial::var(&ext, vars.len());
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|h| h.extend_to(&ext)).collect();
    gens.push(Polynomial::one(ext.clone()).sub(&t.mul(&p.extend_to(&ext))));
    let basis = gb_in(&gens, TermOrder::DegRevLex);
    Ok(basis.len() == 1 && basis[0].lm().is_one())
}
