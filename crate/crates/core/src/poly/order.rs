use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::{degrevlex, revlex_tiebreak, Monomial};
use super::PolyError;

/// Monomial orders exposed to callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MonomialOrder {
    /// Degree reverse lexicographic; a well-order with 1 smallest.
    GlobalDegrevlex,
    /// Lower total degree is larger, ties broken reverse lexicographically;
    /// 1 is the largest monomial. Used for standard bases at the origin.
    LocalNegDegrevlex,
}

impl MonomialOrder {
    pub(crate) fn term_order(self) -> TermOrder {
        match self {
            MonomialOrder::GlobalDegrevlex => TermOrder::DegRevLex,
            MonomialOrder::LocalNegDegrevlex => TermOrder::NegDegRevLex,
        }
    }
}

/// Compare two monomials under `order`.
pub fn compare(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering, PolyError> {
    if a.nvars() != b.nvars() {
        return Err(PolyError::LengthMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    Ok(order.term_order().cmp(a, b))
}

/// Orders used internally by the basis engines. `Block { split }` compares
/// the variables `split..` first (degrevlex on that block), then the
/// variables `..split`; it eliminates the trailing block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum TermOrder {
    DegRevLex,
    NegDegRevLex,
    Block {
        split: usize,
    },
    /// For homogenised inputs whose last variable is the homogenising one:
    /// total degree, then the local order on the remaining variables.
    HomLocal,
}

impl TermOrder {
    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match *self {
            TermOrder::DegRevLex => degrevlex(ea, eb),
            TermOrder::NegDegRevLex => {
                let da = a.degree();
                let db = b.degree();
                match db.cmp(&da) {
                    Ordering::Equal => revlex_tiebreak(ea, eb),
                    o => o,
                }
            }
            TermOrder::Block { split } => match degrevlex(&ea[split..], &eb[split..]) {
                Ordering::Equal => degrevlex(&ea[..split], &eb[..split]),
                o => o,
            },
            TermOrder::HomLocal => {
                let n = ea.len() - 1;
                match degrevlex_total(ea, eb) {
                    Ordering::Equal => match ea[n].cmp(&eb[n]) {
                        Ordering::Equal => revlex_tiebreak(&ea[..n], &eb[..n]),
                        o => o,
                    },
                    o => o,
                }
            }
        }
    }

    pub(crate) fn is_local(&self) -> bool {
        matches!(self, TermOrder::NegDegRevLex)
    }
}

fn degrevlex_total(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>())
}
