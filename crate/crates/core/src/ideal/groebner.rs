//! Buchberger's algorithm with the Gebauer-Moeller pair update.

use crate::poly::{Monomial, TermOrder};

use super::sp::{full_reduce, top_reduce, Sp};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    ord: TermOrder,
    polys: Vec<Sp>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn basis(&self) -> Vec<&Sp> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    fn insert(&mut self, h: Sp) {
        let k = self.polys.len();
        let hl = h.lm().clone();
        self.polys.push(h);
        self.active.push(true);

        let mut cands: Vec<Pair> = (0..k)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: k,
                lcm: self.polys[g].lm().lcm(&hl),
            })
            .collect();

        // Chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = cands.pop() {
            let coprime = self.polys[p.i].lm().is_coprime(&hl);
            let dominated = cands.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        // Product criterion.
        kept.retain(|p| !self.polys[p.i].lm().is_coprime(&hl));

        // Old pairs made redundant by the new leading monomial.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hl.divides(&p.lcm) && polys[p.i].lm().lcm(&hl) != p.lcm && polys[p.j].lm().lcm(&hl) != p.lcm)
        });
        self.pairs.extend(kept);

        for g in 0..k {
            if self.active[g] && hl.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            ord.cmp(&pa.lcm, &pb.lcm).then(pa.j.cmp(&pb.j)).then(pa.i.cmp(&pb.i))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Groebner basis for a global order, sorted by ascending leading
/// monomial. The zero ideal gives an empty list.
pub(crate) fn groebner(gens: Vec<Sp>, ord: TermOrder) -> Vec<Sp> {
    debug_assert!(!ord.is_local());
    let mut st = State {
        ord,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut gens: Vec<Sp> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    gens.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for g in gens {
        let h = top_reduce(g, &st.basis(), ord);
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return vec![h];
        }
        st.insert(h);
    }
    while let Some(p) = st.next_pair() {
        let s = Sp::spoly(&st.polys[p.i], &st.polys[p.j], ord);
        let h = top_reduce(s, &st.basis(), ord);
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return vec![h];
        }
        st.insert(h);
    }
    interreduce(st.basis().into_iter().cloned().collect(), ord)
}

/// Turn a minimal Groebner basis into the reduced one. Leading terms are
/// irreducible by minimality, so full reduction only touches tails.
fn interreduce(mut g: Vec<Sp>, ord: TermOrder) -> Vec<Sp> {
    g.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    (0..g.len())
        .map(|k| {
            let others: Vec<&Sp> = g.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, p)| p).collect();
            full_reduce(g[k].clone(), &others, ord)
        })
        .collect()
}
