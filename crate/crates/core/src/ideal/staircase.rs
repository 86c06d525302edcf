//! Counting on monomial ideals given by generator exponent vectors.

/// Number of monomials outside the ideal, or `None` when infinite.
pub(crate) fn colength(gens: &[Vec<u32>], nvars: usize) -> Option<u64> {
    let gens: Vec<&[u32]> = gens.iter().map(|g| g.as_slice()).collect();
    count(&gens, nvars)
}

fn count(gens: &[&[u32]], nvars: usize) -> Option<u64> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Some(0);
    }
    if nvars == 0 {
        return Some(1);
    }
    // Split on the first variable; the slice at height k only changes at
    // exponents that occur among the generators.
    let bound = gens
        .iter()
        .filter(|g| g[1..].iter().all(|&e| e == 0))
        .map(|g| g[0])
        .min()?;
    let mut cuts: Vec<u32> = gens.iter().map(|g| g[0]).filter(|&e| e < bound).collect();
    cuts.push(0);
    cuts.push(bound);
    cuts.sort_unstable();
    cuts.dedup();
    let mut total = 0u64;
    for w in cuts.windows(2) {
        let (k, next) = (w[0], w[1]);
        let slice: Vec<&[u32]> = gens.iter().filter(|g| g[0] <= k).map(|g| &g[1..]).collect();
        let c = count(&slice, nvars - 1)?;
        total = total.checked_add(c.checked_mul(u64::from(next - k))?)?;
    }
    Some(total)
}

/// Largest set of variables containing no generator's support; `None`
/// for the unit ideal.
pub(crate) fn dimension(gens: &[Vec<u32>], nvars: usize) -> Option<usize> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return None;
    }
    let supports: Vec<u64> = gens
        .iter()
        .map(|g| {
            g.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    let best = (0u64..(1u64 << nvars))
        .filter(|&set| supports.iter().all(|&s| s & !set != 0))
        .map(|set| set.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Some(best)
}

/// Leading coefficient of the Hilbert polynomial for a monomial ideal of
/// dimension one: the number of standard monomials of degree exactly `s`
/// for large `s`.
pub(crate) fn degree_dim1(gens: &[Vec<u32>], nvars: usize) -> u64 {
    let mut total = 0u64;
    for i in 0..nvars {
        let pure = gens
            .iter()
            .any(|g| g[i] > 0 && g.iter().enumerate().all(|(j, &e)| j == i || e == 0));
        if pure {
            continue;
        }
        // (M : x_i^inf) with x_i set to 1
        let sat: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| g.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect())
            .collect();
        total += colength(&sat, nvars - 1).unwrap_or(0);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_colength(gens: &[Vec<u32>], nvars: usize, bound: u32) -> u64 {
        let mut count = 0;
        let mut e = vec![0u32; nvars];
        loop {
            if !gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == nvars {
                    return count;
                }
                e[k] += 1;
                if e[k] <= bound {
                    break;
                }
                e[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(colength(&[vec![2, 0], vec![0, 3]], 2), Some(6));
        assert_eq!(colength(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3), Some(1));
        assert_eq!(colength(&[vec![2, 0], vec![1, 1]], 2), None);
        assert_eq!(colength(&[vec![0, 0]], 2), Some(0));
        assert_eq!(dimension(&[vec![1, 1]], 2), Some(1));
        assert_eq!(dimension(&[vec![0, 0]], 2), None);
        assert_eq!(dimension(&[], 3), Some(3));
        // (y, x^2 z): lines x=y=0 and y=z=0
        assert_eq!(degree_dim1(&[vec![0, 1, 0], vec![2, 0, 1]], 3), 3);
        assert_eq!(degree_dim1(&[vec![1, 0, 0], vec![0, 1, 0]], 3), 1);
    }

    fn arb_ideal() -> impl Strategy<Value = (Vec<Vec<u32>>, usize)> {
        (1usize..=4).prop_flat_map(|n| {
            let pures = prop::collection::vec(1u32..6, n);
            let mixed = prop::collection::vec(prop::collection::vec(0u32..6, n), 0..5);
            (pures, mixed).prop_map(move |(p, mut m)| {
                for (i, e) in p.into_iter().enumerate() {
                    let mut g = vec![0; n];
                    g[i] = e;
                    m.push(g);
                }
                (m, n)
            })
        })
    }

    proptest! {
        #[test]
        fn colength_matches_box_count((gens, n) in arb_ideal()) {
            prop_assert_eq!(colength(&gens, n), Some(brute_colength(&gens, n, 6)));
        }

        #[test]
        fn degree_matches_slice_count(
            free in 0usize..3,
            pures in (1u32..4, 1u32..4),
            mixed in prop::collection::vec(prop::collection::vec(0u32..4, 3), 0..4),
        ) {
            let mut gens = mixed;
            let others: Vec<usize> = (0..3).filter(|&i| i != free).collect();
            for (i, e) in others.into_iter().zip([pures.0, pures.1]) {
                let mut g = vec![0; 3];
                g[i] = e;
                gens.push(g);
            }
            prop_assume!(dimension(&gens, 3) == Some(1));
            let at = |s: u32| -> u64 {
                let mut c = 0;
                for a in 0..=s {
                    for b in 0..=s - a {
                        let e = [a, b, s - a - b];
                        if !gens.iter().any(|g| g.iter().zip(&e).all(|(x, y)| x <= y)) {
                            c += 1;
                        }
                    }
                }
                c
            };
            prop_assert_eq!(at(30), degree_dim1(&gens, 3));
        }
    }
}
