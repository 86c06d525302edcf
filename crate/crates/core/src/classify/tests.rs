use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

fn summary(ps: &[CohomologyProfile]) -> Vec<(u64, u64, TorsionDescriptor)> {
    ps.iter().map(|p| (p.b_nm1, p.b_n, p.torsion)).collect()
}

fn run(l0: u64, l1: u64, m: Option<u64>) -> Result<Vec<CohomologyProfile>, ClassifyError> {
    classify(&ClassifyInput {
        m,
        ..ClassifyInput::new(l0, l1)
    })
}

const NONE: TorsionDescriptor = TorsionDescriptor::None;
const CYCLIC: TorsionDescriptor = TorsionDescriptor::SingleCyclic {
    allowed_primes: PrimeRule::All,
};
const CYCLIC_RULE: TorsionDescriptor = TorsionDescriptor::SingleCyclic {
    allowed_primes: PrimeRule::ThreeOrOneModSix,
};

#[test]
fn smooth_family() {
    assert_eq!(summary(&run(0, 1, None).unwrap()), vec![(1, 0, NONE)]);
    assert_eq!(summary(&run(0, 4, None).unwrap()), vec![(4, 0, NONE)]);
}

#[test]
fn single_simple_line() {
    assert_eq!(summary(&run(2, 1, None).unwrap()), vec![(0, 1, NONE)]);
    assert_eq!(summary(&run(5, 1, Some(1)).unwrap()), vec![(0, 4, NONE)]);
}

#[test]
fn rank_two_le_module() {
    assert_eq!(summary(&run(3, 2, Some(1)).unwrap()), vec![(0, 1, CYCLIC_RULE)]);
    assert_eq!(summary(&run(4, 2, None).unwrap()), vec![(0, 2, CYCLIC), (1, 3, NONE)]);
    assert_eq!(
        summary(&run(4, 2, Some(2)).unwrap()),
        vec![(0, 2, CYCLIC), (1, 3, NONE)]
    );
}

#[test]
fn rank_two_polar_module() {
    assert_eq!(summary(&run(2, 3, None).unwrap()), vec![(1, 0, CYCLIC), (2, 1, NONE)]);
    assert_eq!(
        summary(&run(2, 3, Some(1)).unwrap()),
        vec![(1, 0, CYCLIC), (2, 1, NONE)]
    );
    let refined = run(2, 3, Some(2)).unwrap();
    assert_eq!(summary(&refined), vec![(1, 0, CYCLIC_RULE)]);
    assert!(refined[0].source.iter().any(|s| s == TRACE_REFINEMENT));
}

#[test]
fn equal_threes() {
    let ps = run(3, 3, None).unwrap();
    assert_eq!(summary(&ps), vec![(2, 2, NONE)]);
    assert!(ps[0].open_example);
}

#[test]
fn unit_polar_number() {
    let ps = classify(&ClassifyInput {
        r: Some(Interval::exact(1)),
        ..ClassifyInput::new(1, 2)
    })
    .unwrap();
    assert_eq!(summary(&ps), vec![(1, 0, NONE)]);
    assert!(ps[0].open_example);
    assert!(ps[0].notes.iter().any(|n| n.contains("vertical monodromy")));
    assert_eq!(summary(&run(1, 5, Some(2)).unwrap()), vec![(4, 0, NONE)]);
}

#[test]
fn invalid_and_inconsistent_inputs() {
    assert!(matches!(run(3, 0, None), Err(ClassifyError::InvalidInput(_))));
    assert!(matches!(run(3, 2, Some(0)), Err(ClassifyError::InvalidInput(_))));
    assert!(matches!(run(1, 3, Some(1)), Err(ClassifyError::Inconsistent(_))));
    assert!(matches!(run(1, 1, None), Err(ClassifyError::Inconsistent(_))));
    assert!(matches!(run(2, 2, None), Err(ClassifyError::Inconsistent(_))));
    assert!(matches!(run(0, 3, Some(2)), Err(ClassifyError::Inconsistent(_))));
    assert!(matches!(run(2, 5, Some(4)), Err(ClassifyError::Inconsistent(_))));
    let irreducible = |l0, l1, m| {
        classify(&ClassifyInput {
            m,
            r: Some(Interval::exact(1)),
            ..ClassifyInput::new(l0, l1)
        })
    };
    assert!(matches!(irreducible(1, 3, None), Err(ClassifyError::Inconsistent(_))));
    assert!(matches!(
        irreducible(3, 3, Some(2)),
        Err(ClassifyError::Inconsistent(_))
    ));
    assert!(irreducible(3, 3, Some(1)).is_ok());
}

#[test]
fn transversal_milnor_numbers_cap_the_lower_rank() {
    let with_mu = |l0, l1, mu: Vec<u64>| {
        classify(&ClassifyInput {
            mu: Some(mu),
            ..ClassifyInput::new(l0, l1)
        })
    };
    // Envelope for (4, 5) has b_nm1 in 1..=4.
    assert_eq!(run(4, 5, None).unwrap().len(), 4);
    let capped = with_mu(4, 5, vec![1, 1]).unwrap();
    assert_eq!(summary(&capped).iter().map(|t| t.0).collect::<Vec<_>>(), vec![1, 2]);
    assert!(matches!(with_mu(0, 3, vec![2]), Err(ClassifyError::Inconsistent(_))));
    assert!(matches!(with_mu(3, 2, vec![3]), Err(ClassifyError::Inconsistent(_))));
    // (3, 3) needs b_nm1 = 2.
    assert!(matches!(with_mu(3, 3, vec![1]), Err(ClassifyError::Inconsistent(_))));
}

#[test]
fn envelope_torsion_bounds() {
    let ps = run(5, 4, None).unwrap();
    assert_eq!(
        summary(&ps),
        vec![
            (
                0,
                1,
                TorsionDescriptor::Bounded {
                    bound: 4,
                    allowed_primes: PrimeRule::All
                }
            ),
            (
                1,
                2,
                TorsionDescriptor::Bounded {
                    bound: 3,
                    allowed_primes: PrimeRule::All
                }
            ),
            (2, 3, CYCLIC),
            (3, 4, NONE),
        ]
    );
    let equal = run(4, 4, None).unwrap();
    assert_eq!(summary(&equal).iter().map(|t| t.0).collect::<Vec<_>>(), vec![2, 3]);
}

#[test]
fn euler_consistency_examples() {
    let p = |b1, b2| profile(b1, b2, NONE, ENVELOPE);
    assert!(euler_consistency(&p(0, 4), 5, 1));
    assert!(euler_consistency(&p(2, 2), 3, 3));
    assert!(!euler_consistency(&p(1, 1), 3, 2));
}

#[test]
fn prime_rule_examples() {
    assert_eq!(prime_allowed(3), Ok(true));
    assert_eq!(prime_allowed(7), Ok(true));
    assert_eq!(prime_allowed(5), Ok(false));
    assert_eq!(prime_allowed(2), Ok(false));
    assert_eq!(prime_allowed(9), Err(NotPrime(9)));
    assert_eq!(prime_allowed(1), Err(NotPrime(1)));
}

fn reducible_mod(p: u64, linear: u64) -> bool {
    // t^2 + linear*t + 1 has a root mod p.
    (0..p).any(|t| (t * t + linear * t + 1).is_multiple_of(p))
}

#[test]
fn prime_rule_matches_quadratic_reducibility() {
    for p in (2..1000).filter(|&p| is_prime(p)) {
        let plus = reducible_mod(p, 1);
        let minus = reducible_mod(p, p - 1);
        assert_eq!(plus, minus, "p = {p}");
        assert_eq!(prime_allowed(p), Ok(plus), "p = {p}");
    }
}

#[test]
fn profiles_serialize_with_tags() {
    let v = serde_json::to_value(&run(3, 2, Some(1)).unwrap()[0]).unwrap();
    assert_eq!(v["torsion"]["kind"], "SINGLE_CYCLIC");
    assert_eq!(v["torsion"]["allowed_primes"], "RULE_3_OR_1_MOD_6");
    let v = serde_json::to_value(NONE).unwrap();
    assert_eq!(v["kind"], "NONE");
}

/// (b_nm1, b_n, torsion bound, primes restricted)
type Shape = (u64, u64, u64, bool);

/// Independent reading of the statements: per admissible value of `m`,
/// filter every candidate shape through each statement that applies, then
/// take the union, dropping shapes subsumed by a less restricted one.
fn enumerate(l0: u64, l1: u64, m: Option<u64>) -> Option<BTreeSet<Shape>> {
    let statements_allow = |mv: u64, s: &Shape| -> bool {
        let &(b1, b2, bound, restricted) = s;
        if b1 as i64 - b2 as i64 != l1 as i64 - l0 as i64 {
            return false;
        }
        if l0 == 0 {
            return b1 == l1 && b2 == 0 && bound == 1 && !restricted;
        }
        // strict Betti inequality, torsion exactly as licensed
        if bound != l1 - b1.min(l1) || b1 + bound > l1 || b2 + bound > l0 {
            return false;
        }
        let refinement = (l1 == 2 && mv == 1) || (l0 == 2 && l1 >= 3 && mv == 2);
        if restricted != (refinement && bound > 1) {
            return false;
        }
        if l1 == 1 && !(b1 == 0 && b2 == l0 - 1) {
            return false;
        }
        if l0 == 1 && !(b1 == l1 - 1 && b2 == 0) {
            return false;
        }
        if l1 == 2 && b1 > 1 || (l1 == 2 && mv == 1 && b1 != 0) {
            return false;
        }
        if l0 == 2 && l1 >= 3 && (b2 > 1 || (mv == 2 && b2 != 0)) {
            return false;
        }
        if l0 == l1 && b1 < 2 {
            return false;
        }
        true
    };
    let m_possible = |mv: u64| -> bool {
        mv >= 1
            && mv <= l1
            && (l0 != 0 || mv == 1)
            && (l0 == 0 || mv <= l0 + 1)
            && !(l0 == 1 && l1 >= 2 && mv != 2)
            && !(l0 == 1 && l1 == 1)
            && !(l0 == 2 && l1 == 2)
    };
    let ms: Vec<u64> = match m {
        Some(v) => vec![v],
        None => (1..=l1).collect(),
    };
    let mut all = BTreeSet::new();
    for mv in ms.into_iter().filter(|&v| m_possible(v)) {
        for b1 in 0..=8 {
            for b2 in 0..=8 {
                for bound in 1..=8 {
                    for restricted in [false, true] {
                        let s = (b1, b2, bound, restricted);
                        if statements_allow(mv, &s) {
                            all.insert(s);
                        }
                    }
                }
            }
        }
    }
    let subsumed: Vec<Shape> = all
        .iter()
        .filter(|s| s.3 && all.contains(&(s.0, s.1, s.2, false)))
        .copied()
        .collect();
    for s in subsumed {
        all.remove(&s);
    }
    (!all.is_empty()).then_some(all)
}

fn shapes(ps: &[CohomologyProfile]) -> BTreeSet<Shape> {
    ps.iter()
        .map(|p| {
            (
                p.b_nm1,
                p.b_n,
                p.torsion.bound(),
                p.torsion.prime_rule() == Some(PrimeRule::ThreeOrOneModSix),
            )
        })
        .collect()
}

#[test]
fn exhaustive_grid_matches_enumerator() {
    for l0 in 0..=6 {
        for l1 in 1..=6 {
            for m in [None, Some(1), Some(2), Some(3)] {
                let got = run(l0, l1, m);
                let want = enumerate(l0, l1, m);
                match (&got, &want) {
                    (Ok(ps), Some(w)) => {
                        assert_eq!(&shapes(ps), w, "({l0}, {l1}, {m:?})");
                        assert_eq!(ps.len(), w.len(), "duplicates at ({l0}, {l1}, {m:?})");
                    }
                    (Err(ClassifyError::Inconsistent(_)), None) => {}
                    _ => panic!("({l0}, {l1}, {m:?}): {got:?} vs {want:?}"),
                }
            }
        }
    }
}

fn subsumes(wide: &CohomologyProfile, narrow: &CohomologyProfile) -> bool {
    wide.b_nm1 == narrow.b_nm1
        && wide.b_n == narrow.b_n
        && wide.torsion.bound() >= narrow.torsion.bound()
        && (wide.torsion.prime_rule() != Some(PrimeRule::ThreeOrOneModSix)
            || narrow.torsion.prime_rule() != Some(PrimeRule::All))
}

proptest! {
    #[test]
    fn emitted_profiles_respect_the_bounds(l0 in 0u64..12, l1 in 1u64..12, m in proptest::option::of(1u64..6)) {
        if let Ok(ps) = run(l0, l1, m) {
            prop_assert!(!ps.is_empty());
            for p in &ps {
                prop_assert!(euler_consistency(p, l0, l1));
                if l0 > 0 {
                    let tau = p.torsion.bound() - 1;
                    prop_assert!(p.b_nm1 + tau < l1);
                    prop_assert!(p.b_n + tau < l0);
                }
                if l0 == l1 {
                    prop_assert!(p.b_nm1 >= 2);
                }
            }
        }
    }

    #[test]
    fn missing_data_only_widens(l0 in 0u64..9, l1 in 1u64..9, m in 1u64..5) {
        if let Ok(narrow) = run(l0, l1, Some(m)) {
            let wide = run(l0, l1, None).unwrap();
            for p in &narrow {
                prop_assert!(wide.iter().any(|w| subsumes(w, p)), "{:?} not covered", p);
            }
        }
    }
}
