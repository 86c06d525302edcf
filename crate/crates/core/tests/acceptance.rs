//! Acceptance run: one pass/fail line per criterion, each under ten seconds.
//!
//!     cargo test -p lecycles-core --test acceptance -- --nocapture

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use lecycles_core::classify::{
    classify, prime_allowed, ClassifyInput, CohomologyProfile, PrimeRule, TorsionDescriptor,
};
use lecycles_core::components::{split_components, SplitConfig};
use lecycles_core::corpus::{parse_corpus, run_entry, BUNDLED};
use lecycles_core::ideal::{buchberger, local_colength, normal_form, Colength};
use lecycles_core::le::jacobian_scheme;
use lecycles_core::lemodule::{possible_char_polys, smith_normal_form, IntegerMatrix};
use lecycles_core::poly::{parse_polynomial, var_list, Monomial, MonomialOrder, Polynomial};
use lecycles_core::report::{build_report, AnalysisReport, Status};
use lecycles_core::seeds;

const LIMIT: Duration = Duration::from_secs(10);

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn analyze(text: &str, vars: &[&str]) -> AnalysisReport {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    build_report(text, &vars, &SplitConfig::default()).expect("input parses")
}

fn shape(p: &CohomologyProfile) -> (u64, u64, TorsionDescriptor) {
    (p.b_nm1, p.b_n, p.torsion)
}

fn sorted(v: &[String]) -> Vec<String> {
    let mut v = v.to_vec();
    v.sort();
    v
}

const Z: [&str; 3] = ["z0", "z1", "z2"];

fn colength_of(texts: &[&str]) -> Option<u64> {
    let gens: Vec<Polynomial> = texts.iter().map(|t| parse_polynomial(t, &Z).unwrap()).collect();
    local_colength(&gens).unwrap().finite()
}

fn flagship() -> Check {
    let r = analyze("(z^2-x^2-y^2)*(z-x)", &["x", "y", "z"]);
    ensure!(r.status == Status::Valid, "status {:?}", r.status);
    let cycles = r.cycles.as_ref().unwrap();
    ensure!(cycles.polar.len() == 1, "polar components {:?}", cycles.polar);
    let polar = &cycles.polar[0];
    ensure!(
        sorted(&polar.generators) == ["x + 3*z", "y"] && polar.length == 1,
        "polar curve {:?}",
        polar
    );
    ensure!(cycles.le.len() == 1, "Lê components {:?}", cycles.le);
    let le = &cycles.le[0];
    ensure!(
        sorted(&le.generators) == ["x - z", "y"] && le.length == 3,
        "Lê cycle {:?}",
        le
    );
    let inv = r.invariants.as_ref().unwrap();
    ensure!(
        (inv.lambda0, inv.lambda1) == (2, 3),
        "lambdas {} {}",
        inv.lambda0,
        inv.lambda1
    );
    let got: Vec<_> = r.profiles.iter().map(shape).collect();
    let want = vec![
        (
            1,
            0,
            TorsionDescriptor::SingleCyclic {
                allowed_primes: PrimeRule::All,
            },
        ),
        (2, 1, TorsionDescriptor::None),
    ];
    ensure!(got == want, "profiles {got:?}");
    Ok(())
}

fn constant_family() -> Check {
    let r = analyze("z1^2+z2^2", &Z);
    let inv = r.invariants.as_ref().ok_or("no invariants")?;
    ensure!(
        (inv.lambda0, inv.lambda1) == (0, 1),
        "lambdas {} {}",
        inv.lambda0,
        inv.lambda1
    );
    let got: Vec<_> = r.profiles.iter().map(shape).collect();
    ensure!(got == [(1, 0, TorsionDescriptor::None)], "profiles {got:?}");
    Ok(())
}

fn simple_line() -> Check {
    // polar curve V(z2, 3 z1 + 2 z0) meeting the polar hypersurface z1^2
    let oracle = colength_of(&["3*z1 + 2*z0", "z2", "z1^2"]);
    ensure!(oracle == Some(2), "oracle colength {oracle:?}");
    let r = analyze("z2^2-z1^3-z0*z1^2", &Z);
    let inv = r.invariants.as_ref().ok_or("no invariants")?;
    ensure!(
        (inv.lambda0, inv.lambda1) == (2, 1),
        "lambdas {} {}",
        inv.lambda0,
        inv.lambda1
    );
    let got: Vec<_> = r.profiles.iter().map(shape).collect();
    ensure!(got == [(0, 1, TorsionDescriptor::None)], "profiles {got:?}");
    Ok(())
}

fn lambda_one_two() -> Check {
    let r = analyze("(z0^2-z1^2+z2^2)*z2", &Z);
    let inv = r.invariants.as_ref().ok_or("no invariants")?;
    ensure!(
        (inv.lambda0, inv.lambda1, inv.m) == (4, 2, Some(2)) && inv.mu == [1, 1],
        "two lines: {inv:?}"
    );
    ensure!(r.cycles.as_ref().unwrap().le.len() == 2, "two lines: Lê components");

    let r = analyze("(z1^2-z0^3+z2)*z2", &Z);
    let inv = r.invariants.as_ref().ok_or("no invariants")?;
    ensure!(
        (inv.lambda0, inv.lambda1, inv.m) == (5, 2, Some(2)) && inv.mu == [1],
        "cuspidal: {inv:?}"
    );
    let le = &r.cycles.as_ref().unwrap().le;
    ensure!(
        le.len() == 1 && le[0].mult_origin == 2,
        "cuspidal: Lê components {le:?}"
    );

    let r = analyze("z2^2-z1^4-z0*z1^3", &Z);
    let inv = r.invariants.as_ref().ok_or("no invariants")?;
    ensure!(
        (inv.lambda0, inv.lambda1, inv.m) == (3, 2, Some(1)) && inv.mu == [2],
        "quartic: {inv:?}"
    );
    let got: Vec<_> = r.profiles.iter().map(shape).collect();
    let want = [(
        0,
        1,
        TorsionDescriptor::SingleCyclic {
            allowed_primes: PrimeRule::ThreeOrOneModSix,
        },
    )];
    ensure!(got == want, "quartic profiles {got:?}");
    Ok(())
}

fn vertical_monodromy() -> Check {
    let oracle = colength_of(&["z1", "z2", "z0^5"]);
    ensure!(oracle == Some(5), "oracle colength {oracle:?}");
    let r = analyze("z2^2-z1^3-z0^2*z1^2", &Z);
    let inv = r.invariants.as_ref().ok_or("no invariants")?;
    ensure!(
        (inv.lambda0, inv.lambda1) == (5, 1),
        "lambdas {} {}",
        inv.lambda0,
        inv.lambda1
    );
    let got: Vec<_> = r.profiles.iter().map(|p| (p.b_nm1, p.b_n)).collect();
    ensure!(got == [(0, 4)], "profiles {got:?}");
    Ok(())
}

// (b_{n-1}, b_n, torsion bound, restricted prime rule)
type Shape = (u64, u64, u64, bool);

/// Enumerates candidate shapes from the statements one at a time, per
/// admissible value of `m`, and takes the union.
fn enumerate(l0: u64, l1: u64, m: Option<u64>) -> Option<BTreeSet<Shape>> {
    let allowed = |mv: u64, (b1, b2, bound, restricted): Shape| -> bool {
        if b1 as i64 - b2 as i64 != l1 as i64 - l0 as i64 {
            return false;
        }
        if l0 == 0 {
            return b1 == l1 && b2 == 0 && bound == 1 && !restricted;
        }
        if bound + b1 != l1 || b2 + bound > l0 {
            return false;
        }
        let refined = (l1 == 2 && mv == 1) || (l0 == 2 && l1 >= 3 && mv == 2);
        if restricted != (refined && bound > 1) {
            return false;
        }
        match (l0, l1) {
            (_, 1) => b1 == 0 && b2 == l0 - 1,
            (1, _) => b1 == l1 - 1 && b2 == 0,
            (_, 2) => b1 <= 1 && !(mv == 1 && b1 != 0),
            (2, _) => b2 <= 1 && !(mv == 2 && b2 != 0),
            _ => l0 != l1 || b1 >= 2,
        }
    };
    let possible = |mv: u64| {
        mv >= 1
            && mv <= l1
            && (l0 > 0 || mv == 1)
            && (l0 == 0 || mv <= l0 + 1)
            && !(l0 == 1 && mv != 2)
            && (l0, l1) != (2, 2)
    };
    let ms: Vec<u64> = m.map_or_else(|| (1..=l1).collect(), |v| vec![v]);
    let mut all = BTreeSet::new();
    for mv in ms.into_iter().filter(|&v| possible(v)) {
        for b1 in 0..=8 {
            for b2 in 0..=8 {
                for bound in 1..=8 {
                    for restricted in [false, true] {
                        if allowed(mv, (b1, b2, bound, restricted)) {
                            all.insert((b1, b2, bound, restricted));
                        }
                    }
                }
            }
        }
    }
    let covered: Vec<Shape> = all
        .iter()
        .filter(|s| s.3 && all.contains(&(s.0, s.1, s.2, false)))
        .copied()
        .collect();
    for s in covered {
        all.remove(&s);
    }
    (!all.is_empty()).then_some(all)
}

fn classifier_grid() -> Check {
    for l0 in 0..=6u64 {
        for l1 in 1..=6u64 {
            for m in [None, Some(1), Some(2), Some(3)] {
                let got = classify(&ClassifyInput {
                    m,
                    ..ClassifyInput::new(l0, l1)
                });
                let want = enumerate(l0, l1, m);
                match (got, want) {
                    (Ok(ps), Some(w)) => {
                        let shapes: BTreeSet<Shape> = ps
                            .iter()
                            .map(|p| {
                                (
                                    p.b_nm1,
                                    p.b_n,
                                    p.torsion.bound(),
                                    p.torsion.prime_rule() == Some(PrimeRule::ThreeOrOneModSix),
                                )
                            })
                            .collect();
                        ensure!(
                            shapes == w && ps.len() == w.len(),
                            "({l0}, {l1}, {m:?}): {shapes:?} vs {w:?}"
                        );
                    }
                    (Err(_), None) => {}
                    (got, want) => return Err(format!("({l0}, {l1}, {m:?}): {got:?} vs {want:?}")),
                }
            }
        }
    }
    let three = classify(&ClassifyInput::new(3, 3)).map_err(|e| e.to_string())?;
    let got: Vec<_> = three.iter().map(shape).collect();
    ensure!(got == [(2, 2, TorsionDescriptor::None)], "(3, 3) gives {got:?}");
    Ok(())
}

fn has_root_mod(p: u64, linear: u64) -> bool {
    (0..p).any(|t| (t * t + linear * t + 1).is_multiple_of(p))
}

fn prime_rule() -> Check {
    let mut count = 0;
    for p in 2..1000u64 {
        let prime = (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !prime {
            ensure!(prime_allowed(p).is_err(), "{p} accepted as prime");
            continue;
        }
        count += 1;
        let plus = has_root_mod(p, 1);
        let minus = has_root_mod(p, p - 1);
        ensure!(plus == minus, "t^2 + t + 1 and t^2 - t + 1 disagree mod {p}");
        ensure!(prime_allowed(p) == Ok(plus), "rule disagrees at {p}");
    }
    ensure!(count == 168, "{count} primes below 1000");
    Ok(())
}

fn rational(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &lecycles_core::poly::VarList) -> Polynomial {
    let terms = rng.gen_range(1..=3);
    Polynomial::from_terms(
        vars.clone(),
        (0..terms).map(|_| {
            let e = vec![rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3)];
            (Monomial::from_exponents(e), rational(rng.gen_range(-4..=4)))
        }),
    )
}

fn groebner_suite(rng: &mut ChaCha8Rng) -> Check {
    let vars = var_list(&["x", "y", "z"]).unwrap();
    let order = MonomialOrder::GlobalDegrevlex;
    for case in 0..60 {
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_poly(rng, &vars)).collect();
        if gens.iter().all(Polynomial::is_zero) {
            continue;
        }
        let b = buchberger(&gens, order).map_err(|e| e.to_string())?;
        ensure!(b.is_reduced(), "case {case}: basis not reduced");
        let mut combo = Polynomial::zero(vars.clone());
        for g in &gens {
            ensure!(
                normal_form(g, &b).unwrap().is_zero(),
                "case {case}: generator not reduced to zero"
            );
            combo = combo.add(&g.mul(&random_poly(rng, &vars)));
        }
        ensure!(
            normal_form(&combo, &b).unwrap().is_zero(),
            "case {case}: combination not in ideal"
        );
        let mut shuffled = gens.clone();
        shuffled.shuffle(rng);
        shuffled.push(combo);
        ensure!(
            buchberger(&shuffled, order).unwrap() == b,
            "case {case}: basis not unique"
        );
    }
    Ok(())
}

/// Standard monomials counted directly in the box cut out by the pure
/// powers; infinite when some variable has no pure power.
fn staircase_oracle(gens: &[[u32; 3]]) -> Option<u64> {
    let mut bound = [u32::MAX; 3];
    for g in gens {
        let support: Vec<usize> = (0..3).filter(|&i| g[i] > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            bound[i] = bound[i].min(g[i]);
        }
        if support.is_empty() {
            return Some(0);
        }
    }
    if bound.contains(&u32::MAX) {
        return None;
    }
    let mut count = 0;
    for a in 0..bound[0] {
        for b in 0..bound[1] {
            for c in 0..bound[2] {
                if !gens.iter().any(|g| g[0] <= a && g[1] <= b && g[2] <= c) {
                    count += 1;
                }
            }
        }
    }
    Some(count)
}

fn staircase_suite(rng: &mut ChaCha8Rng) -> Check {
    let vars = var_list(&["x", "y", "z"]).unwrap();
    for case in 0..200 {
        let mut gens: Vec<[u32; 3]> = Vec::new();
        for i in 0..3 {
            if rng.gen_bool(0.85) {
                let mut e = [0; 3];
                e[i] = rng.gen_range(1..=6);
                gens.push(e);
            }
        }
        for _ in 0..rng.gen_range(0..=4) {
            gens.push([rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4)]);
        }
        if gens.is_empty() {
            gens.push([rng.gen_range(1..4), rng.gen_range(1..4), 0]);
        }
        let polys: Vec<Polynomial> = gens
            .iter()
            .map(|e| {
                let c = rational(rng.gen_range(1..=5));
                Polynomial::from_terms(vars.clone(), [(Monomial::from_exponents(e.to_vec()), c)])
            })
            .collect();
        let want = staircase_oracle(&gens);
        let got = local_colength(&polys).map_err(|e| e.to_string())?;
        let got = match got {
            Colength::Finite(k) => Some(k),
            Colength::Infinite => None,
        };
        ensure!(got == want, "case {case} {gens:?}: {got:?} vs {want:?}");
    }
    Ok(())
}

fn random_linear(rng: &mut ChaCha8Rng, vars: &lecycles_core::poly::VarList) -> Polynomial {
    Polynomial::from_terms(
        vars.clone(),
        (0..vars.len()).map(|i| {
            let c = rng.gen_range(1..=30) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (Monomial::var(vars.len(), i), rational(c))
        }),
    )
}

fn reconstruction_suite(rng: &mut ChaCha8Rng) -> Check {
    let mut checked = 0;
    for entry in parse_corpus(BUNDLED).unwrap() {
        let f = parse_polynomial(&entry.polynomial, &entry.variables).unwrap();
        let Ok((partials, _)) = jacobian_scheme(&f) else {
            continue;
        };
        let config = SplitConfig::default();
        let d = split_components(&partials, &config).map_err(|e| format!("{}: {e}", entry.name))?;
        for _ in 0..3 {
            let ell = random_linear(rng, f.vars());
            let mut whole = partials.clone();
            whole.push(ell.clone());
            let whole = local_colength(&whole).unwrap().finite();
            let parts: Option<u64> = d
                .components
                .iter()
                .map(|c| {
                    let mut g = c.prime.generators().to_vec();
                    g.push(ell.clone());
                    local_colength(&g).unwrap().finite().map(|k| k * c.length)
                })
                .sum();
            ensure!(
                whole.is_some() && whole == parts,
                "{}: colength {whole:?} vs components {parts:?} along {ell}",
                entry.name
            );
        }
        checked += 1;
    }
    ensure!(checked >= 7, "only {checked} corpus entries reached the splitter");
    Ok(())
}

fn det(a: &IntegerMatrix) -> BigInt {
    // fraction-free elimination
    let n = a.rows();
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        sign
    } else {
        sign * &m[n - 1][n - 1]
    }
}

fn snf_suite(rng: &mut ChaCha8Rng) -> Check {
    for case in 0..500 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect())
            .collect();
        let a = IntegerMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&a);
        ensure!(
            s.u.mul(&a).unwrap().mul(&s.v).unwrap() == s.s,
            "case {case}: U A V != S for {a}"
        );
        ensure!(
            det(&s.u).abs().is_one() && det(&s.v).abs().is_one(),
            "case {case}: not unimodular"
        );
        for i in 0..r {
            for j in 0..c {
                ensure!(i == j || s.s.get(i, j).is_zero(), "case {case}: S not diagonal");
            }
        }
        for w in s.diag.windows(2) {
            ensure!(
                !w[0].is_negative() && (w[1].is_multiple_of(&w[0]) || w[1].is_zero()),
                "case {case}: chain broken {:?}",
                s.diag
            );
        }
        let mut pr: Vec<usize> = (0..r).collect();
        let mut pc: Vec<usize> = (0..c).collect();
        pr.shuffle(rng);
        pc.shuffle(rng);
        let permuted: Vec<Vec<i64>> = pr.iter().map(|&i| pc.iter().map(|&j| rows[i][j]).collect()).collect();
        let again = smith_normal_form(&IntegerMatrix::from_rows(&permuted).unwrap());
        ensure!(
            again.diag == s.diag,
            "case {case}: diagonal depends on row and column order"
        );
    }
    Ok(())
}

type Coeffs = Vec<i64>;

fn mul(a: &[i64], b: &[i64]) -> Coeffs {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial, lowest degree first.
fn div(a: &[i64], b: &[i64]) -> Coeffs {
    let mut rem = a.to_vec();
    let mut q = vec![0; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = rem[k + b.len() - 1];
        q[k] = c;
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= c * y;
        }
    }
    assert!(rem.iter().all(|&x| x == 0));
    q
}

fn cyclotomics(up_to: u64) -> BTreeMap<u64, Coeffs> {
    let mut phi: BTreeMap<u64, Coeffs> = BTreeMap::new();
    for n in 1..=up_to {
        let mut p = vec![0; n as usize + 1];
        p[0] = -1;
        p[n as usize] = 1;
        for d in (1..n).filter(|d| n % d == 0) {
            p = div(&p, &phi[&d]);
        }
        phi.insert(n, p);
    }
    phi
}

fn charpoly_suite() -> Check {
    // every k with phi(k) <= 4 is at most 12
    let phi = cyclotomics(12);
    let small: Vec<(u64, &Coeffs)> = phi.iter().filter(|(_, p)| p.len() <= 5).map(|(&k, p)| (k, p)).collect();
    for degree in 1..=4usize {
        let mut by_trace: BTreeMap<i64, BTreeSet<Coeffs>> = BTreeMap::new();
        // multisets as non-decreasing index sequences
        fn walk(
            small: &[(u64, &Coeffs)],
            from: usize,
            acc: Coeffs,
            left: usize,
            out: &mut BTreeMap<i64, BTreeSet<Coeffs>>,
        ) {
            if left == 0 {
                let d = acc.len() - 1;
                let trace = if d == 0 { 0 } else { -acc[d - 1] };
                out.entry(trace).or_default().insert(acc);
                return;
            }
            for (i, (_, p)) in small.iter().enumerate().skip(from) {
                if p.len() - 1 <= left {
                    walk(small, i, mul(&acc, p), left - (p.len() - 1), out);
                }
            }
        }
        walk(&small, 0, vec![1], degree, &mut by_trace);
        for trace in -(degree as i64) - 1..=degree as i64 + 1 {
            let got: BTreeSet<Coeffs> = possible_char_polys(degree, trace)
                .iter()
                .map(|q| q.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect())
                .collect();
            let want = by_trace.remove(&trace).unwrap_or_default();
            ensure!(got == want, "degree {degree}, trace {trace}: {got:?} vs {want:?}");
        }
    }
    Ok(())
}

fn multiplicity_bound_suite() -> Check {
    let mut valid = 0;
    for entry in parse_corpus(BUNDLED).unwrap() {
        let (outcome, report) = run_entry(&entry, &SplitConfig::default());
        let Some(report) = report.filter(|r| r.status == Status::Valid) else {
            continue;
        };
        let inv = report.invariants.as_ref().unwrap();
        let m = inv.m.ok_or_else(|| format!("{}: m unavailable", outcome.name))?;
        ensure!(
            m - 1 <= inv.lambda0,
            "{}: m = {m}, lambda0 = {}",
            outcome.name,
            inv.lambda0
        );
        valid += 1;
    }
    ensure!(valid == 7, "{valid} valid corpus analyses");
    Ok(())
}

fn property_suites() -> Check {
    let mut rng = seeds::stream(seeds::DEFAULT_SEED, "acceptance/properties");
    groebner_suite(&mut rng).map_err(|e| format!("groebner: {e}"))?;
    staircase_suite(&mut rng).map_err(|e| format!("staircase: {e}"))?;
    reconstruction_suite(&mut rng).map_err(|e| format!("reconstruction: {e}"))?;
    snf_suite(&mut rng).map_err(|e| format!("snf: {e}"))?;
    charpoly_suite().map_err(|e| format!("char polys: {e}"))?;
    multiplicity_bound_suite().map_err(|e| format!("multiplicity bound: {e}"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("flagship cone times plane", flagship),
        ("product with a line", constant_family),
        ("simple transversal line", simple_line),
        ("lambda1 = 2 triple", lambda_one_two),
        ("nontrivial vertical monodromy", vertical_monodromy),
        ("classifier exhaustive grid", classifier_grid),
        ("prime rule below 1000", prime_rule),
        ("property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed > LIMIT {
                Err(format!("took {elapsed:?}"))
            } else {
                Ok(())
            }
        });
        match &result {
            Ok(()) => println!("criterion {}: PASS  {name} ({:.2} s)", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                println!(
                    "criterion {}: FAIL  {name} ({:.2} s): {e}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
