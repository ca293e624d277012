//! End-to-end acceptance checks. Each criterion re-runs one shipped claim
//! from scratch and reports a single pass/fail line; the `suite` CLI command
//! and the acceptance test target both go through `run_all`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Value};

use crate::algebra::{
    build_algebra, coadjoint_rank, expected_invariant_count, jacobi_violation, AlgebraKind,
};
use crate::closed_form::{
    basis_for, kappa, lemma3_check, lemma3_check_symbolic, st_basis, symmetrize_t0, t0_basis,
    t_basis,
};
use crate::error::{Error, Result};
use crate::lifted::x_minor;
use crate::matrix::PolyMatrix;
use crate::normalization::{recombine, run_normalization};
use crate::rational::rat;
use crate::ratexpr::RationalExpr;
use crate::sample::{random_poly, random_rational, rng_from_seed, DEFAULT_SEED};
use crate::uea::{casimir_check, normal_order_randomized, word_product, UeaElement};
use crate::vars::VarId;
use crate::verifier::{criterion_report, group_invariance_check};

use rand::Rng;

/// Result of one acceptance criterion. `details` is deterministic for a
/// fixed build; wall-clock time is reported separately so emitted reports
/// stay byte-identical across runs.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
    pub elapsed_secs: f64,
}

pub const CRITERION_COUNT: u32 = 9;

pub fn criterion_name(id: u32) -> &'static str {
    match id {
        1 => "strict family corner minors",
        2 => "full family bordered sums",
        3 => "traceless family dual pairs",
        4 => "normalization round trip",
        5 => "dimension and rank counting",
        6 => "bordered determinant identities",
        7 => "casimir certification",
        8 => "group orbit invariance",
        9 => "algebraic property suites",
        _ => panic!("criterion ids run 1..=9"),
    }
}

pub fn run_criterion(id: u32) -> CriterionOutcome {
    let name = criterion_name(id);
    let clock = Instant::now();
    let result = match id {
        1 => strict_corner_minors(),
        2 => full_bordered_sums(),
        3 => traceless_dual_pairs(),
        4 => normalization_round_trip(),
        5 => rank_counting(),
        6 => bordered_identities(),
        7 => casimir_certification(),
        8 => group_orbit_invariance(),
        9 => property_suites(),
        _ => unreachable!(),
    };
    let elapsed_secs = clock.elapsed().as_secs_f64();
    match result {
        Ok(details) => CriterionOutcome {
            id,
            name,
            pass: true,
            details,
            elapsed_secs,
        },
        Err(e) => CriterionOutcome {
            id,
            name,
            pass: false,
            details: e.to_string(),
            elapsed_secs,
        },
    }
}

pub fn run_all() -> Vec<CriterionOutcome> {
    (1..=CRITERION_COUNT).map(run_criterion).collect()
}

pub fn outcomes_json(outcomes: &[CriterionOutcome]) -> Value {
    json!({
        "pass": outcomes.iter().all(|o| o.pass),
        "criteria": outcomes
            .iter()
            .map(|o| {
                json!({
                    "id": o.id,
                    "name": o.name,
                    "pass": o.pass,
                    "details": o.details,
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::VerificationFailure(msg()))
    }
}

/// The substitution that realizes the traceless diagonal duals inside the
/// full family: fstar(m) becomes ((n-m)/n) sum_{i<=m} x_ii - (m/n) sum_{i>m} x_ii.
/// Transporting a traceless element through it yields a full-family function,
/// which is how orbit checks reach the traceless family.
pub fn diagonal_substitution(n: u32) -> BTreeMap<VarId, RationalExpr> {
    let nn = n as i64;
    let mut map = BTreeMap::new();
    for m in 1..n {
        let mut l = RationalExpr::zero();
        for i in 1..=n {
            let c = if i <= m {
                rat(nn - m as i64, nn)
            } else {
                rat(-(m as i64), nn)
            };
            l = l.add(&RationalExpr::var(VarId::x(i, i)).scale(&c));
        }
        map.insert(VarId::fstar(m), l);
    }
    map
}

/// Criterion 1: for n = 2..8 the strict family has floor(n/2) generators,
/// every element is exactly the matching corner minor, and every element
/// passes the symbolic infinitesimal criterion within budget.
fn strict_corner_minors() -> Result<String> {
    let mut total = 0usize;
    let mut slowest = 0.0f64;
    for n in 2..=8u32 {
        let basis = t0_basis(n)?;
        let expected = expected_invariant_count(AlgebraKind::T0, n)?;
        ensure(basis.len() == expected, || {
            format!("t0({n}) gives {} elements, expected {expected}", basis.len())
        })?;
        for (idx, el) in basis.elements.iter().enumerate() {
            let k = idx as u32 + 1;
            let minor = x_minor(AlgebraKind::T0, n, kappa(n, k), n, 1, k);
            ensure(el.is_polynomial() && el.num() == &minor, || {
                format!("t0({n}) element {k} is not the corner minor")
            })?;
        }
        let alg = build_algebra(AlgebraKind::T0, n)?;
        let clock = Instant::now();
        for (idx, el) in basis.elements.iter().enumerate() {
            ensure(criterion_report(&alg, el).pass, || {
                format!("t0({n}) element {} fails the infinitesimal criterion", idx + 1)
            })?;
        }
        slowest = slowest.max(clock.elapsed().as_secs_f64());
        total += basis.len();
    }
    ensure(slowest < 30.0, || {
        format!("slowest criterion pass took {slowest:.1}s, budget is 30s")
    })?;
    Ok(format!(
        "n=2..8: {total} elements equal their corner minors and pass the criterion within the 30s budget"
    ))
}

/// Criterion 2: for n = 2..6 the full family has floor((n-1)/2)+1 generators,
/// the two smallest cases match their expanded forms verbatim, and the
/// symbolic criterion stays within budget at n = 6.
fn full_bordered_sums() -> Result<String> {
    let x = |i, j| RationalExpr::var(VarId::x(i, j));
    let b2 = t_basis(2)?;
    ensure(b2.elements[0] == x(1, 1).add(&x(2, 2)), || {
        "t(2) element 1 is not the trace".into()
    })?;
    let b3 = t_basis(3)?;
    let trace3 = x(1, 1).add(&x(2, 2)).add(&x(3, 3));
    let second = x(2, 1)
        .mul(&x(3, 2))
        .sub(&x(2, 2).mul(&x(3, 1)))
        .div(&x(3, 1))?;
    ensure(b3.elements[0] == trace3 && b3.elements[1] == second, || {
        "t(3) expanded forms do not match".into()
    })?;

    let mut total = 0usize;
    let mut top_time = 0.0f64;
    for n in 2..=6u32 {
        let basis = t_basis(n)?;
        let expected = expected_invariant_count(AlgebraKind::T, n)?;
        ensure(basis.len() == expected, || {
            format!("t({n}) gives {} elements, expected {expected}", basis.len())
        })?;
        let alg = build_algebra(AlgebraKind::T, n)?;
        let clock = Instant::now();
        for (idx, el) in basis.elements.iter().enumerate() {
            ensure(criterion_report(&alg, el).pass, || {
                format!("t({n}) element {} fails the infinitesimal criterion", idx + 1)
            })?;
        }
        if n == 6 {
            top_time = clock.elapsed().as_secs_f64();
        }
        total += basis.len();
    }
    ensure(top_time < 60.0, || {
        format!("criterion pass at n=6 took {top_time:.1}s, budget is 60s")
    })?;
    Ok(format!(
        "n=2..6: {total} elements pass, expanded forms pinned at n=2,3, n=6 within the 60s budget"
    ))
}

/// Criterion 3: for n = 3..6 the traceless family has floor((n-1)/2)
/// generators, substituting the diagonal duals recovers the signed full
/// elements plus the trace correction exactly, and every element passes the
/// criterion against the traceless structure constants.
fn traceless_dual_pairs() -> Result<String> {
    let mut total = 0usize;
    for n in 3..=6u32 {
        let st = st_basis(n)?;
        let expected = expected_invariant_count(AlgebraKind::St, n)?;
        ensure(st.len() == expected, || {
            format!("st({n}) gives {} elements, expected {expected}", st.len())
        })?;
        let t = t_basis(n)?;
        let map = diagonal_substitution(n);
        let nn = n as i64;
        for (idx, el) in st.elements.iter().enumerate() {
            let k = idx as i64 + 1;
            let projected = el.subst(&map)?;
            let sign = if k % 2 == 0 { rat(-1, 1) } else { rat(1, 1) };
            let combo = t.elements[idx + 1]
                .scale(&sign)
                .add(&t.elements[0].scale(&rat(nn - 2 * k, nn)));
            ensure(projected == combo, || {
                format!("st({n}) element {k} does not project onto the full family combination")
            })?;
        }
        let alg = build_algebra(AlgebraKind::St, n)?;
        for (idx, el) in st.elements.iter().enumerate() {
            ensure(criterion_report(&alg, el).pass, || {
                format!("st({n}) element {} fails the infinitesimal criterion", idx + 1)
            })?;
        }
        total += st.len();
    }
    Ok(format!(
        "n=3..6: {total} elements pass the criterion and project onto signed full elements plus trace correction"
    ))
}

/// Criterion 4: for the strict and full families at n = 2..6, running the
/// normalization and recombining the solved entries reproduces the closed
/// forms element by element, with no leftover equations in the x's alone.
fn normalization_round_trip() -> Result<String> {
    let mut total = 0usize;
    for kind in [AlgebraKind::T0, AlgebraKind::T] {
        for n in 2..=6u32 {
            let res = run_normalization(kind, n)?;
            ensure(res.residual_x_only.is_empty(), || {
                format!("{}({n}) leaves equations in the x's alone", kind.as_str())
            })?;
            let rec = recombine(&res);
            let basis = basis_for(kind, n)?;
            ensure(rec.len() == basis.len(), || {
                format!(
                    "{}({n}) recombines {} values against {} closed forms",
                    kind.as_str(),
                    rec.len(),
                    basis.len()
                )
            })?;
            for (i, (a, b)) in rec.iter().zip(basis.elements.iter()).enumerate() {
                ensure(a == b, || {
                    format!(
                        "{}({n}) element {}: normalization and closed form disagree",
                        kind.as_str(),
                        i + 1
                    )
                })?;
            }
            total += rec.len();
        }
    }
    Ok(format!(
        "t0 and t, n=2..6: {total} recombined values equal the closed forms, no residual x-only equations"
    ))
}

/// Criterion 5: for every family at n = 2..7 the generic coadjoint rank
/// (5 samples, seeds 42 and 1337 agreeing) satisfies dim - rank = expected
/// count = basis size.
fn rank_counting() -> Result<String> {
    let mut rows = 0usize;
    for kind in [AlgebraKind::T0, AlgebraKind::T, AlgebraKind::St] {
        for n in 2..=7u32 {
            let alg = build_algebra(kind, n)?;
            let r = coadjoint_rank(&alg, 5, DEFAULT_SEED);
            let r_alt = coadjoint_rank(&alg, 5, 1337);
            ensure(r == r_alt, || {
                format!(
                    "{}({n}) coadjoint rank differs across seeds: {r} vs {r_alt}",
                    kind.as_str()
                )
            })?;
            let expected = expected_invariant_count(kind, n)?;
            let basis = basis_for(kind, n)?;
            ensure(alg.dim() - r == expected && basis.len() == expected, || {
                format!(
                    "{}({n}): dim {} - rank {r} vs expected {expected}, basis size {}",
                    kind.as_str(),
                    alg.dim(),
                    basis.len()
                )
            })?;
            rows += 1;
        }
    }
    Ok(format!(
        "{rows} family/size pairs: dim - coadjoint rank = basis size, stable across seeds 42 and 1337"
    ))
}

/// Criterion 6: the bordered determinant identities hold symbolically for
/// n <= 5 (border entry kept symbolic) and exactly at random rational points
/// for n = 4..8 over every valid k.
fn bordered_identities() -> Result<String> {
    let beta_symbol = RationalExpr::var(VarId::b(1, 1));
    for (n, k) in [(4u32, 2u32), (5, 2)] {
        ensure(lemma3_check_symbolic(n, k, &beta_symbol)?, || {
            format!("symbolic identities fail at n={n}, k={k} with symbolic border entry")
        })?;
        ensure(
            lemma3_check_symbolic(n, k, &RationalExpr::constant(rat(17, 3)))?,
            || format!("symbolic identities fail at n={n}, k={k} with constant border entry"),
        )?;
    }
    let mut rng = rng_from_seed(DEFAULT_SEED);
    let mut points = 0u32;
    for n in 4..=8u32 {
        for k in 2..=n / 2 {
            let mut done = 0;
            while done < 20 {
                let mut point = BTreeMap::new();
                for i in 2..=n {
                    for j in 1..i {
                        point.insert(VarId::x(i, j), random_rational(&mut rng));
                    }
                }
                let beta = random_rational(&mut rng);
                match lemma3_check(n, k, &beta, &point) {
                    Ok(ok) => {
                        ensure(ok, || {
                            format!("numeric identities fail at n={n}, k={k}")
                        })?;
                        done += 1;
                        points += 1;
                    }
                    Err(Error::MinorVanishes) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(format!(
        "symbolic at n=4,5 with symbolic border entry; {points} exact rational points across n=4..8, all k"
    ))
}

/// Criterion 7: for n = 2..5 every symmetrized strict-family element lands in
/// the enveloping algebra's center, each certification finishing within
/// budget.
fn casimir_certification() -> Result<String> {
    let mut total = 0usize;
    let mut slowest = 0.0f64;
    for n in 2..=5u32 {
        let alg = build_algebra(AlgebraKind::T0, n)?;
        let elements = symmetrize_t0(n)?;
        for (idx, c) in elements.iter().enumerate() {
            let clock = Instant::now();
            ensure(casimir_check(c, &alg)?, || {
                format!(
                    "symmetrized t0({n}) element {} does not commute with every generator",
                    idx + 1
                )
            })?;
            slowest = slowest.max(clock.elapsed().as_secs_f64());
            total += 1;
        }
    }
    ensure(slowest < 120.0, || {
        format!("slowest certification took {slowest:.1}s, budget is 120s")
    })?;
    Ok(format!(
        "{total} symmetrized elements are central in t0(2..5) within the 120s budget"
    ))
}

/// Criterion 8: 100 exact random-orbit trials per element for every family
/// at n <= 6 (the traceless family transported through the diagonal
/// substitution), with negative controls rejected within 10 trials.
fn group_orbit_invariance() -> Result<String> {
    let mut trials = 0u32;
    for kind in [AlgebraKind::T0, AlgebraKind::T] {
        for n in 2..=6u32 {
            let basis = basis_for(kind, n)?;
            for (idx, el) in basis.elements.iter().enumerate() {
                ensure(
                    group_invariance_check(kind, n, el, 100, DEFAULT_SEED)?,
                    || {
                        format!(
                            "{}({n}) element {} broke under a random group element",
                            kind.as_str(),
                            idx + 1
                        )
                    },
                )?;
                trials += 100;
            }
        }
    }
    for n in 3..=6u32 {
        let st = st_basis(n)?;
        let map = diagonal_substitution(n);
        for (idx, el) in st.elements.iter().enumerate() {
            let projected = el.subst(&map)?;
            ensure(
                group_invariance_check(AlgebraKind::T, n, &projected, 100, DEFAULT_SEED)?,
                || format!("st({n}) element {} broke under a random group element", idx + 1),
            )?;
            trials += 100;
        }
    }
    let l1 = diagonal_substitution(3)
        .remove(&VarId::fstar(1))
        .expect("substitution defines fstar(1)");
    let controls: [(AlgebraKind, u32, RationalExpr, &str); 3] = [
        (AlgebraKind::T0, 3, RationalExpr::var(VarId::x(2, 1)), "x_21 in t0(3)"),
        (AlgebraKind::T, 2, RationalExpr::var(VarId::x(1, 1)), "x_11 in t(2)"),
        (AlgebraKind::T, 3, l1, "the first diagonal dual alone in t(3)"),
    ];
    for (kind, n, f, label) in &controls {
        ensure(!group_invariance_check(*kind, *n, f, 10, DEFAULT_SEED)?, || {
            format!("negative control {label} survived 10 trials")
        })?;
    }
    Ok(format!(
        "{trials} exact orbit trials passed; {} negative controls rejected within 10 trials",
        controls.len()
    ))
}

/// Criterion 9: compact re-run of the algebraic property suites: commutative
/// ring axioms, determinant multiplicativity, fraction-free vs cofactor
/// expansion, rewriting associativity and confluence, and the Jacobi
/// identity on every shipped bracket table.
fn property_suites() -> Result<String> {
    let mut rng = rng_from_seed(DEFAULT_SEED);
    for _ in 0..200 {
        let a = random_poly(&mut rng, 4, 4, 3);
        let b = random_poly(&mut rng, 4, 4, 3);
        let c = random_poly(&mut rng, 4, 4, 3);
        let ring_ok = a.add(&b) == b.add(&a)
            && a.add(&b).add(&c) == a.add(&b.add(&c))
            && a.mul(&b) == b.mul(&a)
            && a.mul(&b).mul(&c) == a.mul(&b.mul(&c))
            && a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c))
            && a.sub(&a).is_zero();
        ensure(ring_ok, || "ring axioms fail on random polynomials".into())?;
    }

    for size in 1..=4usize {
        for _ in 0..5 {
            let m = PolyMatrix::from_fn(size, size, |_, _| {
                RationalExpr::constant(random_rational(&mut rng))
            });
            let p = PolyMatrix::from_fn(size, size, |_, _| {
                RationalExpr::constant(random_rational(&mut rng))
            });
            let lhs = m.mul(&p).det()?;
            let rhs = m.det()?.mul(&p.det()?);
            ensure(lhs == rhs, || {
                format!("det multiplicativity fails at size {size}")
            })?;
            let s = PolyMatrix::from_fn(size, size, |_, _| {
                RationalExpr::from_poly(random_poly(&mut rng, 3, 2, 2))
            });
            ensure(s.det_via_bareiss()? == s.det_via_cofactor()?, || {
                format!("elimination methods disagree at size {size}")
            })?;
        }
    }

    let mut algs = Vec::new();
    for kind in [AlgebraKind::T0, AlgebraKind::T, AlgebraKind::St] {
        for n in 2..=4u32 {
            if kind == AlgebraKind::St && n == 2 {
                continue;
            }
            algs.push(build_algebra(kind, n)?);
        }
    }
    for alg in &algs {
        ensure(jacobi_violation(alg).is_none(), || {
            format!("bracket table for {}({}) violates Jacobi", alg.kind.as_str(), alg.n)
        })?;
    }
    for t in 0..50 {
        let alg = &algs[t % algs.len()];
        let a = UeaElement::generator(rng.gen_range(0..alg.dim()));
        let b = UeaElement::generator(rng.gen_range(0..alg.dim()));
        let c = UeaElement::generator(rng.gen_range(0..alg.dim()));
        let left = crate::uea::uea_mul(&crate::uea::uea_mul(&a, &b, alg)?, &c, alg)?;
        let right = crate::uea::uea_mul(&a, &crate::uea::uea_mul(&b, &c, alg)?, alg)?;
        ensure(left == right, || "product fails associativity".into())?;
    }
    for t in 0..50 {
        let alg = &algs[t % algs.len()];
        let len = rng.gen_range(2..=5);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..alg.dim())).collect();
        let canonical = word_product(&word, alg)?;
        let randomized = normal_order_randomized(&word, alg, &mut rng);
        ensure(canonical == randomized, || {
            "rewriting is not confluent on a random word".into()
        })?;
    }

    Ok(
        "ring axioms (200 triples), det multiplicativity and elimination agreement, \
         Jacobi on all bracket tables, associativity and confluence (50 cases each)"
            .into(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_stable() {
        assert_eq!(criterion_name(1), "strict family corner minors");
        assert_eq!(criterion_name(9), "algebraic property suites");
        let all = (1..=CRITERION_COUNT).map(criterion_name).collect::<Vec<_>>();
        assert_eq!(all.len(), 9);
    }

    #[test]
    #[should_panic(expected = "criterion ids run 1..=9")]
    fn rejects_unknown_ids() {
        criterion_name(10);
    }

    #[test]
    fn outcome_json_shape() {
        let outcomes = vec![CriterionOutcome {
            id: 4,
            name: criterion_name(4),
            pass: true,
            details: "ok".into(),
            elapsed_secs: 0.0,
        }];
        let v = outcomes_json(&outcomes);
        assert_eq!(v["pass"], true);
        assert_eq!(v["criteria"][0]["id"], 4);
        assert_eq!(v["criteria"][0]["name"], "normalization round trip");
    }

    #[test]
    fn round_trip_criterion_passes() {
        let outcome = run_criterion(4);
        assert!(outcome.pass, "{}", outcome.details);
        assert!(outcome.details.contains("n=2..6"));
    }

    #[test]
    fn identity_criterion_passes() {
        let outcome = run_criterion(6);
        assert!(outcome.pass, "{}", outcome.details);
    }
}
