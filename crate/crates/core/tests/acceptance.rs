//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if any
//! criterion fails. All comparisons are exact rational equalities, so the
//! only tolerances are the wall clock limits below.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superpi::algebra::{Block, Element, SuperAlgebra};
use superpi::caps::Caps;
use superpi::eval::{
    check_hamkel, check_traceid1, check_traceid1_with_summands, evaluate, find_counterexample, identity_subspace, is_exact,
    is_graded_identity, slot_monomials, Evaluation,
};
use superpi::grassmann::{envelope_identity_subspace, twist_subspace};
use superpi::kemer::{build_boundary, build_simple_witness, check_bound_vanishing, sample_strict_polynomial};
use superpi::poly::{multilinearize, AlternatedPolynomial, AlternationProfile, GradedPolynomial, GradedVariable};
use superpi::scalar::{Parity, Scalar};
use superpi::tideal::{build_rqs, build_rqs_over, is_member, sample_consequence, MultidegreeSlot};
use superpi::zoo;

/// Exact equality everywhere; the limits are wall clock budgets.
const EXACT_TOLERANCE: i64 = 0;
const LIMIT_1S: Duration = Duration::from_secs(1);
const LIMIT_30S: Duration = Duration::from_secs(30);
const LIMIT_60S: Duration = Duration::from_secs(60);
const LIMIT_120S: Duration = Duration::from_secs(120);
const LIMIT_300S: Duration = Duration::from_secs(300);

type Check = Result<(bool, String), superpi::Error>;

fn caps() -> Caps {
    Caps::default()
}

fn x(i: u32) -> GradedVariable {
    GradedVariable::even(i)
}

fn z(i: u32) -> GradedVariable {
    GradedVariable::odd(i)
}

fn word(vars: &[GradedVariable]) -> GradedPolynomial {
    GradedPolynomial::monomial(vars.to_vec(), Scalar::one())
}

fn comm(a: &GradedPolynomial, b: &GradedPolynomial) -> GradedPolynomial {
    a.mul(b).sub(&b.mul(a))
}

fn basis(alg: &SuperAlgebra, label: &str) -> Element {
    Element::basis(alg.index_of(label).unwrap_or_else(|| panic!("no basis element {label}")))
}

fn run(name: &str, limit: Option<Duration>, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let limit_text = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
    let verdict = if ok && in_time { "PASS" } else { "FAIL" };
    println!("{verdict} {name}: {detail}; {:.2}s{limit_text}", elapsed.as_secs_f64());
    ok && in_time
}

/// Evaluates the bundle independently of its own verification.
fn witness_value(alg_block: Block, s_hat: usize) -> Result<(SuperAlgebra, Element), superpi::Error> {
    let b = build_simple_witness(alg_block, s_hat, &caps())?;
    let v = evaluate(&b.algebra, &b.polynomial, &b.evaluation)?;
    Ok((b.algebra, v))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let (a, v) = witness_value(Block::Matrix { k: 1, m: 1 }, 2)?;
    let first = v == basis(&a, "E[1,1,1]") && start.elapsed() <= LIMIT_1S;
    let (b, w) = witness_value(Block::Matrix { k: 2, m: 1 }, 1)?;
    let second = w == basis(&b, "E[1,1,1]");
    Ok((first && second, format!("M_{{1,1}} s=2 gives {:?}, M_{{2,1}} s=1 gives {:?}", a.describe(&v), b.describe(&w))))
}

fn criterion_2() -> Check {
    let (a, v) = witness_value(Block::Group { k: 1 }, 2)?;
    let want = basis(&a, "E[1,1,1]·c");
    let (b, w) = witness_value(Block::Group { k: 2 }, 1)?;
    let second = w == basis(&b, "E[1,1,1]");
    Ok((
        v == want && second,
        format!(
            "Q[c] s=2 gives {:?} (expected E[1,1,1]·c), M_2(Q[c]) s=1 gives {:?} (expected E[1,1,1])",
            a.describe(&v),
            b.describe(&w)
        ),
    ))
}

fn criterion_3() -> Check {
    let m = zoo::matrix(1, 1);
    let even = comm(&word(&[x(1)]), &word(&[x(2)]));
    let odd_triple = word(&[z(1), z(2), z(3)]).sub(&word(&[z(3), z(2), z(1)]));
    let odd = comm(&word(&[z(1)]), &word(&[z(2)]));
    let ids = is_graded_identity(&m, &even, &caps())? && is_graded_identity(&m, &odd_triple, &caps())?;
    let cex = find_counterexample(&m, &odd, &caps())?;
    let labels = cex.as_ref().map(|c| c.labels(&m).into_iter().map(String::from).collect::<Vec<_>>());
    let ok = ids && labels.as_deref() == Some(&["E[1,1,2]".to_string(), "E[1,2,1]".to_string()][..]);
    Ok((ok, format!("identities hold: {ids}; [z1,z2] counterexample {labels:?}")))
}

fn criterion_4() -> Check {
    let mut detail = Vec::new();
    let mut ok = true;
    for (name, alg) in [("M_{1,1}", zoo::matrix(1, 1)), ("Q[c]", zoo::group_matrix(1)), ("e1/e2/r", zoo::odd_triangular())] {
        let r = check_bound_vanishing(&alg, 100, 2024, &caps())?;
        ok &= r.holds();
        detail.push(format!("{name} {}", if r.holds() { "vanishes" } else { "fails" }));
    }
    Ok((ok, format!("100 samples each: {}", detail.join(", "))))
}

fn criterion_5() -> Check {
    let alg = zoo::odd_triangular();
    let params = alg.kemer_parameters()?;
    let mut exact = 0;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, profile) = sample_strict_polynomial(&mut rng, params.beta, params.gamma - 1, 1)?;
        if f.has_type(&profile) && profile.mu() == 0 && is_exact(&alg, &f, &caps())? {
            exact += 1;
        }
    }
    Ok((exact == 50, format!("{exact}/50 sampled polynomials of type (dims; nd-1; 0) are exact")))
}

fn boundary_holds(alg: &SuperAlgebra, h: &GradedPolynomial, a: &Evaluation) -> Result<bool, superpi::Error> {
    let ha = evaluate(alg, h, a)?;
    let mut ok = true;
    for mu in 0..=2 {
        let cert = build_boundary(alg, h, a, mu, &caps())?;
        let recomputed = evaluate(alg, &cert.polynomial, &cert.witness)?;
        ok &= cert.value == ha && recomputed == ha && !ha.is_zero() && cert.profile.mu() == mu && cert.polynomial.has_type(&cert.profile);
    }
    Ok(ok)
}

fn criterion_6() -> Check {
    let tri = zoo::odd_triangular();
    let h = word(&[x(1), z(2), x(3)]);
    let a = Evaluation::from_basis([
        (x(1), tri.index_of("E[1,1,1]").unwrap()),
        (z(2), tri.index_of("r").unwrap()),
        (x(3), tri.index_of("E[2,1,1]").unwrap()),
    ]);
    let first = boundary_holds(&tri, &h, &a)?;
    let side = zoo::matrix_with_side_radical();
    let d = side.decomposition().expect("elementary");
    let r = (0..side.dim()).find(|&i| d.is_radical(i)).expect("one radical element");
    let e11 = side.index_of("E[1,1,1]").unwrap();
    let h1 = word(&[x(1), x(2), x(3)]).sub(&word(&[x(1), x(3), x(2)]));
    let a1 = Evaluation::from_basis([(x(1), e11), (x(2), r), (x(3), e11)]);
    let second = boundary_holds(&side, &h1, &a1)?;
    Ok((first && second, format!("mu in 0..=2: e1/e2/r {first}, M_{{1,1}} with radical {second}")))
}

fn criterion_7() -> Check {
    let caps = caps();
    let m11 = zoo::matrix(1, 1);
    let w = build_simple_witness(Block::Matrix { k: 1, m: 1 }, 1, &caps)?;
    let fresh = x(99);
    let m11_ok = check_traceid1(&m11, &w.polynomial, &w.profile, fresh, &caps)?.holds();
    let tri = zoo::odd_triangular();
    let f = AlternatedPolynomial::new(word(&[x(1), x(3), z(5), x(2), x(4)]), vec![vec![x(1), x(2)], vec![x(3), x(4)]])?;
    let profile = AlternationProfile::with_sets((2, 0), vec![vec![x(1), x(2), z(5)]], vec![vec![x(3), x(4)]])?;
    let tri_ok = check_traceid1(&tri, &f, &profile, fresh, &caps)?.holds();
    let hamkel =
        [zoo::matrix(1, 0), zoo::matrix(1, 1), zoo::odd_triangular()].iter().map(|a| check_hamkel(a, &caps).map(|c| c.holds())).collect::<Result<Vec<_>, _>>()?;
    let mutated = check_traceid1_with_summands(&tri, &f, &profile, fresh, Some(1), &caps)?;
    let mutated_m11 = check_traceid1_with_summands(&m11, &w.polynomial, &w.profile, fresh, Some(0), &caps)?;
    let caught = mutated.counterexample.is_some() && mutated_m11.counterexample.is_some();
    let ok = m11_ok && tri_ok && hamkel.iter().all(|&h| h) && caught;
    Ok((ok, format!("traceid1 M_{{1,1}} {m11_ok}, e1/e2/r {tri_ok}; hamkel {hamkel:?}; mutated variants caught {caught}")))
}

fn satisfies(alg: &SuperAlgebra, gens: &[GradedPolynomial]) -> Result<bool, superpi::Error> {
    for g in gens {
        for lin in multilinearize(g) {
            if !is_graded_identity(alg, &lin, &caps())? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn criterion_8() -> Check {
    let sets = [
        vec![comm(&word(&[x(1)]), &word(&[x(2)]))],
        vec![word(&[z(1), z(2), z(3)]).sub(&word(&[z(3), z(2), z(1)]))],
    ];
    let zoo = zoo::all(6);
    let (mut members, mut checks, mut vanishing) = (0, 0, 0);
    for gens in &sets {
        let models: Vec<&SuperAlgebra> =
            zoo.iter().map(|(_, a)| a).filter(|a| satisfies(a, gens).unwrap_or(false)).collect();
        for seed in 0..50u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = sample_consequence(&mut rng, gens, 2)?;
            if f.is_zero() || is_member(&f, gens, &caps())? {
                members += 1;
            }
            for a in &models {
                checks += 1;
                if f.is_zero() || is_graded_identity(a, &f, &caps())? {
                    vanishing += 1;
                }
            }
        }
    }
    Ok((members == 100 && vanishing == checks, format!("{members}/100 members; {vanishing}/{checks} model evaluations vanish")))
}

fn criterion_9() -> Check {
    let caps = caps();
    let b = zoo::matrix(1, 0);
    let r = build_rqs_over(&b, &[], &[z(1)], 2, &caps)?;
    let params = r.kemer_parameters()?;
    let nd = r.radical_nilpotency_degree()?;
    let unit = r.index_of("E[1,1,1]");
    let embeds = unit.is_some_and(|u| r.basis_product(u, u) == &vec![(u, Scalar::one())]) && params.beta == (1, 0);
    let alphabet = build_rqs(&b, &[], 1, 2, &caps)?.dim();
    let mut gens = Vec::new();
    for d in 1..=3u32 {
        for odd in 0..=d {
            let slot: Vec<GradedVariable> = (1..=d).map(|i| GradedVariable::new(i, if i <= odd { Parity::Odd } else { Parity::Even })).collect();
            let s = MultidegreeSlot::new(slot.clone())?;
            gens.extend(identity_subspace(&b, &slot, &caps)?.iter().map(|row| s.polynomial(row)));
        }
    }
    let with_gens = build_rqs_over(&b, &gens, &[x(1), z(2)], 2, &caps)?;
    let kept = satisfies(&with_gens, &gens)?;
    let ok = r.dim() == 5 && embeds && nd <= 2 && kept;
    Ok((
        ok,
        format!(
            "dim {} over one odd letter ({} over one even and one odd letter), B embeds {embeds}, nd {nd}, {} generating identities kept {kept}",
            r.dim(),
            alphabet,
            gens.len()
        ),
    ))
}

fn criterion_10() -> Check {
    let caps = caps();
    let mut slots = 0;
    let mut equal = 0;
    let mut stable = 0;
    for a in [zoo::matrix(1, 1), zoo::group_matrix(1)] {
        for d in 1..=4u32 {
            for odd in 0..=d {
                let slot: Vec<GradedVariable> =
                    (1..=d).map(|i| GradedVariable::new(i, if i <= odd { Parity::Odd } else { Parity::Even })).collect();
                let graded = identity_subspace(&a, &slot, &caps)?;
                let env = envelope_identity_subspace(&a, &slot, 8, &caps)?;
                let n = slot_monomials(&slot).len();
                slots += 1;
                if superpi::linalg::span_rref(n, graded) == twist_subspace(&slot, &env)? {
                    equal += 1;
                }
                if envelope_identity_subspace(&a, &slot, 10, &caps)? == env {
                    stable += 1;
                }
            }
        }
    }
    Ok((equal == slots && stable == slots, format!("{equal}/{slots} slots correspond at n = 8, {stable}/{slots} stable at n = 10")))
}

#[test]
fn acceptance() {
    assert_eq!(EXACT_TOLERANCE, 0);
    let results = [
        run("1 witness of M_{1,1} and M_{2,1}", Some(LIMIT_30S), criterion_1),
        run("2 witness of Q[c] and M_2(Q[c])", Some(LIMIT_30S), criterion_2),
        run("3 graded identities of M_{1,1}", Some(LIMIT_1S), criterion_3),
        run("4 vanishing beyond the bound", Some(LIMIT_60S), criterion_4),
        run("5 exactness of sampled polynomials", Some(LIMIT_60S), criterion_5),
        run("6 boundary polynomials", None, criterion_6),
        run("7 trace identities", None, criterion_7),
        run("8 T-ideal oracle consistency", Some(LIMIT_120S), criterion_8),
        run("9 truncated relatively free algebra", None, criterion_9),
        run("10 Grassmann correspondence", Some(LIMIT_300S), criterion_10),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
