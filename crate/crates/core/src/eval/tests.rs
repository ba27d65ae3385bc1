use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::direct_product;
use crate::caps::Caps;
use crate::poly::{alternator, AlternationProfile, GradedMonomial, TracePolynomial};
use crate::scalar::Parity;
use crate::zoo;

fn x(i: u32) -> GradedVariable {
    GradedVariable::even(i)
}

fn z(i: u32) -> GradedVariable {
    GradedVariable::odd(i)
}

fn word(vars: &[GradedVariable]) -> GradedPolynomial {
    GradedPolynomial::monomial(vars.to_vec(), Scalar::one())
}

fn comm(a: GradedVariable, b: GradedVariable) -> GradedPolynomial {
    word(&[a, b]).sub(&word(&[b, a]))
}

fn el(a: &SuperAlgebra, label: &str) -> Element {
    Element::basis(a.index_of(label).unwrap_or_else(|| panic!("no {label}")))
}

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn odd_commutator_on_m11() {
    let m = zoo::matrix(1, 1);
    let ev = Evaluation::from_pairs([(z(1), el(&m, "E[1,1,2]")), (z(2), el(&m, "E[1,2,1]"))]);
    let v = evaluate(&m, &comm(z(1), z(2)), &ev).unwrap();
    assert_eq!(v, el(&m, "E[1,1,1]").sub(&el(&m, "E[1,2,2]")));
    let zero = Evaluation::from_pairs([(z(1), Element::zero()), (z(2), el(&m, "E[1,2,1]"))]);
    assert!(evaluate(&m, &comm(z(1), z(2)), &zero).unwrap().is_zero());
}

#[test]
fn evaluation_errors() {
    let m = zoo::matrix(1, 1);
    let ev = Evaluation::from_pairs([(z(1), el(&m, "E[1,1,2]"))]);
    assert!(matches!(evaluate(&m, &comm(z(1), z(2)), &ev), Err(crate::Error::Usage(_))));
    let bad = Evaluation::from_pairs([(z(1), el(&m, "E[1,1,1]")), (z(2), el(&m, "E[1,2,1]"))]);
    assert!(matches!(evaluate(&m, &comm(z(1), z(2)), &bad), Err(crate::Error::Usage(_))));
}

#[test]
fn m11_identity_suite() {
    let m = zoo::matrix(1, 1);
    assert!(is_graded_identity(&m, &comm(x(1), x(2)), &caps()).unwrap());
    let f = word(&[z(1), z(2), z(3)]).sub(&word(&[z(3), z(2), z(1)]));
    assert!(is_graded_identity(&m, &f, &caps()).unwrap());
    let ce = find_counterexample(&m, &comm(z(1), z(2)), &caps()).unwrap().unwrap();
    assert_eq!(ce.labels(&m), vec!["E[1,1,2]", "E[1,2,1]"]);
    assert_eq!(ce.value, el(&m, "E[1,1,1]").sub(&el(&m, "E[1,2,2]")));
    assert!(is_graded_identity(&m, &word(&[x(1), x(1)]), &caps()).is_err());
}

#[test]
fn enumeration_cap_refuses() {
    let m = zoo::matrix(1, 1);
    let tight = Caps { max_enum: 3, ..Caps::default() };
    assert!(matches!(is_graded_identity(&m, &comm(z(1), z(2)), &tight), Err(crate::Error::Resource(_))));
}

#[test]
fn classification_examples() {
    let a = zoo::odd_triangular();
    let full = Evaluation::from_pairs([(x(1), el(&a, "E[1,1,1]")), (z(2), el(&a, "r")), (x(3), el(&a, "E[2,1,1]"))]);
    let c = classify_evaluation(&a, &full).unwrap();
    assert_eq!(c, EvaluationClass { is_elementary: true, radical_count: 1, is_thin: false, is_complete: true });
    let semis = Evaluation::from_pairs([(x(1), el(&a, "E[1,1,1]")), (x(3), el(&a, "E[2,1,1]"))]);
    assert!(classify_evaluation(&a, &semis).unwrap().is_thin);
    let one_block = Evaluation::from_pairs([(x(1), el(&a, "E[1,1,1]")), (x(2), el(&a, "E[1,1,1]"))]);
    assert!(!classify_evaluation(&a, &one_block).unwrap().is_complete);
    let dense = Evaluation::from_pairs([(x(1), el(&a, "E[1,1,1]").add(&el(&a, "E[2,1,1]")))]);
    assert!(classify_evaluation(&a, &dense).is_err());
}

#[test]
fn nilpotent_evaluations_are_complete() {
    let a = zoo::nilpotent_cube(Parity::Even);
    let ev = Evaluation::from_pairs([(x(1), el(&a, "a"))]);
    let c = classify_evaluation(&a, &ev).unwrap();
    assert!(c.is_complete);
    assert!(c.is_thin);
}

#[test]
fn exactness_examples() {
    let m10 = zoo::matrix(1, 0);
    assert!(is_exact(&m10, &word(&[x(1)]), &caps()).unwrap());
    let a = zoo::odd_triangular();
    assert!(is_exact(&a, &word(&[z(1), z(2)]), &caps()).unwrap());
    // x1 z x2 is nonzero only on (e1, r, e2), which is complete and not thin
    assert!(is_exact(&a, &word(&[x(1), z(2), x(3)]), &caps()).unwrap());
    let ce = find_inexact_evaluation(&a, &word(&[x(1), x(2)]), &caps()).unwrap().unwrap();
    assert_eq!(ce.labels(&a), vec!["E[1,1,1]", "E[1,1,1]"]);
}

#[test]
fn trace_evaluation() {
    let m = zoo::matrix(1, 1);
    let tp = TracePolynomial::trace_of(GradedMonomial::new(vec![x(1)])).unwrap().mul(&TracePolynomial::from_polynomial(&word(&[z(2)])));
    let ev = Evaluation::from_pairs([(x(1), el(&m, "E[1,1,1]")), (z(2), el(&m, "E[1,1,2]"))]);
    assert_eq!(evaluate_trace_poly(&m, &tp, &ev).unwrap(), el(&m, "E[1,1,2]"));
    let a = zoo::even_triangular();
    let ev = Evaluation::from_pairs([(x(1), el(&a, "r")), (z(2), Element::zero())]);
    let tp = TracePolynomial::trace_of(GradedMonomial::new(vec![x(1)])).unwrap().mul(&TracePolynomial::from_polynomial(&word(&[x(3)])));
    let ev2 = Evaluation::from_pairs([(x(1), el(&a, "r")), (x(3), el(&a, "E[1,1,1]"))]);
    assert!(evaluate_trace_poly(&a, &tp, &ev2).unwrap().is_zero());
    let plain = TracePolynomial::from_polynomial(&word(&[x(1)]));
    assert_eq!(evaluate_trace_poly(&a, &plain, &ev2).unwrap(), evaluate(&a, &word(&[x(1)]), &ev2).unwrap());
    let odd_inside = TracePolynomial::trace_of(GradedMonomial::new(vec![z(2), z(2)])).unwrap();
    assert!(evaluate_trace_poly(&a, &odd_inside, &ev).unwrap().is_zero());
    assert!(TracePolynomial::trace_of(GradedMonomial::new(vec![z(2)])).is_err());
}

#[test]
fn traceid1_on_the_one_dimensional_algebra() {
    let m10 = zoo::matrix(1, 0);
    let f = AlternatedPolynomial::plain(word(&[x(1)]));
    let profile = AlternationProfile::with_sets((1, 0), vec![], vec![vec![x(1)]]).unwrap();
    let check = check_traceid1(&m10, &f, &profile, x(9), &caps()).unwrap();
    assert!(check.holds());
    let broken = check_traceid1_with_summands(&m10, &f, &profile, x(9), Some(0), &caps()).unwrap();
    assert!(!broken.holds());
}

#[test]
fn traceid1_on_odd_triangular() {
    let a = zoo::odd_triangular();
    // alternating in {a1, a2} (strict set together with the odd b) and in {x1, x2} (exact)
    let core = word(&[x(1), x(3), z(5), x(2), x(4)]);
    let f = AlternatedPolynomial::new(core, vec![vec![x(1), x(2)], vec![x(3), x(4)]]).unwrap();
    let profile = AlternationProfile::with_sets((2, 0), vec![vec![x(1), x(2), z(5)]], vec![vec![x(3), x(4)]]).unwrap();
    assert!(check_traceid1(&a, &f, &profile, x(9), &caps()).unwrap().holds());
    assert!(!check_traceid1_with_summands(&a, &f, &profile, x(9), Some(1), &caps()).unwrap().holds());
}

#[test]
fn hamkel_examples() {
    for a in [zoo::matrix(1, 0), zoo::matrix(1, 1), zoo::odd_triangular(), zoo::even_triangular()] {
        assert!(check_hamkel(&a, &caps()).unwrap().holds());
    }
}

#[test]
fn hamkel_on_products_and_full_matrices() {
    let qq = direct_product(&[zoo::matrix(1, 0), zoo::matrix(1, 0)], &caps()).unwrap();
    assert!(check_hamkel(&qq, &caps()).unwrap().holds());
    let m2 = zoo::matrix(2, 0);
    assert!(check_hamkel(&m2, &caps()).unwrap().holds());
    let e = Element::basis(0);
    assert!(hamkel_defect(&zoo::matrix(1, 0), &[e.clone(), e], &caps()).unwrap().is_zero());
}

#[test]
fn identity_subspace_of_m11() {
    let m = zoo::matrix(1, 1);
    let even = identity_subspace(&m, &[x(1), x(2)], &caps()).unwrap();
    assert_eq!(even.len(), 1);
    assert_eq!(slot_monomials(&[x(2), x(1)])[0], GradedMonomial::new(vec![x(1), x(2)]));
    let odd = identity_subspace(&m, &[z(1), z(2)], &caps()).unwrap();
    assert!(odd.is_empty());
}

fn random_multilinear(rng: &mut ChaCha8Rng, slot: &[GradedVariable]) -> GradedPolynomial {
    let mons = slot_monomials(slot);
    let mut f = GradedPolynomial::zero();
    for _ in 0..3 {
        let m = mons[rng.gen_range(0..mons.len())].clone();
        f.add_term(m, &Scalar::from_int(rng.gen_range(-2..=2)));
    }
    f
}

fn random_slot(rng: &mut ChaCha8Rng, degree: usize) -> Vec<GradedVariable> {
    (1..=degree as u32).map(|i| GradedVariable::new(i, if rng.gen_bool(0.5) { Parity::Odd } else { Parity::Even })).collect()
}

fn random_homogeneous(rng: &mut ChaCha8Rng, a: &SuperAlgebra, p: Parity) -> Element {
    Element::from_terms(a.basis_of_parity(p).into_iter().map(|i| (i, Scalar::from_int(rng.gen_range(-3..=3)))))
}

#[test]
fn exhaustive_agrees_with_dense_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, a) in zoo::all(6) {
        for _ in 0..12 {
            let degree = rng.gen_range(1..=3);
            let slot = random_slot(&mut rng, degree);
            let f = random_multilinear(&mut rng, &slot);
            let ident = is_graded_identity(&a, &f, &caps()).unwrap();
            let mut dense_zero = true;
            for _ in 0..30 {
                let ev = Evaluation::from_pairs(slot.iter().map(|&v| (v, random_homogeneous(&mut rng, &a, v.parity))));
                if !evaluate(&a, &f, &ev).unwrap().is_zero() {
                    dense_zero = false;
                }
            }
            if ident {
                assert!(dense_zero, "{name}: {f}");
            }
            if !dense_zero {
                assert!(!ident);
            }
        }
    }
}

#[test]
fn direct_products_intersect_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pairs = [(zoo::matrix(1, 0), zoo::group_matrix(1)), (zoo::odd_triangular(), zoo::matrix(1, 0))];
    for (a, b) in pairs {
        let ab = direct_product(&[a.clone(), b.clone()], &caps()).unwrap();
        for _ in 0..30 {
            let degree = rng.gen_range(1..=3);
            let slot = random_slot(&mut rng, degree);
            let f = random_multilinear(&mut rng, &slot);
            let both = is_graded_identity(&a, &f, &caps()).unwrap() && is_graded_identity(&b, &f, &caps()).unwrap();
            assert_eq!(is_graded_identity(&ab, &f, &caps()).unwrap(), both, "{f}");
        }
    }
}

fn element_strategy(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lazy_and_expanded_agree(
        ca in element_strategy(4), cb in element_strategy(4), cc in element_strategy(4), cd in element_strategy(4),
        perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
    ) {
        let m = zoo::matrix(1, 1);
        let vars = [x(1), x(2), z(3), z(4)];
        let core = word(&perm.iter().map(|&i| vars[i]).collect::<Vec<_>>());
        let lazy = AlternatedPolynomial::new(core.clone(), vec![vec![x(1), x(2)], vec![z(3), z(4)]]).unwrap();
        let coeffs = [ca, cb, cc, cd];
        let ev = Evaluation::from_pairs(vars.iter().zip(&coeffs).map(|(&v, c)| {
            let e = Element::from_terms(m.basis_of_parity(v.parity).into_iter().map(|i| (i, Scalar::from_int(c[i]))));
            (v, e)
        }));
        prop_assert_eq!(evaluate(&m, &lazy, &ev).unwrap(), evaluate(&m, &lazy.expand(), &ev).unwrap());
    }

    #[test]
    fn evaluation_is_multilinear(a in element_strategy(4), b in element_strategy(4), c in element_strategy(4), s in -3i64..=3, t in -3i64..=3) {
        let m = zoo::matrix(1, 1);
        let f = word(&[x(1), z(2)]).sub(&word(&[z(2), x(1)]).scale(&Scalar::from_int(2)));
        let even = |v: &[i64]| Element::from_terms(m.basis_of_parity(Parity::Even).into_iter().map(|i| (i, Scalar::from_int(v[i]))));
        let odd = |v: &[i64]| Element::from_terms(m.basis_of_parity(Parity::Odd).into_iter().map(|i| (i, Scalar::from_int(v[i]))));
        let (s, t) = (Scalar::from_int(s), Scalar::from_int(t));
        let mix = even(&a).scale(&s).add(&even(&b).scale(&t));
        let at = |e: Element| evaluate(&m, &f, &Evaluation::from_pairs([(x(1), e), (z(2), odd(&c))])).unwrap();
        prop_assert_eq!(at(mix), at(even(&a)).scale(&s).add(&at(even(&b)).scale(&t)));
    }
}

#[test]
fn alternator_vanishes_on_repeated_values() {
    let m = zoo::matrix(1, 1);
    let f = alternator(&word(&[x(1), z(3), x(2)]), &[x(1), x(2)]).unwrap();
    let e = el(&m, "E[1,1,1]");
    let ev = Evaluation::from_pairs([(x(1), e.clone()), (x(2), e), (z(3), el(&m, "E[1,1,2]"))]);
    assert!(evaluate(&m, &f, &ev).unwrap().is_zero());
}
