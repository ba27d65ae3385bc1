use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{direct_product, Block};
use crate::eval::{evaluate, is_exact, is_graded_identity, Evaluation};
use crate::poly::{GradedPolynomial, GradedVariable};
use crate::scalar::Parity;
use crate::zoo;

fn caps() -> Caps {
    Caps::default()
}

fn labels(alg: &SuperAlgebra, e: &Element) -> Vec<(String, String)> {
    alg.describe(e).into_iter().map(|(l, c)| (l, c.to_string())).collect()
}

fn single(label: &str) -> Vec<(String, String)> {
    vec![(label.to_string(), "1".to_string())]
}

#[test]
fn matrix_witnesses_evaluate_to_e11() {
    for (k, m, s_hat) in [(1, 0, 3), (1, 1, 1), (1, 1, 2), (2, 0, 1), (2, 1, 1)] {
        let b = build_simple_witness(Block::Matrix { k, m }, s_hat, &caps()).unwrap();
        assert_eq!(labels(&b.algebra, &b.expected), single("E[1,1,1]"), "M_({k},{m}) s={s_hat}");
        assert_eq!(b.profile.mu(), s_hat);
        assert_eq!(b.profile.s(), 0);
        assert_eq!(b.profile.t(), Block::Matrix { k, m }.graded_dims());
    }
}

#[test]
fn group_witness_carries_c_to_the_power_s_hat_k_squared() {
    let cases = [(1, 1, "E[1,1,1]·c"), (1, 2, "E[1,1,1]"), (1, 3, "E[1,1,1]·c"), (2, 1, "E[1,1,1]")];
    for (k, s_hat, want) in cases {
        let b = build_simple_witness(Block::Group { k }, s_hat, &caps()).unwrap();
        assert_eq!(labels(&b.algebra, &b.expected), single(want), "k={k} s={s_hat}");
    }
}

#[test]
fn witness_word_matches_the_connected_form() {
    // M_{1,1}, one set: z11 y11 z11 y12 z22 y21 z12 y22 z21
    let b = build_simple_witness(Block::Matrix { k: 1, m: 1 }, 1, &caps()).unwrap();
    let (m, _) = b.polynomial.core().terms().next().unwrap();
    let ids: Vec<u32> = m.vars().iter().map(|v| v.id).collect();
    assert_eq!(ids, vec![1, 5, 1, 6, 4, 7, 2, 8, 3]);
    assert_eq!(b.polynomial.sets().len(), 2);
}

#[test]
fn witness_files_round_trip_and_reverify() {
    let b = build_reduced_witness(&zoo::odd_triangular(), 1, &caps()).unwrap();
    let text = b.to_json();
    let back = WitnessBundle::from_json(&text, &caps()).unwrap();
    assert_eq!(back.to_json(), text);
    let mut file: WitnessFile = serde_json::from_str(&text).unwrap();
    file.expected.insert("r".into(), crate::Scalar::from_int(2));
    let err = file.load(&caps()).unwrap_err();
    assert!(matches!(err, crate::Error::Validation(_)), "{err}");
}

#[test]
fn reduced_chains() {
    let c = find_reduced_chain(&zoo::odd_triangular()).unwrap().unwrap();
    assert_eq!(c.order, vec![0, 1]);
    let alg = zoo::odd_triangular();
    assert_eq!(c.radicals.iter().map(|&r| alg.label(r)).collect::<Vec<_>>(), vec!["r"]);
    assert_eq!(find_reduced_chain(&zoo::matrix(1, 1)).unwrap().unwrap().radicals, Vec::<usize>::new());
    let split = direct_product(&[zoo::matrix(1, 0), zoo::matrix(1, 0)], &caps()).unwrap();
    assert_eq!(find_reduced_chain(&split).unwrap(), None);
    assert_eq!(find_reduced_chain(&zoo::nilpotent_cube(Parity::Even)).unwrap(), None);
}

#[test]
fn reduced_witness_of_the_triangular_algebra_is_r() {
    let alg = zoo::odd_triangular();
    for s_hat in 1..=2 {
        let b = build_reduced_witness(&alg, s_hat, &caps()).unwrap();
        assert_eq!(labels(&alg, &b.expected), single("r"));
        assert_eq!(b.profile.t(), (2, 0));
        let comp = b.component.as_ref().expect("a nonzero component");
        assert!(!evaluate(&alg, comp, &b.evaluation).unwrap().is_zero());
    }
}

#[test]
fn reduced_witness_with_one_block_is_the_simple_witness() {
    let simple = build_simple_witness(Block::Matrix { k: 1, m: 1 }, 2, &caps()).unwrap();
    let reduced = build_reduced_witness(&zoo::matrix(1, 1), 2, &caps()).unwrap();
    assert_eq!(simple.polynomial, reduced.polynomial);
    assert_eq!(simple.evaluation, reduced.evaluation);
    assert_eq!(simple.expected, reduced.expected);
}

#[test]
fn nilpotent_algebras_are_refused_and_get_degree_witnesses() {
    let cube = zoo::nilpotent_cube(Parity::Odd);
    assert!(matches!(build_reduced_witness(&cube, 1, &caps()), Err(crate::Error::Refused(_))));
    let cert = certify_parameters(&cube, 2, &caps()).unwrap();
    assert_eq!(cert.parameters.par(), ((0, 0), 3));
    assert_eq!(cert.witness.profile.s(), 2);
    assert_eq!(cert.witness.profile.mu(), 2);
    assert_eq!(labels(&cube, &cert.witness.expected), single("b"));
}

#[test]
fn certified_parameters() {
    let cases: Vec<(SuperAlgebra, ((usize, usize), usize))> = vec![
        (zoo::matrix(1, 1), ((2, 2), 1)),
        (zoo::group_matrix(1), ((1, 1), 1)),
        (zoo::odd_triangular(), ((2, 0), 2)),
    ];
    for (alg, want) in cases {
        let cert = certify_parameters(&alg, 2, &caps()).unwrap();
        assert_eq!(cert.parameters.par(), want);
        assert!(cert.parameters.reduced_flag);
        assert_eq!(cert.witness.profile.t(), want.0);
    }
    let split = direct_product(&[zoo::matrix(1, 0), zoo::matrix(1, 0)], &caps()).unwrap();
    assert!(matches!(certify_parameters(&split, 1, &caps()), Err(crate::Error::Refused(_))));
}

#[test]
fn direct_products_take_the_largest_parameters() {
    let families = [
        vec![zoo::matrix(1, 1), zoo::matrix(1, 0)],
        vec![zoo::odd_triangular(), zoo::matrix(1, 0)],
        vec![zoo::matrix(1, 0), zoo::group_matrix(1)],
        vec![zoo::nilpotent_cube(Parity::Even), zoo::matrix(1, 0)],
    ];
    for parts in families {
        let cert = certify_direct_product(&parts, 1, &caps()).unwrap();
        let best = parts.iter().map(|a| a.kemer_parameters().unwrap().par()).max().unwrap();
        assert_eq!(cert.parameters.par(), best);
        assert!(!cert.witness.expected.is_zero());
    }
}

#[test]
fn bound_vanishing_on_small_algebras() {
    for alg in [zoo::matrix(1, 0), zoo::matrix(1, 1), zoo::group_matrix(1), zoo::odd_triangular()] {
        let r = check_bound_vanishing(&alg, 10, 7, &caps()).unwrap();
        assert!(r.holds());
    }
}

#[test]
fn sampled_polynomials_have_the_requested_profile() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let (f, profile) = sample_strict_polynomial(&mut rng, (2, 1), 2, 1).unwrap();
        assert!(f.has_type(&profile));
        assert_eq!(profile.s(), 2);
        assert!(f.core().is_multilinear());
    }
}

fn triangular_boundary_input() -> (SuperAlgebra, GradedPolynomial, Evaluation) {
    let alg = zoo::odd_triangular();
    let (x1, y, x2) = (GradedVariable::even(1), GradedVariable::odd(2), GradedVariable::even(3));
    let h = GradedPolynomial::monomial(vec![x1, y, x2], crate::Scalar::one());
    let idx = |l: &str| alg.index_of(l).unwrap();
    let a = Evaluation::from_basis([(x1, idx("E[1,1,1]")), (y, idx("r")), (x2, idx("E[2,1,1]"))]);
    (alg, h, a)
}

#[test]
fn boundary_on_the_triangular_algebra() {
    let (alg, h, a) = triangular_boundary_input();
    assert!(is_exact(&alg, &h, &caps()).unwrap());
    let ha = evaluate(&alg, &h, &a).unwrap();
    for mu in 0..=2 {
        let cert = build_boundary(&alg, &h, &a, mu, &caps()).unwrap();
        assert_eq!(cert.value, ha);
        assert_eq!(cert.profile.s(), 1);
        assert_eq!(cert.profile.mu(), mu);
        assert_eq!(cert.profile.sets()[0].counts(), (2, 1));
        assert!(!cert.trivial);
        assert_eq!(evaluate(&alg, &cert.polynomial, &cert.witness).unwrap(), ha);
        for (v, e) in cert.witness.iter() {
            if *v != GradedVariable::odd(2) {
                let i = e.as_basis().unwrap();
                assert!(!alg.decomposition().unwrap().is_radical(i), "{v} is radical");
            }
        }
    }
}

#[test]
fn boundary_with_one_block() {
    let alg = zoo::matrix_with_side_radical();
    let (y, x1, x2) = (GradedVariable::even(1), GradedVariable::even(2), GradedVariable::even(3));
    let h = GradedPolynomial::monomial(vec![y, x1, x2], crate::Scalar::one())
        .sub(&GradedPolynomial::monomial(vec![y, x2, x1], crate::Scalar::one()));
    let idx = |l: &str| alg.index_of(l).unwrap();
    let r = (0..alg.dim()).find(|&i| alg.decomposition().unwrap().is_radical(i)).unwrap();
    let a = Evaluation::from_basis([(y, idx("E[1,1,1]")), (x1, r), (x2, idx("E[1,1,1]"))]);
    for mu in 0..=2 {
        let cert = build_boundary(&alg, &h, &a, mu, &caps()).unwrap();
        assert_eq!(cert.attachments[0].side, AttachmentSide::Whole);
        assert_eq!(cert.value, evaluate(&alg, &h, &a).unwrap());
        assert!(!cert.value.is_zero());
    }

    let alg = zoo::matrix_with_left_radical();
    let idx = |l: &str| alg.index_of(l).unwrap();
    let r = (0..alg.dim()).find(|&i| alg.decomposition().unwrap().is_radical(i)).unwrap();
    let (a1, a2, a3) = (GradedVariable::even(1), GradedVariable::even(2), GradedVariable::even(3));
    let h = GradedPolynomial::monomial(vec![a1, a2, a3], crate::Scalar::one())
        .sub(&GradedPolynomial::monomial(vec![a2, a1, a3], crate::Scalar::one()));
    let a = Evaluation::from_basis([(a1, idx("E[1,1,1]")), (a2, r), (a3, idx("E[1,1,1]"))]);
    let cert = build_boundary(&alg, &h, &a, 1, &caps()).unwrap();
    assert_eq!(cert.attachments[0].side, AttachmentSide::Right);
    assert_eq!(cert.value, evaluate(&alg, &h, &a).unwrap());
}

#[test]
fn boundary_of_a_nilpotent_algebra_is_h_itself() {
    let alg = zoo::nilpotent_cube(Parity::Even);
    let (x1, x2) = (GradedVariable::even(1), GradedVariable::even(2));
    let h = GradedPolynomial::monomial(vec![x1, x2], crate::Scalar::one());
    let a = Evaluation::from_basis([(x1, alg.index_of("a").unwrap()), (x2, alg.index_of("a").unwrap())]);
    let cert = build_boundary(&alg, &h, &a, 2, &caps()).unwrap();
    assert_eq!(cert.polynomial.core(), &h);
    assert_eq!(cert.witness, a);
    assert_eq!(cert.profile.mu(), 2);
}

#[test]
fn boundary_of_a_vanishing_evaluation_is_trivial() {
    let (alg, h, _) = triangular_boundary_input();
    let idx = |l: &str| alg.index_of(l).unwrap();
    let a = Evaluation::from_basis([
        (GradedVariable::even(1), idx("E[2,1,1]")),
        (GradedVariable::odd(2), idx("r")),
        (GradedVariable::even(3), idx("E[1,1,1]")),
    ]);
    let cert = build_boundary(&alg, &h, &a, 1, &caps()).unwrap();
    assert!(cert.trivial);
    assert!(cert.value.is_zero());
    assert_eq!(cert.profile.s() + cert.profile.mu(), 2);
}

#[test]
fn boundary_preconditions() {
    let (alg, h, a) = triangular_boundary_input();
    let mut thin = a.clone();
    thin.assign(GradedVariable::odd(2), Element::basis(0));
    assert!(build_boundary(&alg, &h, &thin, 0, &caps()).is_err());
    let not_exact = GradedPolynomial::monomial(vec![GradedVariable::even(1)], crate::Scalar::one());
    assert!(build_boundary(&alg, &not_exact, &a, 0, &caps()).is_err());
    assert!(!is_graded_identity(&alg, &h, &caps()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn repeating_a_value_in_an_alternating_set_gives_zero(case in 0usize..5, pick in 0usize..64) {
        let (k, m, s_hat) = [(1, 0, 3), (1, 1, 1), (1, 1, 2), (2, 0, 2), (2, 1, 1)][case];
        let b = build_simple_witness(Block::Matrix { k, m }, s_hat, &caps()).unwrap();
        let sets = b.polynomial.sets().to_vec();
        prop_assume!(!sets.is_empty());
        let set = &sets[pick % sets.len()];
        let mut ev = b.evaluation.clone();
        let v = b.evaluation.get(set[0]).unwrap().clone();
        ev.assign(set[1], v);
        prop_assert!(evaluate(&b.algebra, &b.polynomial, &ev).unwrap().is_zero());
    }

    #[test]
    fn swapping_two_values_in_an_alternating_set_flips_the_sign(k in 1usize..=2, m in 0usize..=1, group in any::<bool>(), pick in 0usize..64) {
        let block = if group { Block::Group { k } } else { Block::Matrix { k, m } };
        let b = build_simple_witness(block, 1, &caps()).unwrap();
        let sets = b.polynomial.sets().to_vec();
        prop_assume!(!sets.is_empty());
        let set = &sets[pick % sets.len()];
        let mut ev = b.evaluation.clone();
        ev.assign(set[0], b.evaluation.get(set[1]).unwrap().clone());
        ev.assign(set[1], b.evaluation.get(set[0]).unwrap().clone());
        let neg = b.expected.scale(&crate::Scalar::from_int(-1));
        prop_assert_eq!(evaluate(&b.algebra, &b.polynomial, &ev).unwrap(), neg);
    }
}
