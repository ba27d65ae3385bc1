//! Certified parameters and the vanishing behind the upper bound.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::witness::{build_reduced_witness, check_s_hat};
use super::{Fresh, KemerParameters, WitnessBundle};
use crate::algebra::{direct_product, product_embedding, Element, SuperAlgebra};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::eval::{find_counterexample, Counterexample, Evaluation};
use crate::poly::{AlternatedPolynomial, AlternationProfile, GradedMonomial, GradedPolynomial, GradedVariable};
use crate::scalar::{Parity, Scalar};

/// Parameters together with a witness that realizes them.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub parameters: KemerParameters,
    pub witness: WitnessBundle,
}

/// `par(A) = (dims; nd)`, witnessed by a nonzero polynomial of type `(dims; 0; s_hat)`.
///
/// Nilpotent algebras get the monomial `x_1 ... x_(nd-1)` at radical values,
/// of type `((0,0); nd-1; s_hat)` with empty exact sets.
pub fn certify_parameters(alg: &SuperAlgebra, s_hat: usize, caps: &Caps) -> Result<Certificate> {
    check_s_hat(s_hat)?;
    let d = alg.require_decomposition()?;
    let mut parameters = alg.kemer_parameters()?;
    let witness = if d.p() == 0 { degree_witness(alg, parameters.gamma, s_hat, caps)? } else { build_reduced_witness(alg, s_hat, caps)? };
    parameters.reduced_flag = true;
    Ok(Certificate { parameters, witness })
}

fn degree_witness(alg: &SuperAlgebra, nd: usize, s_hat: usize, caps: &Caps) -> Result<WitnessBundle> {
    if alg.dim() == 0 {
        return Err(Error::Refused("the zero algebra satisfies every polynomial".into()));
    }
    let len = nd - 1;
    let mut found: Option<Counterexample> = None;
    // Every parity pattern of length nd-1, even before odd.
    for mask in 0u64..(1u64 << len) {
        let vars: Vec<GradedVariable> =
            (0..len).map(|i| GradedVariable::new(i as u32 + 1, Parity::from_bit((mask >> (len - 1 - i) & 1) as u8))).collect();
        let m = GradedPolynomial::monomial(vars, Scalar::one());
        if let Some(c) = find_counterexample(alg, &m, caps)? {
            found = Some(c);
            break;
        }
    }
    let c = found.expect("J^(nd-1) is nonzero");
    let vars: Vec<GradedVariable> = c.assignment.iter().map(|(v, _)| *v).collect();
    let strict = vars.iter().map(|&v| vec![v]).collect();
    let profile = AlternationProfile::with_sets((0, 0), strict, vec![Vec::new(); s_hat])?;
    let bundle = WitnessBundle {
        algebra: alg.clone(),
        polynomial: AlternatedPolynomial::plain(GradedPolynomial::monomial(vars, Scalar::one())),
        profile,
        evaluation: c.evaluation(),
        expected: c.value,
        component: None,
    };
    bundle.verify(caps)?;
    Ok(bundle)
}

/// Certifies each factor and carries the lexicographically largest witness
/// into the direct product.
pub fn certify_direct_product(parts: &[SuperAlgebra], s_hat: usize, caps: &Caps) -> Result<Certificate> {
    if parts.is_empty() {
        return Err(Error::Usage("a direct product needs at least one factor".into()));
    }
    let certs: Vec<Certificate> = parts.iter().map(|a| certify_parameters(a, s_hat, caps)).collect::<Result<_>>()?;
    let best = (0..certs.len()).max_by_key(|&q| (certs[q].parameters.par(), std::cmp::Reverse(q))).expect("nonempty");
    let product = direct_product(parts, caps)?;
    let embed = &product_embedding(parts)[best];
    let carry = |e: &Element| Element::from_terms(e.terms().iter().map(|(i, c)| (embed[*i], c.clone())));
    let w = &certs[best].witness;
    let evaluation = Evaluation::from_pairs(w.evaluation.iter().map(|(v, e)| (*v, carry(e))));
    let witness = WitnessBundle {
        algebra: product.clone(),
        polynomial: w.polynomial.clone(),
        profile: w.profile.clone(),
        evaluation,
        expected: carry(&w.expected),
        component: w.component.clone(),
    };
    witness.verify(caps)?;
    let best_par = certs[best].parameters.par();
    let radical_dim = product.kemer_parameters()?.radical_dim;
    let parameters = KemerParameters { beta: best_par.0, gamma: best_par.1, radical_dim, reduced_flag: false };
    Ok(Certificate { parameters, witness })
}

/// A random multilinear polynomial with `sets` lazily alternated sets, each
/// exceeding `t` by one variable in a randomly chosen parity, plus up to
/// `max_extra` free variables. Coefficients lie in `{-2, ..., 2}`.
pub fn sample_strict_polynomial(
    rng: &mut impl Rng,
    t: (usize, usize),
    sets: usize,
    max_extra: usize,
) -> Result<(AlternatedPolynomial, AlternationProfile)> {
    let mut fresh = Fresh::starting_at(1);
    let mut strict = Vec::with_capacity(sets);
    let mut parts = Vec::new();
    for _ in 0..sets {
        let bump = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        let even = t.0 + usize::from(bump == Parity::Even);
        let odd = t.1 + usize::from(bump == Parity::Odd);
        let e: Vec<GradedVariable> = (0..even).map(|_| fresh.take(Parity::Even)).collect();
        let o: Vec<GradedVariable> = (0..odd).map(|_| fresh.take(Parity::Odd)).collect();
        parts.extend([e.clone(), o.clone()].into_iter().filter(|p| p.len() > 1));
        strict.push(e.into_iter().chain(o).collect::<Vec<_>>());
    }
    let mut slot: Vec<GradedVariable> = strict.iter().flatten().copied().collect();
    for _ in 0..rng.gen_range(0..=max_extra) {
        let par = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        slot.push(fresh.take(par));
    }
    let mut core = GradedPolynomial::zero();
    for k in 0..rng.gen_range(1..=3) {
        let mut word = slot.clone();
        word.shuffle(rng);
        let c = if k == 0 { [-2, -1, 1, 2][rng.gen_range(0..4)] } else { rng.gen_range(-2..=2) };
        core.add_term(GradedMonomial::new(word), &Scalar::from_int(c));
    }
    if core.is_zero() {
        let word = slot.clone();
        core.add_term(GradedMonomial::new(word), &Scalar::one());
    }
    let profile = AlternationProfile::with_sets(t, strict, Vec::new())?;
    Ok((AlternatedPolynomial::new(core, parts)?, profile))
}

/// Outcome of [`check_bound_vanishing`].
#[derive(Clone, Debug)]
pub struct BoundVanishing {
    pub trials: usize,
    pub seed: u64,
    /// The first sample that is not an identity, with its counterexample.
    pub failure: Option<(AlternatedPolynomial, Counterexample)>,
}

impl BoundVanishing {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Samples polynomials with `nd(A)` alternating sets, each larger than
/// `dims(A)` in one parity, and checks exhaustively that all are identities.
pub fn check_bound_vanishing(alg: &SuperAlgebra, trials: usize, seed: u64, caps: &Caps) -> Result<BoundVanishing> {
    let params = alg.kemer_parameters()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let (f, _) = sample_strict_polynomial(&mut rng, params.beta, params.gamma, 1)?;
        if let Some(c) = find_counterexample(alg, &f, caps)? {
            return Ok(BoundVanishing { trials, seed, failure: Some((f, c)) });
        }
    }
    Ok(BoundVanishing { trials, seed, failure: None })
}
