//! Boundary polynomials: from an exact `h` and a complete evaluation with
//! `nd - 1` radical values, a consequence `h_mu` of type `(dims; nd-1; mu)`
//! with the same value at an evaluation whose remaining variables are semisimple.

use std::collections::HashMap;

use serde::Serialize;

use super::witness::{alternated_parts, block_polynomial, check_s_hat, merge_sets};
use super::{check_cost, Fresh};
use crate::algebra::{BasisRole, Element, SuperAlgebra};
use crate::caps::Caps;
use crate::error::{invalid, usage, Result};
use crate::eval::{classify_tuple, evaluate, is_exact, Evaluation};
use crate::poly::{AlternatedPolynomial, AlternationProfile, GradedPolynomial, GradedVariable};
use crate::scalar::{Parity, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AttachmentSide {
    /// `f_l v`
    Left,
    /// `v f_l`
    Right,
    /// `f_l h(...)`
    Whole,
}

/// Where the block polynomial `f_l` was inserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub block: usize,
    /// The slot variable of `h` next to which `f_l` sits; `None` for [`AttachmentSide::Whole`].
    pub variable: Option<GradedVariable>,
    pub side: AttachmentSide,
}

#[derive(Clone, Debug)]
pub struct BoundaryCertificate {
    pub mu: usize,
    pub polynomial: AlternatedPolynomial,
    pub profile: AlternationProfile,
    pub witness: Evaluation,
    /// `h(a) = h_mu(u)`.
    pub value: Element,
    pub attachments: Vec<Attachment>,
    /// Set when `h(a) = 0` and the certificate is an alternated multiple of `h`
    /// at repeated values.
    pub trivial: bool,
}

impl BoundaryCertificate {
    pub fn verify(&self, alg: &SuperAlgebra, caps: &Caps) -> Result<()> {
        if !self.polynomial.has_type(&self.profile) {
            return invalid("h_mu does not have the recorded type");
        }
        check_cost(&self.polynomial, caps)?;
        if evaluate(alg, &self.polynomial, &self.witness)? != self.value {
            return invalid("h_mu(u) differs from h(a)");
        }
        Ok(())
    }
}

/// Builds `h_mu` and its evaluation `u`, and checks `h_mu(u) = h(a)`.
///
/// Each block polynomial `f_l` (which evaluates to `e_l`) is attached next to
/// a radical value whose left or right location is `l`, falling back to a
/// semisimple value of block `l`. With one block, `f_1` multiplies all of `h`
/// when `e_1 h(a) = h(a)`, and otherwise sits to the right of a radical value
/// in `(1 - e_1) J e_1`. The radical slot variables join the first `nd - 1`
/// alternating sets.
pub fn build_boundary(
    alg: &SuperAlgebra,
    h: &GradedPolynomial,
    a_bar: &Evaluation,
    mu: usize,
    caps: &Caps,
) -> Result<BoundaryCertificate> {
    let d = alg.require_decomposition()?;
    if !h.is_multilinear() {
        return usage("h must be multilinear");
    }
    let slot = h.slot();
    let mut tuple = Vec::with_capacity(slot.len());
    for v in &slot {
        match a_bar.get(*v).and_then(|e| e.as_basis()) {
            Some(i) if i < alg.dim() && alg.degree(i) == v.parity => tuple.push(i),
            _ => return usage(format!("{v} needs a basis value of parity {}", v.parity)),
        }
    }
    let params = alg.kemer_parameters()?;
    let nd = params.gamma;
    let class = classify_tuple(d, nd, &tuple);
    if !class.is_complete {
        return usage("the evaluation is incomplete");
    }
    if class.radical_count + 1 != nd {
        return usage(format!("the evaluation has {} radical values, expected {}", class.radical_count, nd - 1));
    }
    if !is_exact(alg, h, caps)? {
        return usage("h is not exact for the algebra");
    }
    let a = Evaluation::from_basis(slot.iter().copied().zip(tuple.iter().copied()));
    let value = evaluate(alg, h, &a)?;
    let radicals: Vec<(GradedVariable, usize)> =
        slot.iter().copied().zip(tuple.iter().copied()).filter(|(_, i)| d.is_radical(*i)).collect();
    let s_tilde = radicals.len();
    let s_hat = s_tilde + mu;
    let mut fresh = Fresh::starting_at(h.max_id().unwrap_or(0) + 1);

    if value.is_zero() {
        return trivial_certificate(alg, h, a, &radicals, mu, &mut fresh, caps);
    }
    if d.p() == 0 {
        let strict = radicals.iter().map(|(v, _)| vec![*v]).collect();
        let profile = AlternationProfile::with_sets((0, 0), strict, vec![Vec::new(); mu])?;
        let cert = BoundaryCertificate {
            mu,
            polynomial: AlternatedPolynomial::plain(h.clone()),
            profile,
            witness: a,
            value,
            attachments: Vec::new(),
            trivial: false,
        };
        cert.verify(alg, caps)?;
        return Ok(cert);
    }
    check_s_hat(s_hat)?;

    let mut witness = a;
    let mut block_sets = Vec::new();
    let mut fs = Vec::new();
    for l in 0..d.p() {
        let bp = block_polynomial(d, l, s_hat, &mut fresh);
        for (v, i) in &bp.values {
            witness.assign(*v, Element::basis(*i));
        }
        block_sets.push(bp.sets);
        fs.push(bp.poly);
    }

    let attachments = attach(alg, &slot, &tuple, &value)?;
    let core = if attachments.iter().any(|a| a.side == AttachmentSide::Whole) {
        fs[0].mul(h)
    } else {
        let mut prefix: HashMap<GradedVariable, GradedPolynomial> = HashMap::new();
        let mut suffix: HashMap<GradedVariable, GradedPolynomial> = HashMap::new();
        for at in &attachments {
            let v = at.variable.expect("slot attachment");
            match at.side {
                AttachmentSide::Left => prefix.insert(v, fs[at.block].clone()),
                AttachmentSide::Right => suffix.insert(v, fs[at.block].clone()),
                AttachmentSide::Whole => unreachable!(),
            };
        }
        let map: HashMap<GradedVariable, GradedPolynomial> = slot
            .iter()
            .filter(|v| prefix.contains_key(v) || suffix.contains_key(v))
            .map(|&v| {
                let mut p = GradedPolynomial::var(v);
                if let Some(f) = prefix.get(&v) {
                    p = f.mul(&p);
                }
                if let Some(f) = suffix.get(&v) {
                    p = p.mul(f);
                }
                (v, p)
            })
            .collect();
        h.substitute(&map)
    };

    let mut sets = merge_sets(&block_sets.iter().map(|s| s.as_slice()).collect::<Vec<_>>(), s_hat);
    for (k, (v, _)) in radicals.iter().enumerate() {
        sets[k][v.parity.bit() as usize].push(*v);
    }
    let polynomial = AlternatedPolynomial::new(core, alternated_parts(&sets))?;
    let all: Vec<Vec<GradedVariable>> = sets.iter().map(|[e, o]| e.iter().chain(o).copied().collect()).collect();
    let (strict, exact) = all.split_at(s_tilde);
    let profile = AlternationProfile::with_sets(params.beta, strict.to_vec(), exact.to_vec())?;
    let cert = BoundaryCertificate { mu, polynomial, profile, witness, value, attachments, trivial: false };
    cert.verify(alg, caps)?;
    Ok(cert)
}

fn attach(alg: &SuperAlgebra, slot: &[GradedVariable], tuple: &[usize], value: &Element) -> Result<Vec<Attachment>> {
    let d = alg.require_decomposition()?;
    let p = d.p();
    let role = |k: usize| d.roles[tuple[k]];
    if p == 1 {
        let e1 = alg.block_idempotent(0)?;
        if alg.mul(&e1, value) == *value {
            return Ok(vec![Attachment { block: 0, variable: None, side: AttachmentSide::Whole }]);
        }
        if let Some(k) = (0..slot.len()).find(|&k| role(k) == BasisRole::Radical { left: 1, right: 0 }) {
            return Ok(vec![Attachment { block: 0, variable: Some(slot[k]), side: AttachmentSide::Right }]);
        }
    }
    let mut left_used = vec![false; slot.len()];
    let mut right_used = vec![false; slot.len()];
    let mut out = Vec::with_capacity(p);
    for l in 0..p {
        let radical_left = (0..slot.len()).find(|&k| !left_used[k] && matches!(role(k), BasisRole::Radical { left, .. } if left == l));
        let radical_right =
            (0..slot.len()).find(|&k| !right_used[k] && matches!(role(k), BasisRole::Radical { right, .. } if right == l));
        let semisimple = (0..slot.len()).find(|&k| role(k) == BasisRole::Semisimple { block: l });
        let choice = match (radical_left, radical_right, semisimple) {
            (Some(k), _, _) => (k, AttachmentSide::Left),
            (None, Some(k), _) => (k, AttachmentSide::Right),
            (None, None, Some(k)) if !left_used[k] => (k, AttachmentSide::Left),
            (None, None, Some(k)) if !right_used[k] => (k, AttachmentSide::Right),
            _ => return usage(format!("block {} is not touched by the evaluation", l + 1)),
        };
        match choice.1 {
            AttachmentSide::Left => left_used[choice.0] = true,
            _ => right_used[choice.0] = true,
        }
        out.push(Attachment { block: l, variable: Some(slot[choice.0]), side: choice.1 });
    }
    Ok(out)
}

/// `M h` where `M` is a product of fresh variables forming the required
/// alternating sets, all set variables of one parity taking the same value.
fn trivial_certificate(
    alg: &SuperAlgebra,
    h: &GradedPolynomial,
    mut witness: Evaluation,
    radicals: &[(GradedVariable, usize)],
    mu: usize,
    fresh: &mut Fresh,
    caps: &Caps,
) -> Result<BoundaryCertificate> {
    let t = alg.kemer_parameters()?.beta;
    let mut sets: Vec<[Vec<GradedVariable>; 2]> = Vec::new();
    for k in 0..radicals.len() + mu {
        let extra = radicals.get(k).map(|(v, _)| v.parity);
        let mut set: [Vec<GradedVariable>; 2] = [Vec::new(), Vec::new()];
        for (par, count) in [(Parity::Even, t.0), (Parity::Odd, t.1)] {
            let n = count + usize::from(extra == Some(par));
            set[par.bit() as usize] = (0..n).map(|_| fresh.take(par)).collect();
        }
        sets.push(set);
    }
    let mut word = Vec::new();
    for set in &sets {
        for (par, part) in [Parity::Even, Parity::Odd].into_iter().zip(set) {
            let Some(&value) = alg.basis_of_parity(par).first() else {
                if part.is_empty() {
                    continue;
                }
                return usage(format!("the algebra has no {par} elements"));
            };
            for &v in part {
                witness.assign(v, Element::basis(value));
                word.push(v);
            }
        }
    }
    let core = if word.is_empty() { h.clone() } else { GradedPolynomial::monomial(word, Scalar::one()).mul(h) };
    let polynomial = AlternatedPolynomial::new(core, alternated_parts(&sets))?;
    let all: Vec<Vec<GradedVariable>> = sets.iter().map(|[e, o]| e.iter().chain(o).copied().collect()).collect();
    let (strict, exact) = all.split_at(radicals.len());
    let profile = AlternationProfile::with_sets(t, strict.to_vec(), exact.to_vec())?;
    let cert = BoundaryCertificate {
        mu,
        polynomial,
        profile,
        witness,
        value: Element::zero(),
        attachments: Vec::new(),
        trivial: true,
    };
    cert.verify(alg, caps)?;
    Ok(cert)
}
