//! Exterior algebras, Grassmann envelopes and the sign twist between graded
//! identities of `A` and of `E(A)`.

mod envelope;
mod exterior;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::linalg::SparseVec;
use crate::perm::is_odd;
use crate::poly::{GradedPolynomial, GradedVariable};
use crate::scalar::{Parity, Scalar};
use crate::tideal::MultidegreeSlot;

pub use envelope::{
    default_truncation, envelope, envelope_identity_subspace, envelope_mul, envelope_ungraded_identity_subspace,
    evaluate_envelope, find_envelope_counterexample, is_identity_envelope, EnvelopeAlgebra, EnvelopeCounterexample,
    EnvelopeElement,
};
pub use exterior::{make_grassmann, merge_sign, subset_label, subset_parity, Grassmann, GrassmannElement, GRASSMANN_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistDirection {
    ToEnvelope,
    FromEnvelope,
}

/// Multiplies each monomial by the sign of the order in which it lists its
/// odd variables, relative to ascending id. The map is an involution, so both
/// directions agree.
pub fn grassmann_twist(f: &GradedPolynomial, _direction: TwistDirection) -> Result<GradedPolynomial> {
    if !f.is_multilinear() {
        return usage("the twist is defined on multilinear polynomials");
    }
    Ok(GradedPolynomial::from_terms(f.terms().map(|(m, c)| {
        let odd: Vec<u32> = m.vars().iter().filter(|v| v.parity == Parity::Odd).map(|v| v.id).collect();
        (m.clone(), if is_odd(&odd) { -c.clone() } else { c.clone() })
    })))
}

/// The twist of every row of a slot subspace, re-reduced.
pub fn twist_subspace(slot: &[GradedVariable], rows: &[SparseVec]) -> Result<Vec<SparseVec>> {
    let s = MultidegreeSlot::new(slot.to_vec())?;
    let signs: Vec<Scalar> = s
        .monomials()
        .iter()
        .map(|m| {
            let odd: Vec<u32> = m.vars().iter().filter(|v| v.parity == Parity::Odd).map(|v| v.id).collect();
            if is_odd(&odd) {
                Scalar::from_int(-1)
            } else {
                Scalar::one()
            }
        })
        .collect();
    let twisted = rows.iter().map(|r| r.iter().map(|(i, c)| (*i, c * &signs[*i])).collect());
    Ok(crate::linalg::span_rref(s.monomials().len(), twisted))
}
