//! Witness polynomials for Kemer parameters, their certificates, and the
//! boundary polynomials `h_mu`.
//!
//! A witness is an alternated polynomial together with an elementary
//! evaluation on which it is nonzero. The simple-block words connect one
//! variable per matrix unit through connector variables so that only the
//! identity permutation of each alternating set survives.

mod boundary;
mod certify;
mod witness;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, Element, SuperAlgebra};
use crate::caps::Caps;
use crate::error::{invalid, Error, Result};
use crate::eval::{evaluate, Evaluable, Evaluation};
use crate::poly::{parse_document, AlternatedPolynomial, AlternationProfile, GradedVariable, PolynomialDocument};
use crate::scalar::Scalar;

pub use crate::algebra::KemerParameters;
pub use boundary::{build_boundary, Attachment, AttachmentSide, BoundaryCertificate};
pub use certify::{
    certify_direct_product, certify_parameters, check_bound_vanishing, sample_strict_polynomial, BoundVanishing,
    Certificate,
};
pub use witness::{build_reduced_witness, build_simple_witness, find_reduced_chain, ReducedChain};

/// A polynomial with a designated elementary evaluation and its exact value.
#[derive(Clone, Debug)]
pub struct WitnessBundle {
    pub algebra: SuperAlgebra,
    pub polynomial: AlternatedPolynomial,
    pub profile: AlternationProfile,
    pub evaluation: Evaluation,
    pub expected: Element,
    /// A multihomogeneous component that is already nonzero on the evaluation,
    /// recorded when the polynomial itself is not multihomogeneous.
    pub component: Option<AlternatedPolynomial>,
}

impl WitnessBundle {
    /// Checks the type, the value of the evaluation and that it is nonzero.
    pub fn verify(&self, caps: &Caps) -> Result<()> {
        if self.expected.is_zero() {
            return invalid("the expected value is zero");
        }
        if !self.polynomial.has_type(&self.profile) {
            return invalid("the polynomial does not have the recorded type");
        }
        check_cost(&self.polynomial, caps)?;
        let value = evaluate(&self.algebra, &self.polynomial, &self.evaluation)?;
        if value != self.expected {
            return invalid(format!(
                "the evaluation gives {:?} instead of {:?}",
                self.algebra.describe(&value),
                self.algebra.describe(&self.expected)
            ));
        }
        if let Some(c) = &self.component {
            if !c.has_type(&self.profile) {
                return invalid("the recorded component does not have the recorded type");
            }
            if evaluate(&self.algebra, c, &self.evaluation)?.is_zero() {
                return invalid("the recorded component vanishes on the evaluation");
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> WitnessFile {
        let doc = PolynomialDocument { polynomial: self.polynomial.clone(), profile: Some(self.profile.clone()) };
        WitnessFile {
            algebra: AlgebraSpec::Table(self.algebra.to_table_spec()),
            polynomial: doc.emit(),
            component: self.component.as_ref().map(|c| PolynomialDocument { polynomial: c.clone(), profile: None }.emit()),
            assignment: self
                .evaluation
                .iter()
                .map(|(v, e)| LabelledValue { variable: *v, value: self.algebra.describe(e) })
                .collect(),
            expected: self.algebra.describe(&self.expected),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("witness files serialize")
    }

    /// Parses a witness file and re-verifies it.
    pub fn from_json(text: &str, caps: &Caps) -> Result<WitnessBundle> {
        let file: WitnessFile =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        file.load(caps)
    }
}

/// The serialized form of a [`WitnessBundle`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub algebra: AlgebraSpec,
    /// Polynomial text including the profile lines.
    pub polynomial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
    pub assignment: Vec<LabelledValue>,
    pub expected: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledValue {
    pub variable: GradedVariable,
    pub value: BTreeMap<String, Scalar>,
}

impl WitnessFile {
    pub fn load(&self, caps: &Caps) -> Result<WitnessBundle> {
        let algebra = self.algebra.build(caps)?;
        let doc = parse_document(&self.polynomial)?;
        let Some(profile) = doc.profile else {
            return invalid("a witness polynomial needs a profile");
        };
        let component = match &self.component {
            None => None,
            Some(text) => Some(parse_document(text)?.polynomial),
        };
        let mut evaluation = Evaluation::new();
        for entry in &self.assignment {
            evaluation.assign(entry.variable, labelled_element(&algebra, &entry.value)?);
        }
        let expected = labelled_element(&algebra, &self.expected)?;
        let bundle = WitnessBundle { algebra, polynomial: doc.polynomial, profile, evaluation, expected, component };
        bundle.verify(caps)?;
        Ok(bundle)
    }
}

/// Reads `{label: coefficient}` as an element of `alg`.
pub fn labelled_element(alg: &SuperAlgebra, value: &BTreeMap<String, Scalar>) -> Result<Element> {
    let mut terms = Vec::new();
    for (label, c) in value {
        let Some(i) = alg.index_of(label) else {
            return invalid(format!("unknown basis label {label}"));
        };
        terms.push((i, c.clone()));
    }
    Ok(Element::from_terms(terms))
}

pub(crate) fn check_cost(f: &AlternatedPolynomial, caps: &Caps) -> Result<()> {
    let c = f.compile();
    let work = c.permutation_count().saturating_mul(f.core().len().max(1) as u128);
    if work > caps.max_enum as u128 {
        return crate::error::over_cap(format!("{work} products exceed the enumeration cap {}", caps.max_enum));
    }
    Ok(())
}

/// Hands out fresh variable ids in increasing order.
pub(crate) struct Fresh(u32);

impl Fresh {
    pub(crate) fn starting_at(id: u32) -> Fresh {
        Fresh(id)
    }

    pub(crate) fn take(&mut self, parity: crate::scalar::Parity) -> GradedVariable {
        let v = GradedVariable::new(self.0, parity);
        self.0 += 1;
        v
    }
}

#[cfg(test)]
mod tests;
