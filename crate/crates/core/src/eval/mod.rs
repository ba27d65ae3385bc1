//! Exact evaluation of graded polynomials in superalgebras, exhaustive
//! identity and exactness checks, and trace identities.

mod classify;
mod search;
mod trace;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Element, SuperAlgebra};
use crate::error::{usage, Result};
use crate::linalg;
use crate::perm::signed_permutations;
use crate::poly::{AlternatedPolynomial, GradedPolynomial, GradedVariable};
use crate::scalar::Scalar;

pub use classify::{classify_evaluation, classify_tuple, find_inexact_evaluation, is_exact, EvaluationClass};
pub use search::{find_counterexample, identity_subspace, is_graded_identity, slot_monomials, TupleSpace};
pub use trace::{
    check_hamkel, check_traceid1, check_traceid1_with_summands, evaluate_trace_poly, hamkel_defect, TraceCheck,
};

/// An assignment of algebra elements to graded variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evaluation {
    values: BTreeMap<GradedVariable, Element>,
}

impl Evaluation {
    pub fn new() -> Self {
        Evaluation::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (GradedVariable, Element)>) -> Self {
        Evaluation { values: pairs.into_iter().collect() }
    }

    /// Variables mapped to basis elements.
    pub fn from_basis(pairs: impl IntoIterator<Item = (GradedVariable, usize)>) -> Self {
        Evaluation::from_pairs(pairs.into_iter().map(|(v, i)| (v, Element::basis(i))))
    }

    pub fn assign(&mut self, v: GradedVariable, value: Element) {
        self.values.insert(v, value);
    }

    pub fn get(&self, v: GradedVariable) -> Option<&Element> {
        self.values.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GradedVariable, &Element)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The basis index of every value, when all values are basis elements.
    pub fn basis_indices(&self) -> Option<Vec<(GradedVariable, usize)>> {
        self.values.iter().map(|(v, e)| e.as_basis().map(|i| (*v, i))).collect()
    }

    /// Values listed in `slot` order; checks assignment and parities.
    pub fn values_for(&self, alg: &SuperAlgebra, slot: &[GradedVariable]) -> Result<Vec<Element>> {
        slot.iter()
            .map(|v| {
                let Some(e) = self.values.get(v) else {
                    return usage(format!("variable {v} is not assigned"));
                };
                if e.terms().iter().any(|(i, _)| *i >= alg.dim()) {
                    return usage(format!("value of {v} is not an element of the algebra"));
                }
                if !alg.is_homogeneous_of(e, v.parity) {
                    return usage(format!("value of {v} does not have parity {}", v.parity));
                }
                Ok(e.clone())
            })
            .collect()
    }

    pub fn report(&self, alg: &SuperAlgebra) -> Vec<AssignmentEntry> {
        self.values
            .iter()
            .map(|(v, e)| AssignmentEntry { variable: v.to_string(), value: alg.describe(e) })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssignmentEntry {
    pub variable: String,
    pub value: BTreeMap<String, Scalar>,
}

/// A polynomial flattened onto slot positions for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Compiled {
    slot: Vec<GradedVariable>,
    terms: Vec<(Scalar, Vec<usize>)>,
    sets: Vec<Vec<usize>>,
    perms: Vec<Vec<(Vec<usize>, bool)>>,
}

/// Anything that evaluates like a polynomial.
pub trait Evaluable {
    fn compile(&self) -> Compiled;
    /// Whether exhaustive basis evaluation decides vanishing.
    fn is_multilinear(&self) -> bool;
}

impl Evaluable for GradedPolynomial {
    fn compile(&self) -> Compiled {
        Compiled::new(self, &[])
    }

    fn is_multilinear(&self) -> bool {
        GradedPolynomial::is_multilinear(self)
    }
}

impl Evaluable for AlternatedPolynomial {
    fn compile(&self) -> Compiled {
        Compiled::new(self.core(), self.sets())
    }

    fn is_multilinear(&self) -> bool {
        self.core().is_multilinear()
    }
}

impl Compiled {
    fn new(core: &GradedPolynomial, sets: &[Vec<GradedVariable>]) -> Compiled {
        let slot = core.slot();
        let pos = |v: &GradedVariable| slot.binary_search(v).expect("slot holds every variable");
        let terms = core.terms().map(|(m, c)| (c.clone(), m.vars().iter().map(pos).collect())).collect();
        let sets: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().map(pos).collect()).collect();
        let perms = sets.iter().map(|s| signed_permutations(s.len())).collect();
        Compiled { slot, terms, sets, perms }
    }

    pub fn slot(&self) -> &[GradedVariable] {
        &self.slot
    }

    /// Number of core evaluations one call to [`Compiled::eval`] performs.
    pub fn permutation_count(&self) -> u128 {
        self.perms.iter().map(|p| p.len() as u128).product()
    }

    pub fn eval_core(&self, alg: &SuperAlgebra, values: &[Element]) -> Element {
        let mut acc = BTreeMap::new();
        for (c, word) in &self.terms {
            let mut prod = values[word[0]].clone();
            for &k in &word[1..] {
                if prod.is_zero() {
                    break;
                }
                prod = alg.mul(&prod, &values[k]);
            }
            if !prod.is_zero() {
                linalg::axpy(&mut acc, c, &prod.0);
            }
        }
        Element(linalg::from_map(acc))
    }

    /// Evaluates with alternators applied by permuting the values.
    pub fn eval(&self, alg: &SuperAlgebra, values: &[Element]) -> Element {
        if self.sets.is_empty() {
            return self.eval_core(alg, values);
        }
        let mut acc = BTreeMap::new();
        let mut idx = vec![0usize; self.sets.len()];
        let mut permuted = values.to_vec();
        loop {
            let mut odd = false;
            for (k, set) in self.sets.iter().enumerate() {
                let (perm, o) = &self.perms[k][idx[k]];
                odd ^= *o;
                for (i, &slot_pos) in set.iter().enumerate() {
                    permuted[slot_pos] = values[set[perm[i]]].clone();
                }
            }
            let v = self.eval_core(alg, &permuted);
            if !v.is_zero() {
                let sign = if odd { Scalar::from_int(-1) } else { Scalar::one() };
                linalg::axpy(&mut acc, &sign, &v.0);
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < self.perms[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
        Element(linalg::from_map(acc))
    }
}

/// `f(ev)`, exactly.
pub fn evaluate(alg: &SuperAlgebra, f: &impl Evaluable, ev: &Evaluation) -> Result<Element> {
    let c = f.compile();
    let values = ev.values_for(alg, c.slot())?;
    Ok(c.eval(alg, &values))
}

/// A nonvanishing elementary evaluation, with basis indices in slot order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: Vec<(GradedVariable, usize)>,
    pub value: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub assignment: Vec<(String, String)>,
    pub value: BTreeMap<String, Scalar>,
}

impl Counterexample {
    pub fn evaluation(&self) -> Evaluation {
        Evaluation::from_basis(self.assignment.iter().copied())
    }

    pub fn labels<'a>(&self, alg: &'a SuperAlgebra) -> Vec<&'a str> {
        self.assignment.iter().map(|(_, i)| alg.label(*i)).collect()
    }

    pub fn report(&self, alg: &SuperAlgebra) -> CounterexampleReport {
        CounterexampleReport {
            assignment: self.assignment.iter().map(|(v, i)| (v.to_string(), alg.label(*i).to_string())).collect(),
            value: alg.describe(&self.value),
        }
    }
}

#[cfg(test)]
mod tests;
