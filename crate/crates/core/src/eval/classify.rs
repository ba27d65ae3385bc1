//! Thin, incomplete and complete elementary evaluations; exactness.

use serde::Serialize;

use super::search::search;
use super::{Counterexample, Evaluable, Evaluation};
use crate::algebra::{BasisRole, Decomposition, SuperAlgebra};
use crate::caps::Caps;
use crate::error::{usage, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EvaluationClass {
    pub is_elementary: bool,
    pub radical_count: usize,
    /// Fewer than `nd - 1` radical values.
    pub is_thin: bool,
    /// Every block is touched. Vacuously true without blocks.
    pub is_complete: bool,
}

impl EvaluationClass {
    /// Thin or incomplete: where exact polynomials must vanish.
    pub fn is_degenerate(&self) -> bool {
        self.is_thin || !self.is_complete
    }
}

/// Classifies a tuple of basis indices.
///
/// A block `l` is touched by a semisimple value from `C_l` or by a radical
/// value in some `e_l J e_j` or `e_j J e_l`.
pub fn classify_tuple(d: &Decomposition, nd: usize, tuple: &[usize]) -> EvaluationClass {
    let p = d.p();
    let mut touched = vec![false; p];
    let mut radical_count = 0;
    for &i in tuple {
        match d.roles[i] {
            BasisRole::Semisimple { block } => touched[block] = true,
            BasisRole::Radical { left, right } => {
                radical_count += 1;
                for l in [left, right] {
                    if l < p {
                        touched[l] = true;
                    }
                }
            }
        }
    }
    EvaluationClass {
        is_elementary: true,
        radical_count,
        is_thin: radical_count + 1 < nd,
        is_complete: touched.iter().all(|&t| t),
    }
}

pub fn classify_evaluation(alg: &SuperAlgebra, ev: &Evaluation) -> Result<EvaluationClass> {
    let d = alg.require_decomposition()?;
    let Some(pairs) = ev.basis_indices() else {
        return usage("classification needs an elementary evaluation by basis elements");
    };
    if let Some((v, _)) = pairs.iter().find(|(v, i)| *i >= alg.dim() || alg.degree(*i) != v.parity) {
        return usage(format!("value of {v} is not a basis element of matching parity"));
    }
    let nd = alg.radical_nilpotency_degree()?;
    let tuple: Vec<usize> = pairs.iter().map(|(_, i)| *i).collect();
    Ok(classify_tuple(d, nd, &tuple))
}

/// The least thin or incomplete elementary evaluation where `f` is nonzero.
pub fn find_inexact_evaluation(alg: &SuperAlgebra, f: &impl Evaluable, caps: &Caps) -> Result<Option<Counterexample>> {
    let d = alg.require_decomposition()?;
    if !f.is_multilinear() {
        return usage("exactness checks need a multilinear polynomial");
    }
    let nd = alg.radical_nilpotency_degree()?;
    search(alg, &f.compile(), caps, |t| classify_tuple(d, nd, t).is_degenerate())
}

pub fn is_exact(alg: &SuperAlgebra, f: &impl Evaluable, caps: &Caps) -> Result<bool> {
    Ok(find_inexact_evaluation(alg, f, caps)?.is_none())
}
