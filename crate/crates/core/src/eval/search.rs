//! Exhaustive enumeration of elementary evaluations.

use rayon::prelude::*;

use super::{Compiled, Counterexample, Evaluable};
use crate::algebra::{Element, SuperAlgebra};
use crate::caps::Caps;
use crate::error::{over_cap, usage, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::perm::next_permutation;
use crate::poly::{GradedMonomial, GradedVariable};

/// Homogeneous basis tuples for a slot, ordered lexicographically with the
/// first slot position most significant.
#[derive(Clone, Debug)]
pub struct TupleSpace {
    choices: Vec<Vec<usize>>,
    size: u128,
}

impl TupleSpace {
    pub fn new(alg: &SuperAlgebra, slot: &[GradedVariable]) -> TupleSpace {
        TupleSpace::from_choices(slot.iter().map(|v| alg.basis_of_parity(v.parity)).collect())
    }

    pub fn from_choices(choices: Vec<Vec<usize>>) -> TupleSpace {
        let size = choices.iter().map(|c| c.len() as u128).product();
        TupleSpace { choices, size }
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn decode(&self, mut index: u128) -> Vec<usize> {
        let mut out = vec![0; self.choices.len()];
        for k in (0..self.choices.len()).rev() {
            let n = self.choices[k].len() as u128;
            out[k] = self.choices[k][(index % n) as usize];
            index /= n;
        }
        out
    }

    /// Fails when `size * cost` exceeds the enumeration cap.
    pub fn check_cap(&self, cost: u128, caps: &Caps) -> Result<()> {
        let work = self.size.saturating_mul(cost.max(1));
        if work > caps.max_enum as u128 {
            return over_cap(format!("{work} evaluations exceed the enumeration cap {}", caps.max_enum));
        }
        Ok(())
    }

    /// The least index whose tuple satisfies `pred`, searched in parallel.
    pub fn find_first<F>(&self, pred: F) -> Option<(Vec<usize>, Element)>
    where
        F: Fn(&[usize]) -> Option<Element> + Sync,
    {
        let hit = (0..self.size as u64).into_par_iter().find_first(|&i| pred(&self.decode(i as u128)).is_some())?;
        let tuple = self.decode(hit as u128);
        let value = pred(&tuple).expect("predicate is deterministic");
        Some((tuple, value))
    }
}

pub(crate) fn basis_values(tuple: &[usize]) -> Vec<Element> {
    tuple.iter().map(|&i| Element::basis(i)).collect()
}

/// The least elementary evaluation accepted by `filter` on which `c` is nonzero.
pub(crate) fn search(
    alg: &SuperAlgebra,
    c: &Compiled,
    caps: &Caps,
    filter: impl Fn(&[usize]) -> bool + Sync,
) -> Result<Option<Counterexample>> {
    let space = TupleSpace::new(alg, c.slot());
    space.check_cap(c.permutation_count() * c.terms.len() as u128, caps)?;
    let found = space.find_first(|t| {
        if !filter(t) {
            return None;
        }
        let v = c.eval(alg, &basis_values(t));
        (!v.is_zero()).then_some(v)
    });
    Ok(found.map(|(t, value)| Counterexample { assignment: c.slot().iter().copied().zip(t).collect(), value }))
}

/// The lexicographically least nonvanishing elementary evaluation, if any.
pub fn find_counterexample(alg: &SuperAlgebra, f: &impl Evaluable, caps: &Caps) -> Result<Option<Counterexample>> {
    if !f.is_multilinear() {
        return usage("identity checks need a multilinear polynomial; multilinearize first");
    }
    search(alg, &f.compile(), caps, |_| true)
}

pub fn is_graded_identity(alg: &SuperAlgebra, f: &impl Evaluable, caps: &Caps) -> Result<bool> {
    Ok(find_counterexample(alg, f, caps)?.is_none())
}

/// All orderings of a slot, in lexicographic order of the sorted slot.
pub fn slot_monomials(slot: &[GradedVariable]) -> Vec<GradedMonomial> {
    let mut vars = slot.to_vec();
    vars.sort();
    if vars.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    loop {
        out.push(GradedMonomial::new(vars.clone()));
        if !next_permutation(&mut vars) {
            break;
        }
    }
    out
}

/// The multilinear graded identities of `alg` in `slot`, as a basis of
/// coefficient vectors over [`slot_monomials`] in reduced echelon form.
pub fn identity_subspace(alg: &SuperAlgebra, slot: &[GradedVariable], caps: &Caps) -> Result<Vec<SparseVec>> {
    let monomials = slot_monomials(slot);
    let mut sorted = slot.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return usage("slot variables must be distinct");
    }
    let space = TupleSpace::new(alg, &sorted);
    space.check_cap(monomials.len() as u128, caps)?;
    let words: Vec<Vec<usize>> =
        monomials.iter().map(|m| m.vars().iter().map(|v| sorted.binary_search(v).unwrap()).collect()).collect();
    let rows: Vec<Vec<SparseVec>> = (0..space.size() as u64)
        .into_par_iter()
        .map(|i| {
            let t = space.decode(i as u128);
            let mut by_coord: std::collections::BTreeMap<usize, SparseVec> = Default::default();
            for (col, w) in words.iter().enumerate() {
                let mut prod = Element::basis(t[w[0]]);
                for &k in &w[1..] {
                    if prod.is_zero() {
                        break;
                    }
                    prod = alg.mul(&prod, &Element::basis(t[k]));
                }
                for (coord, c) in prod.0 {
                    by_coord.entry(coord).or_default().push((col, c));
                }
            }
            by_coord.into_values().collect()
        })
        .collect();
    let mut ech = Echelon::new(monomials.len());
    for r in rows.iter().flatten() {
        if ech.is_full() {
            break;
        }
        ech.insert(r);
    }
    Ok(null_rref(&ech, monomials.len()))
}

fn null_rref(ech: &Echelon, n: usize) -> Vec<SparseVec> {
    crate::linalg::span_rref(n, ech.nullspace())
}

