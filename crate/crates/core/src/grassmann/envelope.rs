//! Grassmann envelopes `E(A) = A_0 (x) E_0 + A_1 (x) E_1` and their identities.
//!
//! Identity checks substitute `a (x) w` with `a` a homogeneous basis element
//! and `w` a product of fresh generators: one for odd `a`, two (or the unit)
//! for even `a`. Generators are handed out from the top index down, so a
//! larger truncation leaves the low generators unused.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::exterior::{merge_sign, subset_label, subset_parity, GRASSMANN_LIMIT};
use crate::algebra::SuperAlgebra;
use crate::caps::Caps;
use crate::error::{over_cap, usage, Result};
use crate::eval::{slot_monomials, TupleSpace};
use crate::linalg::{span_rref, Echelon, SparseVec};
use crate::poly::{GradedPolynomial, GradedVariable};
use crate::scalar::{Parity, Scalar};

/// A sparse element of `A (x) E`: `(basis index of A, subset) -> coefficient`.
pub type EnvelopeElement = BTreeMap<(usize, u32), Scalar>;

pub fn envelope_mul(alg: &SuperAlgebra, x: &EnvelopeElement, y: &EnvelopeElement) -> EnvelopeElement {
    let mut out = EnvelopeElement::new();
    for ((a, w), c) in x {
        for ((b, v), d) in y {
            let Some(odd) = merge_sign(*w, *v) else { continue };
            let cd = c * d;
            let cd = if odd { -cd } else { cd };
            for (k, e) in alg.basis_product(*a, *b) {
                let entry = out.entry((*k, w | v)).or_insert_with(Scalar::zero);
                *entry += &(&cd * e);
                if entry.is_zero() {
                    out.remove(&(*k, w | v));
                }
            }
        }
    }
    out
}

/// `E(A)` truncated to `n` generators, as a structure-constant algebra.
#[derive(Clone, Debug)]
pub struct EnvelopeAlgebra {
    pub base: SuperAlgebra,
    pub n: usize,
    pub algebra: SuperAlgebra,
    /// `(a, subset)` for each basis element of `algebra`.
    pub pairs: Vec<(usize, u32)>,
}

pub fn envelope(alg: &SuperAlgebra, n: usize, caps: &Caps) -> Result<EnvelopeAlgebra> {
    check_generators(n, caps)?;
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let pairs: Vec<(usize, u32)> = (0..alg.dim())
        .flat_map(|a| masks.iter().filter(move |&&m| subset_parity(m) == alg.degree(a)).map(move |&m| (a, m)))
        .collect();
    if pairs.len() > caps.max_dim {
        return over_cap(format!("the envelope has dimension {} above the cap {}", pairs.len(), caps.max_dim));
    }
    let index: BTreeMap<(usize, u32), usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut table = Vec::with_capacity(pairs.len() * pairs.len());
    for p in &pairs {
        for q in &pairs {
            let prod = envelope_mul(alg, &single(*p), &single(*q));
            table.push(prod.into_iter().map(|(k, c)| (index[&k], c)).collect::<SparseVec>());
        }
    }
    let labels = pairs.iter().map(|&(a, m)| format!("{}⊗{}", alg.label(a), subset_label(m))).collect();
    let degrees = pairs.iter().map(|&(a, _)| alg.degree(a)).collect();
    let unit = alg.unit_index().map(|u| index[&(u, 0)]);
    let algebra = SuperAlgebra::from_table(labels, degrees, table, unit, None, caps)?;
    Ok(EnvelopeAlgebra { base: alg.clone(), n, algebra, pairs })
}

fn single(p: (usize, u32)) -> EnvelopeElement {
    EnvelopeElement::from([(p, Scalar::one())])
}

fn check_generators(n: usize, caps: &Caps) -> Result<()> {
    if n == 0 {
        return usage("the truncation needs at least one generator");
    }
    let limit = caps.max_grassmann.min(GRASSMANN_LIMIT);
    if n > limit {
        return over_cap(format!("{n} generators exceed the cap {limit}"));
    }
    Ok(())
}

/// The fresh monomials for slot parities: one generator per odd position,
/// two per even position, allocated downwards from generator `n - 1`.
/// Even positions listed in `units` get the empty monomial instead.
fn fresh_monomials(parities: &[Parity], units: u32, n: usize) -> Result<Vec<u32>> {
    let mut next = n;
    let mut out = Vec::with_capacity(parities.len());
    for (k, p) in parities.iter().enumerate() {
        let need = match p {
            Parity::Odd => 1,
            Parity::Even if units >> k & 1 == 1 => 0,
            Parity::Even => 2,
        };
        if next < need {
            return usage(format!("{n} generators are too few for this slot"));
        }
        let mut m = 0u32;
        for _ in 0..need {
            next -= 1;
            m |= 1 << next;
        }
        out.push(m);
    }
    Ok(out)
}

/// Truncation used for a slot of degree `d`: `2d` generators.
pub fn default_truncation(d: usize) -> usize {
    (2 * d).max(1)
}

struct SlotWords {
    sorted: Vec<GradedVariable>,
    words: Vec<Vec<usize>>,
}

fn slot_words(slot: &[GradedVariable]) -> Result<SlotWords> {
    let mut sorted = slot.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return usage("slot variables must be distinct");
    }
    let words = slot_monomials(&sorted).iter().map(|m| m.vars().iter().map(|v| sorted.binary_search(v).unwrap()).collect()).collect();
    Ok(SlotWords { sorted, words })
}

/// Linear constraints on coefficient vectors over the slot monomials: one row
/// per coordinate of `A (x) E` and per reduced substitution.
fn constraint_rows(alg: &SuperAlgebra, slot: &[GradedVariable], n: usize, caps: &Caps) -> Result<(usize, Vec<SparseVec>)> {
    check_generators(n, caps)?;
    let sw = slot_words(slot)?;
    let parities: Vec<Parity> = sw.sorted.iter().map(|v| v.parity).collect();
    let even_positions: Vec<usize> = (0..parities.len()).filter(|&k| parities[k] == Parity::Even).collect();
    let mut layouts = Vec::new();
    for choice in 0u32..1 << even_positions.len() {
        let units = even_positions.iter().enumerate().filter(|(b, _)| choice >> b & 1 == 1).fold(0u32, |m, (_, &k)| m | 1 << k);
        layouts.push(fresh_monomials(&parities, units, n)?);
    }
    let space = TupleSpace::new(alg, &sw.sorted);
    space.check_cap((sw.words.len() * layouts.len()) as u128, caps)?;
    let rows: Vec<SparseVec> = (0..space.size() as u64)
        .into_par_iter()
        .flat_map_iter(|i| {
            let t = space.decode(i as u128);
            let mut out = Vec::new();
            for masks in &layouts {
                let values: Vec<EnvelopeElement> = t.iter().zip(masks).map(|(&a, &m)| single((a, m))).collect();
                let mut by_coord: BTreeMap<(usize, u32), SparseVec> = BTreeMap::new();
                for (col, w) in sw.words.iter().enumerate() {
                    let mut prod = values[w[0]].clone();
                    for &k in &w[1..] {
                        if prod.is_empty() {
                            break;
                        }
                        prod = envelope_mul(alg, &prod, &values[k]);
                    }
                    for (coord, c) in prod {
                        by_coord.entry(coord).or_default().push((col, c));
                    }
                }
                out.extend(by_coord.into_values());
            }
            out
        })
        .collect();
    Ok((sw.words.len(), rows))
}

fn null_rref(ncols: usize, rows: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        if ech.is_full() {
            break;
        }
        ech.insert(r);
    }
    span_rref(ncols, ech.nullspace())
}

/// The graded multilinear identities of `E(A)` (truncated to `n` generators)
/// in `slot`, in reduced echelon form over [`slot_monomials`].
pub fn envelope_identity_subspace(alg: &SuperAlgebra, slot: &[GradedVariable], n: usize, caps: &Caps) -> Result<Vec<SparseVec>> {
    let (ncols, rows) = constraint_rows(alg, slot, n, caps)?;
    Ok(null_rref(ncols, &rows))
}

/// The ordinary multilinear identities of `E(A)` in `slot`, whose parities
/// are ignored: the intersection over all parity assignments.
pub fn envelope_ungraded_identity_subspace(
    alg: &SuperAlgebra,
    slot: &[GradedVariable],
    n: usize,
    caps: &Caps,
) -> Result<Vec<SparseVec>> {
    let ids: Vec<u32> = {
        let mut ids: Vec<u32> = slot.iter().map(|v| v.id).collect();
        ids.sort();
        ids
    };
    let mut all_rows = Vec::new();
    let mut ncols = 0;
    for mask in 0u32..1 << ids.len() {
        let graded: Vec<GradedVariable> =
            ids.iter().enumerate().map(|(k, &id)| GradedVariable::new(id, Parity::from_bit((mask >> k & 1) as u8))).collect();
        // Ids fix the monomial order, so columns agree across assignments.
        let (c, rows) = constraint_rows(alg, &graded, n, caps)?;
        ncols = c;
        all_rows.extend(rows);
    }
    Ok(null_rref(ncols, &all_rows))
}

/// A substitution `x_i -> a_i (x) w_i` on which a polynomial is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeCounterexample {
    pub assignment: Vec<(GradedVariable, usize, u32)>,
    pub value: EnvelopeElement,
}

/// Evaluates `f` at `a_i (x) w_i`.
pub fn evaluate_envelope(alg: &SuperAlgebra, f: &GradedPolynomial, values: &BTreeMap<GradedVariable, EnvelopeElement>) -> EnvelopeElement {
    let mut acc = EnvelopeElement::new();
    for (m, c) in f.terms() {
        let mut prod = values[&m.vars()[0]].clone();
        for v in &m.vars()[1..] {
            if prod.is_empty() {
                break;
            }
            prod = envelope_mul(alg, &prod, &values[v]);
        }
        for (k, x) in prod {
            let entry = acc.entry(k).or_insert_with(Scalar::zero);
            *entry += &(&x * c);
            if entry.is_zero() {
                acc.remove(&k);
            }
        }
    }
    acc
}

/// Searches every parity assignment and reduced substitution for a nonzero
/// value of the ungraded multilinear `f` on `E(A)`, truncated to `n` generators.
pub fn find_envelope_counterexample(
    alg: &SuperAlgebra,
    f: &GradedPolynomial,
    n: usize,
    caps: &Caps,
) -> Result<Option<EnvelopeCounterexample>> {
    if !f.is_multilinear() {
        return usage("envelope identity checks need a multilinear polynomial");
    }
    check_generators(n, caps)?;
    let ids: Vec<u32> = f.slot().iter().map(|v| v.id).collect();
    let mut distinct = ids.clone();
    distinct.dedup();
    if distinct.len() != ids.len() {
        return usage("the polynomial uses one id with two parities");
    }
    for mask in 0u32..1 << ids.len() {
        let graded: Vec<GradedVariable> =
            ids.iter().enumerate().map(|(k, &id)| GradedVariable::new(id, Parity::from_bit((mask >> k & 1) as u8))).collect();
        let renamed = f.rename(&f.slot().into_iter().zip(graded.iter().copied()).collect());
        let parities: Vec<Parity> = graded.iter().map(|v| v.parity).collect();
        let even: Vec<usize> = (0..parities.len()).filter(|&k| parities[k] == Parity::Even).collect();
        let space = TupleSpace::new(alg, &graded);
        space.check_cap((f.len() << even.len()) as u128, caps)?;
        for choice in 0u32..1 << even.len() {
            let units = even.iter().enumerate().filter(|(b, _)| choice >> b & 1 == 1).fold(0u32, |m, (_, &k)| m | 1 << k);
            let masks = fresh_monomials(&parities, units, n)?;
            let hit = (0..space.size() as u64).into_par_iter().find_first(|&i| {
                let t = space.decode(i as u128);
                let values = graded.iter().zip(&t).zip(&masks).map(|((v, &a), &m)| (*v, single((a, m)))).collect();
                !evaluate_envelope(alg, &renamed, &values).is_empty()
            });
            if let Some(i) = hit {
                let t = space.decode(i as u128);
                let values = graded.iter().zip(&t).zip(&masks).map(|((v, &a), &m)| (*v, single((a, m)))).collect();
                let value = evaluate_envelope(alg, &renamed, &values);
                let assignment = graded.iter().zip(&t).zip(&masks).map(|((v, &a), &m)| (*v, a, m)).collect();
                return Ok(Some(EnvelopeCounterexample { assignment, value }));
            }
        }
    }
    Ok(None)
}

/// Whether the ungraded multilinear `f` is an identity of `E(A)`, using the
/// truncation `2 deg f`.
pub fn is_identity_envelope(alg: &SuperAlgebra, f: &GradedPolynomial, caps: &Caps) -> Result<bool> {
    Ok(find_envelope_counterexample(alg, f, default_truncation(f.degree()), caps)?.is_none())
}
