//! Witness words of simple blocks and the chained witness of reduced algebras.

use super::{check_cost, Fresh, WitnessBundle};
use crate::algebra::{assemble_elementary, Block, BasisRole, Decomposition, Element, RadicalSpec, SuperAlgebra};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::eval::{evaluate, Evaluation};
use crate::perm::next_permutation;
use crate::poly::{AlternatedPolynomial, AlternationProfile, GradedMonomial, GradedPolynomial, GradedVariable};
use crate::scalar::Scalar;

/// The connected word of one block with its variables and their values.
pub(crate) struct BlockWord {
    pub(crate) word: Vec<GradedVariable>,
    /// For each alternating index `d`, the even and odd variables of `Y_d`.
    pub(crate) sets: Vec<[Vec<GradedVariable>; 2]>,
    pub(crate) values: Vec<(GradedVariable, usize)>,
    /// Whether the word evaluates to `E_11 c` rather than `E_11`.
    pub(crate) twisted: bool,
}

/// Row-major cells joined by connectors: `y(i1 j1) z(j1 i2) y(i2 j2) ...`.
fn chain_cells(cells: &[(GradedVariable, usize, usize)], z: &[GradedVariable], n: usize) -> Vec<GradedVariable> {
    let mut w = Vec::with_capacity(2 * cells.len());
    for (k, &(y, _, j)) in cells.iter().enumerate() {
        w.push(y);
        if let Some(&(_, i_next, _)) = cells.get(k + 1) {
            w.push(z[j * n + i_next]);
        }
    }
    w
}

pub(crate) fn block_word(d: &Decomposition, l: usize, s_hat: usize, fresh: &mut Fresh) -> BlockWord {
    let block = d.blocks[l];
    let n = block.size();
    let mut values = Vec::new();
    let mut z = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let v = fresh.take(block.unit_parity(i, j, false));
            values.push((v, d.unit(l, i, j, false)));
            z.push(v);
        }
    }
    let twists: &[bool] = if block.is_group() { &[false, true] } else { &[false] };
    let mut word = vec![z[0]];
    let mut sets = Vec::with_capacity(s_hat);
    for _ in 0..s_hat {
        let mut set: [Vec<GradedVariable>; 2] = [Vec::new(), Vec::new()];
        for &t in twists {
            let mut cells = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let y = fresh.take(block.unit_parity(i, j, t));
                    values.push((y, d.unit(l, i, j, t)));
                    set[y.parity.bit() as usize].push(y);
                    cells.push((y, i, j));
                }
            }
            word.extend(chain_cells(&cells, &z, n));
            word.push(z[(n - 1) * n]);
        }
        sets.push(set);
    }
    let twisted = block.is_group() && (s_hat * n * n) % 2 == 1;
    BlockWord { word, sets, values, twisted }
}

pub(crate) fn alternated_parts(sets: &[[Vec<GradedVariable>; 2]]) -> Vec<Vec<GradedVariable>> {
    sets.iter().flat_map(|s| s.iter().cloned()).filter(|p| p.len() > 1).collect()
}

pub(crate) fn exact_profile(t: (usize, usize), sets: &[[Vec<GradedVariable>; 2]]) -> Result<AlternationProfile> {
    let exact = sets.iter().map(|[e, o]| e.iter().chain(o).copied().collect()).collect();
    AlternationProfile::with_sets(t, Vec::new(), exact)
}

pub(crate) fn check_s_hat(s_hat: usize) -> Result<()> {
    if s_hat == 0 {
        return Err(Error::Usage("s_hat must be at least 1".into()));
    }
    Ok(())
}

fn single_block_witness(alg: SuperAlgebra, s_hat: usize, caps: &Caps) -> Result<WitnessBundle> {
    let d = alg.require_decomposition()?.clone();
    let bw = block_word(&d, 0, s_hat, &mut Fresh::starting_at(1));
    let core = GradedPolynomial::monomial(bw.word.clone(), Scalar::one());
    let polynomial = AlternatedPolynomial::new(core, alternated_parts(&bw.sets))?;
    let profile = exact_profile(alg.kemer_parameters()?.beta, &bw.sets)?;
    let evaluation = Evaluation::from_basis(bw.values);
    let expected = Element::basis(d.unit(0, 0, 0, bw.twisted));
    let bundle = WitnessBundle { algebra: alg, polynomial, profile, evaluation, expected, component: None };
    check_cost(&bundle.polynomial, caps)?;
    Ok(bundle)
}

/// The alternated connected word of a simple block with the evaluation
/// `y = E, z = E`.
///
/// For `M_{k,m}` the value is `E_11`; for `M_k(Q[c])` it is `E_11 c^(s_hat k^2)`,
/// since every one of the `s_hat` odd words contributes `c^(k^2)`.
pub fn build_simple_witness(block: Block, s_hat: usize, caps: &Caps) -> Result<WitnessBundle> {
    check_s_hat(s_hat)?;
    let alg = assemble_elementary(&[block], &RadicalSpec::default(), caps)?;
    let bundle = single_block_witness(alg, s_hat, caps)?;
    bundle.verify(caps)?;
    Ok(bundle)
}

/// A block order and radical basis elements with `e_1 r_1 e_2 ... r_(p-1) e_p != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedChain {
    /// Block indices in chain order.
    pub order: Vec<usize>,
    pub radicals: Vec<usize>,
    pub value: Element,
}

/// The first nonzero chain over block permutations in lexicographic order
/// and radical basis tuples in index order. `None` without blocks.
pub fn find_reduced_chain(alg: &SuperAlgebra) -> Result<Option<ReducedChain>> {
    let d = alg.require_decomposition()?;
    let p = d.p();
    if p == 0 {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..p).collect();
    loop {
        let start = alg.block_idempotent(order[0])?;
        let mut radicals = Vec::new();
        if let Some(value) = extend_chain(alg, d, &order, start, &mut radicals)? {
            return Ok(Some(ReducedChain { order, radicals, value }));
        }
        if !next_permutation(&mut order) {
            return Ok(None);
        }
    }
}

fn extend_chain(
    alg: &SuperAlgebra,
    d: &Decomposition,
    order: &[usize],
    acc: Element,
    radicals: &mut Vec<usize>,
) -> Result<Option<Element>> {
    let q = radicals.len();
    if q + 1 == order.len() {
        return Ok(Some(acc));
    }
    let next = alg.block_idempotent(order[q + 1])?;
    for r in d.radical_indices() {
        // Other Peirce components are killed by the idempotents on either side.
        if d.roles[r] != (BasisRole::Radical { left: order[q], right: order[q + 1] }) {
            continue;
        }
        let prod = alg.mul(&alg.mul(&acc, &Element::basis(r)), &next);
        if prod.is_zero() {
            continue;
        }
        radicals.push(r);
        if let Some(v) = extend_chain(alg, d, order, prod, radicals)? {
            return Ok(Some(v));
        }
        radicals.pop();
    }
    Ok(None)
}

/// `f_l = sum_i x~_(l,i) W_l x~~_(l,i)` with its values: `x~ = E_i1`,
/// `x~~ = E_1i c~` where `W_l` evaluates to `E_11 c~`.
pub(crate) struct BlockPolynomial {
    pub(crate) poly: GradedPolynomial,
    pub(crate) sets: Vec<[Vec<GradedVariable>; 2]>,
    pub(crate) values: Vec<(GradedVariable, usize)>,
}

pub(crate) fn block_polynomial(d: &Decomposition, l: usize, s_hat: usize, fresh: &mut Fresh) -> BlockPolynomial {
    let block = d.blocks[l];
    let bw = block_word(d, l, s_hat, fresh);
    let mut values = bw.values;
    let w = GradedMonomial::new(bw.word);
    let mut poly = GradedPolynomial::zero();
    for i in 0..block.size() {
        let left = fresh.take(block.unit_parity(i, 0, false));
        let right = fresh.take(block.unit_parity(0, i, bw.twisted));
        values.push((left, d.unit(l, i, 0, false)));
        values.push((right, d.unit(l, 0, i, bw.twisted)));
        let m = GradedMonomial::new(vec![left]).concat(&w).concat(&GradedMonomial::new(vec![right]));
        poly.add_term(m, &Scalar::one());
    }
    BlockPolynomial { poly, sets: bw.sets, values }
}

/// Joins per-block sets for the same index and parity.
pub(crate) fn merge_sets(parts: &[&[[Vec<GradedVariable>; 2]]], s_hat: usize) -> Vec<[Vec<GradedVariable>; 2]> {
    (0..s_hat)
        .map(|d| {
            let mut merged: [Vec<GradedVariable>; 2] = [Vec::new(), Vec::new()];
            for sets in parts {
                for par in 0..2 {
                    merged[par].extend(sets[d][par].iter().copied());
                }
            }
            merged
        })
        .collect()
}

/// The alternated product `f_1 x_1 f_2 ... x_(p-1) f_p` along a reduced chain,
/// evaluated at `x_q = r_q` and the block values, giving the chain element.
///
/// With one block this is the simple witness of that block inside `alg`.
pub fn build_reduced_witness(alg: &SuperAlgebra, s_hat: usize, caps: &Caps) -> Result<WitnessBundle> {
    check_s_hat(s_hat)?;
    let d = alg.require_decomposition()?;
    if d.p() == 0 {
        return Err(Error::Refused(
            "a nilpotent algebra has graded dimensions (0,0); use the degree witness of certify_parameters".into(),
        ));
    }
    if d.p() == 1 {
        let bundle = single_block_witness(alg.clone(), s_hat, caps)?;
        bundle.verify(caps)?;
        return Ok(bundle);
    }
    let Some(chain) = find_reduced_chain(alg)? else {
        return Err(Error::Refused("no nonzero chain e_1 J e_2 ... J e_p exists for any block order".into()));
    };
    let mut fresh = Fresh::starting_at(1);
    let mut values = Vec::new();
    let mut core: Option<GradedPolynomial> = None;
    let mut block_sets = Vec::new();
    for (q, &l) in chain.order.iter().enumerate() {
        let bp = block_polynomial(d, l, s_hat, &mut fresh);
        values.extend(bp.values);
        block_sets.push(bp.sets);
        core = Some(match core {
            None => bp.poly,
            Some(acc) => {
                let r = chain.radicals[q - 1];
                let x = fresh.take(alg.degree(r));
                values.push((x, r));
                acc.mul(&GradedPolynomial::var(x)).mul(&bp.poly)
            }
        });
    }
    let core = core.expect("at least two blocks");
    let sets = merge_sets(&block_sets.iter().map(|s| s.as_slice()).collect::<Vec<_>>(), s_hat);
    let parts = alternated_parts(&sets);
    let polynomial = AlternatedPolynomial::new(core.clone(), parts.clone())?;
    check_cost(&polynomial, caps)?;
    let profile = exact_profile(alg.kemer_parameters()?.beta, &sets)?;
    let evaluation = Evaluation::from_basis(values);
    let mut component = None;
    for c in core.multihomogeneous_components() {
        let alt = AlternatedPolynomial::new(c, parts.clone())?;
        if !evaluate(alg, &alt, &evaluation)?.is_zero() {
            component = Some(alt);
            break;
        }
    }
    let bundle = WitnessBundle { algebra: alg.clone(), polynomial, profile, evaluation, expected: chain.value, component };
    bundle.verify(caps)?;
    Ok(bundle)
}
