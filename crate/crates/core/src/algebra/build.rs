//! Constructors: matrix superalgebras, elementary assembly, products and unit adjunction.

use std::collections::{HashMap, HashSet};

use super::{BasisRole, Block, Decomposition, Element, SuperAlgebra};
use crate::caps::Caps;
use crate::error::{invalid, usage, Result};
use crate::linalg::SparseVec;
use crate::scalar::{Parity, Scalar};

/// A homogeneous radical generator placed in `e_from J e_to`.
///
/// Locations are zero based block indices; the number of blocks denotes the
/// adjoint idempotent. Each generator spans the bimodule copy
/// `(C_from e_11) g (e_11 C_to)`, so a generator next to a block of size `s`
/// contributes `s` (or `2s` for a group block) basis elements on that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalGenerator {
    pub label: String,
    pub parity: Parity,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadicalSpec {
    pub generators: Vec<RadicalGenerator>,
    /// `(a, b, [(c, t), ...])` meaning `a·b = sum c·t`; missing pairs multiply to zero.
    pub products: Vec<(String, String, Vec<(Scalar, String)>)>,
}

pub fn unit_label(block: usize, i: usize, j: usize, twisted: bool) -> String {
    let base = format!("E[{},{},{}]", block + 1, i + 1, j + 1);
    if twisted {
        base + "·c"
    } else {
        base
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Side {
    Adjoint,
    Cell { row: usize, twist: bool },
}

fn sides(blocks: &[Block], loc: usize) -> Vec<Side> {
    if loc == blocks.len() {
        return vec![Side::Adjoint];
    }
    let b = blocks[loc];
    let twists: &[bool] = if b.is_group() { &[false, true] } else { &[false] };
    (0..b.size()).flat_map(|row| twists.iter().map(move |&twist| Side::Cell { row, twist })).collect()
}

fn side_text(s: Side) -> String {
    match s {
        Side::Adjoint => "*".into(),
        Side::Cell { row, twist } => format!("{}{}", row + 1, if twist { "c" } else { "" }),
    }
}

fn left_parity(blocks: &[Block], loc: usize, s: Side) -> Parity {
    match s {
        Side::Adjoint => Parity::Even,
        Side::Cell { row, twist } => blocks[loc].unit_parity(row, 0, twist),
    }
}

fn right_parity(blocks: &[Block], loc: usize, s: Side) -> Parity {
    match s {
        Side::Adjoint => Parity::Even,
        Side::Cell { row, twist } => blocks[loc].unit_parity(0, row, twist),
    }
}

/// Builds `(C_1 x ... x C_p) + J` from block descriptors and radical generators.
pub fn assemble_elementary(blocks: &[Block], radical: &RadicalSpec, caps: &Caps) -> Result<SuperAlgebra> {
    let p = blocks.len();
    for b in blocks {
        let ok = match *b {
            Block::Matrix { k, .. } => k >= 1,
            Block::Group { k } => k >= 1,
        };
        if !ok {
            return usage("block sizes must be positive");
        }
    }
    let requested: usize = blocks.iter().map(|b| b.dim()).sum::<usize>()
        + radical
            .generators
            .iter()
            .map(|g| sides(blocks, g.from.min(p)).len() * sides(blocks, g.to.min(p)).len())
            .sum::<usize>();
    if requested > caps.max_dim {
        return Err(crate::error::Error::Resource(format!(
            "dimension {requested} exceeds the cap {}",
            caps.max_dim
        )));
    }

    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    let mut roles = Vec::new();
    let mut units: Vec<Vec<usize>> = Vec::new();
    // (block, i, j, twist) for semisimple indices
    let mut ss_info: HashMap<usize, (usize, usize, usize, bool)> = HashMap::new();
    for (l, b) in blocks.iter().enumerate() {
        let s = b.size();
        let twists: &[bool] = if b.is_group() { &[false, true] } else { &[false] };
        let mut u = Vec::new();
        for &t in twists {
            for i in 0..s {
                for j in 0..s {
                    let idx = labels.len();
                    labels.push(unit_label(l, i, j, t));
                    degrees.push(b.unit_parity(i, j, t));
                    roles.push(BasisRole::Semisimple { block: l });
                    ss_info.insert(idx, (l, i, j, t));
                    u.push(idx);
                }
            }
        }
        units.push(u);
    }

    let mut gen_index = HashMap::new();
    for (g, gen) in radical.generators.iter().enumerate() {
        if gen.from > p || gen.to > p {
            return invalid(format!("generator {} has a location outside 1..{}", gen.label, p + 1));
        }
        if gen_index.insert(gen.label.clone(), g).is_some() {
            return invalid(format!("duplicate radical generator {}", gen.label));
        }
    }
    let mut rad_index: HashMap<(usize, Side, Side), usize> = HashMap::new();
    let mut rad_info: HashMap<usize, (usize, Side, Side)> = HashMap::new();
    for (g, gen) in radical.generators.iter().enumerate() {
        let ls = sides(blocks, gen.from);
        let rs = sides(blocks, gen.to);
        let plain = ls.len() == 1 && rs.len() == 1;
        for &l in &ls {
            for &r in &rs {
                let idx = labels.len();
                labels.push(if plain {
                    gen.label.clone()
                } else {
                    format!("{}[{},{}]", gen.label, side_text(l), side_text(r))
                });
                degrees.push(left_parity(blocks, gen.from, l) + gen.parity + right_parity(blocks, gen.to, r));
                roles.push(BasisRole::Radical { left: gen.from, right: gen.to });
                rad_index.insert((g, l, r), idx);
                rad_info.insert(idx, (g, l, r));
            }
        }
    }

    let mut gen_products: HashMap<(usize, usize), Vec<(Scalar, usize)>> = HashMap::new();
    for (a, b, terms) in &radical.products {
        let (Some(&ga), Some(&gb)) = (gen_index.get(a), gen_index.get(b)) else {
            return invalid(format!("product ({a}, {b}) names an unknown generator"));
        };
        let mut resolved = Vec::new();
        for (c, t) in terms {
            let Some(&gt) = gen_index.get(t) else {
                return invalid(format!("product ({a}, {b}) names an unknown generator {t}"));
            };
            if c.is_zero() {
                continue;
            }
            resolved.push((c.clone(), gt));
        }
        let (ra, rb) = (&radical.generators[ga], &radical.generators[gb]);
        if !resolved.is_empty() {
            if ra.to != rb.from {
                return invalid(format!("product ({a}, {b}) must vanish: the Peirce components do not compose"));
            }
            if ra.to < p && blocks[ra.to].is_group() {
                return invalid(format!("product ({a}, {b}) passes through a group block and must vanish"));
            }
            for (_, gt) in &resolved {
                let t = &radical.generators[*gt];
                if t.from != ra.from || t.to != rb.to {
                    return invalid(format!("product ({a}, {b}) leaves the declared Peirce component"));
                }
                if t.parity != ra.parity + rb.parity {
                    return invalid(format!("product ({a}, {b}) has the wrong parity"));
                }
            }
        }
        if gen_products.insert((ga, gb), resolved).is_some() {
            return invalid(format!("product ({a}, {b}) is given twice"));
        }
    }

    let dim = labels.len();
    let mut table: Vec<SparseVec> = vec![Vec::new(); dim * dim];
    for x in 0..dim {
        for y in 0..dim {
            let prod: SparseVec = match (ss_info.get(&x), ss_info.get(&y), rad_info.get(&x), rad_info.get(&y)) {
                (Some(&(l1, i, j, t1)), Some(&(l2, k, m, t2)), _, _) => {
                    if l1 == l2 && j == k {
                        vec![(units[l1][blocks[l1].unit_position(i, m, t1 ^ t2)], Scalar::one())]
                    } else {
                        Vec::new()
                    }
                }
                (Some(&(l, i, j, t)), None, _, Some(&(g, ls, rs))) => match ls {
                    Side::Cell { row, twist } if radical.generators[g].from == l && row == j => {
                        let nl = Side::Cell { row: i, twist: twist ^ t };
                        vec![(rad_index[&(g, nl, rs)], Scalar::one())]
                    }
                    _ => Vec::new(),
                },
                (None, Some(&(l, k, m, t)), Some(&(g, ls, rs)), _) => match rs {
                    Side::Cell { row, twist } if radical.generators[g].to == l && row == k => {
                        let nr = Side::Cell { row: m, twist: twist ^ t };
                        vec![(rad_index[&(g, ls, nr)], Scalar::one())]
                    }
                    _ => Vec::new(),
                },
                (None, None, Some(&(g, ls, rs)), Some(&(h, ls2, rs2))) => {
                    let (ga, gb) = (&radical.generators[g], &radical.generators[h]);
                    let contracts = ga.to == gb.from
                        && match (rs, ls2) {
                            (Side::Adjoint, Side::Adjoint) => true,
                            (Side::Cell { row: a, twist: ta }, Side::Cell { row: b, twist: tb }) => a == b && ta == tb,
                            _ => false,
                        };
                    let mut out = Vec::new();
                    if contracts {
                        if let Some(terms) = gen_products.get(&(g, h)) {
                            for (c, t) in terms {
                                out.push((rad_index[&(*t, ls, rs2)], c.clone()));
                            }
                        }
                    }
                    out.sort_by_key(|(i, _)| *i);
                    merge_duplicates(out)
                }
                _ => Vec::new(),
            };
            table[x * dim + y] = prod;
        }
    }

    let single_unit_block = p == 1 && blocks[0].size() == 1;
    let no_adjoint = radical.generators.iter().all(|g| g.from < p && g.to < p);
    let unit = (single_unit_block && no_adjoint).then(|| units[0][0]);
    let decomposition = Decomposition { blocks: blocks.to_vec(), units, roles };
    SuperAlgebra::from_table(labels, degrees, table, unit, Some(decomposition), caps)
}

fn merge_duplicates(v: SparseVec) -> SparseVec {
    Element::from_terms(v).0
}

pub fn make_matrix_superalgebra(k: usize, m: usize, caps: &Caps) -> Result<SuperAlgebra> {
    if k == 0 {
        return usage("k must be at least 1");
    }
    assemble_elementary(&[Block::Matrix { k, m }], &RadicalSpec::default(), caps)
}

pub fn make_group_matrix_superalgebra(k: usize, caps: &Caps) -> Result<SuperAlgebra> {
    if k == 0 {
        return usage("k must be at least 1");
    }
    assemble_elementary(&[Block::Group { k }], &RadicalSpec::default(), caps)
}

fn dedupe_labels(labels: &mut [String], owners: &[usize]) {
    let mut seen = HashSet::new();
    for (l, &owner) in labels.iter_mut().zip(owners) {
        if !seen.insert(l.clone()) {
            let mut candidate = format!("{l}#{}", owner + 1);
            while seen.contains(&candidate) {
                candidate.push('\'');
            }
            seen.insert(candidate.clone());
            *l = candidate;
        }
    }
}

/// `(part, old index)` for each basis element of the direct product.
fn product_order(parts: &[SuperAlgebra]) -> Vec<(usize, usize)> {
    let mut order = Vec::new();
    if parts.iter().all(|a| a.decomposition().is_some()) {
        for (q, a) in parts.iter().enumerate() {
            order.extend(a.decomposition().unwrap().semisimple_indices().into_iter().map(|i| (q, i)));
        }
        for (q, a) in parts.iter().enumerate() {
            order.extend(a.decomposition().unwrap().radical_indices().into_iter().map(|i| (q, i)));
        }
    } else {
        for (q, a) in parts.iter().enumerate() {
            order.extend((0..a.dim()).map(|i| (q, i)));
        }
    }
    order
}

/// For each factor, the product basis index of each of its basis elements,
/// matching [`direct_product`].
pub fn product_embedding(parts: &[SuperAlgebra]) -> Vec<Vec<usize>> {
    if parts.len() == 1 {
        return vec![(0..parts[0].dim()).collect()];
    }
    let mut maps: Vec<Vec<usize>> = parts.iter().map(|a| vec![0; a.dim()]).collect();
    for (n, (q, i)) in product_order(parts).into_iter().enumerate() {
        maps[q][i] = n;
    }
    maps
}

/// The direct product; decomposed factors yield a decomposed product with the
/// semisimple parts first.
pub fn direct_product(parts: &[SuperAlgebra], caps: &Caps) -> Result<SuperAlgebra> {
    if parts.is_empty() {
        return usage("direct product of an empty list");
    }
    if parts.len() == 1 {
        return Ok(parts[0].clone());
    }
    let all_decomposed = parts.iter().all(|a| a.decomposition().is_some());
    let order = product_order(parts);
    let dim = order.len();
    if dim > caps.max_dim {
        return Err(crate::error::Error::Resource(format!("dimension {dim} exceeds the cap {}", caps.max_dim)));
    }
    let new_of: HashMap<(usize, usize), usize> = order.iter().enumerate().map(|(n, &k)| (k, n)).collect();
    let block_offset: Vec<usize> = parts
        .iter()
        .scan(0, |acc, a| {
            let here = *acc;
            *acc += a.decomposition().map(|d| d.p()).unwrap_or(0);
            Some(here)
        })
        .collect();

    let mut labels: Vec<String> = Vec::with_capacity(dim);
    let mut owners = Vec::with_capacity(dim);
    for &(q, i) in &order {
        let a = &parts[q];
        let relabelled = a.decomposition().and_then(|d| match d.roles[i] {
            BasisRole::Semisimple { block } => {
                let b = d.blocks[block];
                let pos = d.units[block].iter().position(|&u| u == i)?;
                let s = b.size();
                let twisted = pos >= s * s;
                let cell = pos % (s * s);
                Some(unit_label(block + block_offset[q], cell / s, cell % s, twisted))
            }
            BasisRole::Radical { .. } => None,
        });
        labels.push(relabelled.unwrap_or_else(|| a.label(i).to_string()));
        owners.push(q);
    }
    dedupe_labels(&mut labels, &owners);
    let degrees = order.iter().map(|&(q, i)| parts[q].degree(i)).collect();
    let mut table = vec![Vec::new(); dim * dim];
    for (x, &(qx, ix)) in order.iter().enumerate() {
        for (y, &(qy, iy)) in order.iter().enumerate() {
            if qx == qy {
                table[x * dim + y] =
                    parts[qx].basis_product(ix, iy).iter().map(|(k, c)| (new_of[&(qx, *k)], c.clone())).collect();
                table[x * dim + y].sort_by_key(|(k, _)| *k);
            }
        }
    }
    let decomposition = all_decomposed.then(|| {
        let total_p: usize = parts.iter().map(|a| a.decomposition().unwrap().p()).sum();
        let mut blocks = Vec::new();
        let mut units = Vec::new();
        for (q, a) in parts.iter().enumerate() {
            let d = a.decomposition().unwrap();
            blocks.extend(d.blocks.iter().copied());
            units.extend(d.units.iter().map(|u| u.iter().map(|i| new_of[&(q, *i)]).collect::<Vec<_>>()));
        }
        let roles = order
            .iter()
            .map(|&(q, i)| {
                let d = parts[q].decomposition().unwrap();
                let shift = |loc: usize| if loc == d.p() { total_p } else { loc + block_offset[q] };
                match d.roles[i] {
                    BasisRole::Semisimple { block } => BasisRole::Semisimple { block: block + block_offset[q] },
                    BasisRole::Radical { left, right } => BasisRole::Radical { left: shift(left), right: shift(right) },
                }
            })
            .collect();
        Decomposition { blocks, units, roles }
    });
    SuperAlgebra::from_table(labels, degrees, table, None, decomposition, caps)
}

/// `A^# = A + Q·1` with a new even unit.
///
/// The decomposition is kept only for nilpotent inputs, where the new unit is
/// the single block; otherwise `1` is not a matrix unit and none is recorded.
pub fn adjoin_unit(a: &SuperAlgebra, caps: &Caps) -> Result<SuperAlgebra> {
    let n = a.dim();
    let nilpotent = a.decomposition().map(|d| d.p() == 0);
    let unit_first = nilpotent == Some(true);
    let unit_pos = if unit_first { 0 } else { n };
    let old_pos = |i: usize| if unit_first { i + 1 } else { i };
    let dim = n + 1;
    let mut label = "1".to_string();
    while a.index_of(&label).is_some() {
        label.push('\'');
    }
    let mut labels = vec![String::new(); dim];
    let mut degrees = vec![Parity::Even; dim];
    labels[unit_pos] = label;
    for i in 0..n {
        labels[old_pos(i)] = a.label(i).to_string();
        degrees[old_pos(i)] = a.degree(i);
    }
    let mut table = vec![Vec::new(); dim * dim];
    for x in 0..dim {
        for y in 0..dim {
            table[x * dim + y] = if x == unit_pos {
                vec![(y, Scalar::one())]
            } else if y == unit_pos {
                vec![(x, Scalar::one())]
            } else {
                let (ox, oy) = if unit_first { (x - 1, y - 1) } else { (x, y) };
                a.basis_product(ox, oy).iter().map(|(k, c)| (old_pos(*k), c.clone())).collect()
            };
        }
    }
    let decomposition = unit_first.then(|| {
        let d = a.decomposition().unwrap();
        let mut roles = vec![BasisRole::Semisimple { block: 0 }];
        roles.extend(d.roles.iter().map(|_| BasisRole::Radical { left: 0, right: 0 }));
        Decomposition { blocks: vec![Block::Matrix { k: 1, m: 0 }], units: vec![vec![0]], roles }
    });
    SuperAlgebra::from_table(labels, degrees, table, Some(unit_pos), decomposition, caps)
}
