//! Finite dimensional superalgebras given by structure constants on a homogeneous basis.
//!
//! Every algebra may carry an elementary decomposition: simple graded blocks
//! (`M_{k,m}` or `M_k(Q[c])`) spanned by matrix units, plus a nilpotent graded
//! radical whose basis elements each sit in one Peirce component
//! `e_l J e_l'`. Block indices are zero based in this API; the value `p`
//! (the number of blocks) stands for the adjoint idempotent `1 - sum e_l`.

mod build;
mod spec;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{invalid, usage, Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::scalar::{Parity, Scalar};

pub use build::{
    adjoin_unit, assemble_elementary, direct_product, make_group_matrix_superalgebra,
    make_matrix_superalgebra, product_embedding, RadicalGenerator, RadicalSpec,
};
pub use build::unit_label;
pub use spec::{
    AlgebraSpec, BasisEntry, BlockSpec, ElementarySpec, ProductEntry, RadicalEntry, RadicalSpecJson, TableDecomposition,
    TableRadical, TableSpec,
};

/// A simple graded block of an elementary decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    /// `M_{k,m}`: matrices of size `k+m` with the elementary grading.
    Matrix { k: usize, m: usize },
    /// `M_k(Q[c])` with `c` central, odd and `c^2 = 1`.
    Group { k: usize },
}

impl Block {
    /// Matrix size `s_l` of the block.
    pub fn size(&self) -> usize {
        match *self {
            Block::Matrix { k, m } => k + m,
            Block::Group { k } => k,
        }
    }

    pub fn is_group(&self) -> bool {
        matches!(self, Block::Group { .. })
    }

    pub fn dim(&self) -> usize {
        let s = self.size();
        if self.is_group() {
            2 * s * s
        } else {
            s * s
        }
    }

    /// Dimensions of the even and odd parts.
    pub fn graded_dims(&self) -> (usize, usize) {
        match *self {
            Block::Matrix { k, m } => (k * k + m * m, 2 * k * m),
            Block::Group { k } => (k * k, k * k),
        }
    }

    /// Parity of the matrix unit `E_ij` (zero based), with `twisted` selecting `E_ij c`.
    pub fn unit_parity(&self, i: usize, j: usize, twisted: bool) -> Parity {
        match *self {
            Block::Matrix { k, .. } => {
                if (i < k) == (j < k) {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            }
            Block::Group { .. } => {
                if twisted {
                    Parity::Odd
                } else {
                    Parity::Even
                }
            }
        }
    }

    /// Number of matrix units in canonical order; see [`Decomposition::unit`].
    fn unit_count(&self) -> usize {
        self.dim()
    }

    /// Position of `E_ij` (or `E_ij c`) in the block's canonical unit order:
    /// row-major plain units, then row-major twisted units.
    pub fn unit_position(&self, i: usize, j: usize, twisted: bool) -> usize {
        let s = self.size();
        i * s + j + if twisted { s * s } else { 0 }
    }
}

/// The role a basis element plays in the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisRole {
    Semisimple { block: usize },
    /// A radical element lying in `e_left J e_right`.
    Radical { left: usize, right: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
    /// For each block, the basis indices of its matrix units in canonical order.
    pub units: Vec<Vec<usize>>,
    pub roles: Vec<BasisRole>,
}

impl Decomposition {
    pub fn p(&self) -> usize {
        self.blocks.len()
    }

    /// The adjoint location index.
    pub fn adjoint(&self) -> usize {
        self.blocks.len()
    }

    pub fn unit(&self, block: usize, i: usize, j: usize, twisted: bool) -> usize {
        self.units[block][self.blocks[block].unit_position(i, j, twisted)]
    }

    /// Basis indices whose sum is the block unit `e_l`.
    pub fn idempotent_indices(&self, block: usize) -> Vec<usize> {
        (0..self.blocks[block].size()).map(|i| self.unit(block, i, i, false)).collect()
    }

    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.roles.len()).filter(|&i| matches!(self.roles[i], BasisRole::Radical { .. })).collect()
    }

    pub fn semisimple_indices(&self) -> Vec<usize> {
        (0..self.roles.len()).filter(|&i| matches!(self.roles[i], BasisRole::Semisimple { .. })).collect()
    }

    pub fn is_radical(&self, i: usize) -> bool {
        matches!(self.roles[i], BasisRole::Radical { .. })
    }
}

/// An element of an algebra as sparse coordinates on its basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Element(pub SparseVec);

impl Element {
    pub fn zero() -> Self {
        Element(Vec::new())
    }

    pub fn basis(i: usize) -> Self {
        Element(vec![(i, Scalar::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc = BTreeMap::new();
        for (i, c) in terms {
            linalg::axpy(&mut acc, &c, &[(i, Scalar::one())]);
        }
        Element(linalg::from_map(acc))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.0.iter().find(|(j, _)| *j == i).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.0
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(linalg::add(&self.0, &other.0))
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element(linalg::sub(&self.0, &other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element(linalg::scale(&self.0, c))
    }

    /// The single basis index when the element is exactly one basis vector.
    pub fn as_basis(&self) -> Option<usize> {
        match self.0.as_slice() {
            [(i, c)] if c.is_one() => Some(*i),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    labels: Vec<String>,
    degrees: Vec<Parity>,
    table: Vec<SparseVec>,
    unit: Option<usize>,
    decomposition: Option<Decomposition>,
    label_index: HashMap<String, usize>,
    trace_weights: Vec<Scalar>,
}

impl SuperAlgebra {
    /// Builds and validates an algebra from a full product table.
    ///
    /// `products[i * dim + j]` is the product of basis elements `i` and `j`.
    pub fn from_table(
        labels: Vec<String>,
        degrees: Vec<Parity>,
        products: Vec<SparseVec>,
        unit: Option<usize>,
        decomposition: Option<Decomposition>,
        caps: &Caps,
    ) -> Result<SuperAlgebra> {
        let dim = labels.len();
        if dim > caps.max_dim {
            return Err(Error::Resource(format!("dimension {dim} exceeds the cap {}", caps.max_dim)));
        }
        if degrees.len() != dim || products.len() != dim * dim {
            return invalid("table size does not match the basis");
        }
        let mut label_index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return invalid(format!("duplicate basis label {l}"));
            }
        }
        let alg = SuperAlgebra {
            labels,
            degrees,
            table: products,
            unit,
            decomposition,
            label_index,
            trace_weights: Vec::new(),
        };
        alg.validate()?;
        let mut alg = alg;
        alg.trace_weights = alg.compute_trace_weights();
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn degree(&self, i: usize) -> Parity {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[Parity] {
        &self.degrees
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.unit
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.decomposition.as_ref()
    }

    pub fn require_decomposition(&self) -> Result<&Decomposition> {
        self.decomposition.as_ref().ok_or_else(|| Error::Usage("the algebra has no elementary decomposition".into()))
    }

    /// Basis indices of the given parity, in basis order.
    pub fn basis_of_parity(&self, parity: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == parity).collect()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut acc = BTreeMap::new();
        for (i, x) in &a.0 {
            for (j, y) in &b.0 {
                let p = self.basis_product(*i, *j);
                if !p.is_empty() {
                    linalg::axpy(&mut acc, &(x * y), p);
                }
            }
        }
        Element(linalg::from_map(acc))
    }

    /// The parity of a nonzero homogeneous element, `None` when mixed or zero.
    pub fn parity_of(&self, a: &Element) -> Option<Parity> {
        let mut it = a.0.iter().map(|(i, _)| self.degrees[*i]);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, a: &Element, parity: Parity) -> bool {
        a.0.iter().all(|(i, _)| self.degrees[*i] == parity)
    }

    /// A two-sided unit, as a basis element or as the sum of the block units.
    pub fn one(&self) -> Option<Element> {
        if let Some(u) = self.unit {
            return Some(Element::basis(u));
        }
        let d = self.decomposition.as_ref()?;
        let cand = Element::from_terms((0..d.p()).flat_map(|l| d.idempotent_indices(l)).map(|i| (i, Scalar::one())));
        let unit_ok = (0..self.dim()).all(|i| {
            let e = Element::basis(i);
            self.mul(&cand, &e) == e && self.mul(&e, &cand) == e
        });
        (unit_ok && self.dim() > 0).then_some(cand)
    }

    /// `e_l` for block `l`, and the adjoint idempotent is not representable.
    pub fn block_idempotent(&self, block: usize) -> Result<Element> {
        let d = self.require_decomposition()?;
        if block >= d.p() {
            return usage(format!("no block {block}"));
        }
        Ok(Element::from_terms(d.idempotent_indices(block).into_iter().map(|i| (i, Scalar::one()))))
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                for (k, _) in self.basis_product(i, j) {
                    if *k >= dim {
                        return invalid(format!("product {}·{} has an out-of-range index", self.labels[i], self.labels[j]));
                    }
                    if self.degrees[*k] != self.degrees[i] + self.degrees[j] {
                        return invalid(format!(
                            "product {}·{} leaves the graded component",
                            self.labels[i], self.labels[j]
                        ));
                    }
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                let ab = Element(self.basis_product(a, b).clone());
                for c in 0..dim {
                    let left = self.mul(&ab, &Element::basis(c));
                    let bc = Element(self.basis_product(b, c).clone());
                    let right = self.mul(&Element::basis(a), &bc);
                    if left != right {
                        return invalid(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        ));
                    }
                }
            }
        }
        if let Some(u) = self.unit {
            if u >= dim || self.degrees[u] != Parity::Even {
                return invalid("unit index is out of range or odd");
            }
            for i in 0..dim {
                let e = Element::basis(i);
                if self.mul(&Element::basis(u), &e) != e || self.mul(&e, &Element::basis(u)) != e {
                    return invalid(format!("declared unit does not fix {}", self.labels[i]));
                }
            }
        }
        if let Some(d) = &self.decomposition {
            self.validate_decomposition(d)?;
        }
        Ok(())
    }

    fn validate_decomposition(&self, d: &Decomposition) -> Result<()> {
        let dim = self.dim();
        if d.roles.len() != dim || d.units.len() != d.p() {
            return invalid("decomposition does not cover the basis");
        }
        for (l, block) in d.blocks.iter().enumerate() {
            if d.units[l].len() != block.unit_count() {
                return invalid(format!("block {} has the wrong number of units", l + 1));
            }
            for &u in &d.units[l] {
                if d.roles[u] != (BasisRole::Semisimple { block: l }) {
                    return invalid(format!("unit {} is not marked as part of block {}", self.labels[u], l + 1));
                }
            }
            let s = block.size();
            let twists: &[bool] = if block.is_group() { &[false, true] } else { &[false] };
            for i in 0..s {
                for j in 0..s {
                    for &t1 in twists {
                        let a = d.unit(l, i, j, t1);
                        if self.degrees[a] != block.unit_parity(i, j, t1) {
                            return invalid(format!("{} has the wrong parity for its block", self.labels[a]));
                        }
                        for k in 0..s {
                            for m in 0..s {
                                for &t2 in twists {
                                    let b = d.unit(l, k, m, t2);
                                    let expect = if j == k {
                                        Element::basis(d.unit(l, i, m, t1 ^ t2))
                                    } else {
                                        Element::zero()
                                    };
                                    if Element(self.basis_product(a, b).clone()) != expect {
                                        return invalid(format!(
                                            "{}·{} violates the matrix unit relations",
                                            self.labels[a], self.labels[b]
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let counted: usize = d.units.iter().map(|u| u.len()).sum();
        let semis = d.semisimple_indices().len();
        if counted != semis {
            return invalid("semisimple basis elements outside every block");
        }
        let p = d.p();
        let idem: Vec<Element> = (0..p)
            .map(|l| Element::from_terms(d.idempotent_indices(l).into_iter().map(|i| (i, Scalar::one()))))
            .collect();
        for i in 0..dim {
            let e = Element::basis(i);
            for (l, el) in idem.iter().enumerate() {
                let (want_left, want_right) = match d.roles[i] {
                    BasisRole::Semisimple { block } => (block == l, block == l),
                    BasisRole::Radical { left, right } => {
                        if left > p || right > p {
                            return invalid(format!("{} has an invalid Peirce location", self.labels[i]));
                        }
                        (left == l, right == l)
                    }
                };
                let lhs = self.mul(el, &e);
                let rhs = self.mul(&e, el);
                let ok_l = if want_left { lhs == e } else { lhs.is_zero() };
                let ok_r = if want_right { rhs == e } else { rhs.is_zero() };
                if !ok_l || !ok_r {
                    return invalid(format!(
                        "{} does not sit in its declared Peirce component",
                        self.labels[i]
                    ));
                }
            }
        }
        let radical = d.radical_indices();
        for &r in &radical {
            for b in 0..dim {
                for prod in [self.basis_product(r, b), self.basis_product(b, r)] {
                    if prod.iter().any(|(k, _)| !d.is_radical(*k)) {
                        return invalid(format!("{} does not generate a two-sided ideal", self.labels[r]));
                    }
                }
            }
        }
        for a in d.semisimple_indices() {
            for b in d.semisimple_indices() {
                if self.basis_product(a, b).iter().any(|(k, _)| d.is_radical(*k)) {
                    return invalid("the semisimple part is not a subalgebra");
                }
            }
        }
        nilpotency_degree(self, &radical)?;
        Ok(())
    }

    /// Weights `w_i` with `tr(x) = sum_i x_i w_i` for the even trace.
    fn compute_trace_weights(&self) -> Vec<Scalar> {
        let mut w = vec![Scalar::zero(); self.dim()];
        let Some(d) = &self.decomposition else { return w };
        let even_semis: Vec<usize> =
            d.semisimple_indices().into_iter().filter(|&i| self.degrees[i] == Parity::Even).collect();
        for &i in &even_semis {
            let mut t = Scalar::zero();
            for &j in &even_semis {
                if let Some((_, c)) = self.basis_product(i, j).iter().find(|(k, _)| *k == j) {
                    t += c;
                }
            }
            w[i] = t;
        }
        w
    }

    /// Trace of the left regular action of the even semisimple part on `B_0`.
    pub fn trace_even(&self, x: &Element) -> Result<Scalar> {
        self.require_decomposition()?;
        if !self.is_homogeneous_of(x, Parity::Even) {
            return usage("the trace is only defined on even elements");
        }
        Ok(x.0.iter().map(|(i, c)| c * &self.trace_weights[*i]).sum())
    }

    pub fn radical_nilpotency_degree(&self) -> Result<usize> {
        let d = self.require_decomposition()?;
        nilpotency_degree(self, &d.radical_indices())
    }

    pub fn kemer_parameters(&self) -> Result<KemerParameters> {
        let d = self.require_decomposition()?;
        let mut dims = (0, 0);
        for i in d.semisimple_indices() {
            match self.degrees[i] {
                Parity::Even => dims.0 += 1,
                Parity::Odd => dims.1 += 1,
            }
        }
        let nd = self.radical_nilpotency_degree()?;
        Ok(KemerParameters { beta: dims, gamma: nd, radical_dim: d.radical_indices().len(), reduced_flag: false })
    }

    /// `sum_i x_i e_i` as labelled coefficients.
    pub fn describe(&self, x: &Element) -> BTreeMap<String, Scalar> {
        x.0.iter().map(|(i, c)| (self.labels[*i].clone(), c.clone())).collect()
    }

    /// Quotient by a graded two-sided ideal given by a spanning set.
    ///
    /// The decomposition survives when the ideal lies inside the radical.
    pub fn quotient(&self, ideal: &[Element], caps: &Caps) -> Result<SuperAlgebra> {
        let dim = self.dim();
        let mut ech = Echelon::new(dim);
        for v in ideal {
            ech.insert(&v.0);
            for par in [Parity::Even, Parity::Odd] {
                let comp: SparseVec = v.0.iter().filter(|(i, _)| self.degrees[*i] == par).cloned().collect();
                ech.insert(&comp);
            }
        }
        if ech.rank() != span_rank(dim, ideal) {
            return usage("the ideal is not graded");
        }
        let rows = ech.rref();
        for r in &rows {
            for b in 0..dim {
                let e = Element::basis(b);
                let rr = Element(r.clone());
                if !ech.contains(&self.mul(&e, &rr).0) || !ech.contains(&self.mul(&rr, &e).0) {
                    return usage("the spanning set does not generate a two-sided ideal");
                }
            }
        }
        let pivots: std::collections::HashSet<usize> = rows.iter().map(|r| r[0].0).collect();
        let keep: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
        let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let reduce = |v: &SparseVec| -> SparseVec {
            let mut work = linalg::to_map(v);
            for r in &rows {
                if let Some(c) = work.get(&r[0].0).cloned() {
                    linalg::axpy(&mut work, &-&c, r);
                }
            }
            linalg::from_map(work).into_iter().map(|(i, c)| (new_index[&i], c)).collect()
        };
        let n = keep.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &keep {
            for &b in &keep {
                table.push(reduce(self.basis_product(a, b)));
            }
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let degrees = keep.iter().map(|&i| self.degrees[i]).collect();
        let unit = self.unit.and_then(|u| new_index.get(&u).copied());
        let decomposition = self.decomposition.as_ref().and_then(|d| {
            let inside_radical = rows.iter().all(|r| r.iter().all(|(i, _)| d.is_radical(*i)));
            inside_radical.then(|| Decomposition {
                blocks: d.blocks.clone(),
                units: d.units.iter().map(|u| u.iter().map(|i| new_index[i]).collect()).collect(),
                roles: keep.iter().map(|&i| d.roles[i]).collect(),
            })
        });
        SuperAlgebra::from_table(labels, degrees, table, unit, decomposition, caps)
    }
}

fn span_rank(dim: usize, vs: &[Element]) -> usize {
    let mut e = Echelon::new(dim);
    for v in vs {
        e.insert(&v.0);
    }
    e.rank()
}

/// Least `s` with `J^s = 0` for the span `J` of the given basis indices.
fn nilpotency_degree(alg: &SuperAlgebra, radical: &[usize]) -> Result<usize> {
    let dim = alg.dim();
    let mut power: Vec<SparseVec> = radical.iter().map(|&i| vec![(i, Scalar::one())]).collect();
    let mut degree = 1;
    let mut last_rank = power.len();
    while !power.is_empty() {
        let mut ech = Echelon::new(dim);
        for v in &power {
            for &r in radical {
                let prod = alg.mul(&Element(v.clone()), &Element::basis(r));
                ech.insert(&prod.0);
            }
        }
        if !ech.rows().is_empty() && ech.rank() >= last_rank {
            return invalid("the radical is not nilpotent");
        }
        last_rank = ech.rank();
        power = ech.rows().to_vec();
        degree += 1;
    }
    Ok(degree)
}

/// `par = (dims; nd)` together with `dim J`, ordered lexicographically as `cpar`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KemerParameters {
    pub beta: (usize, usize),
    pub gamma: usize,
    pub radical_dim: usize,
    pub reduced_flag: bool,
}

impl KemerParameters {
    pub fn par(&self) -> ((usize, usize), usize) {
        (self.beta, self.gamma)
    }

    pub fn cpar(&self) -> (usize, usize, usize, usize) {
        (self.beta.0, self.beta.1, self.gamma, self.radical_dim)
    }
}
