//! Sparse exact linear algebra: incremental row echelon forms, reduced forms and null spaces.

use std::collections::{BTreeMap, HashMap};

use crate::scalar::Scalar;

/// A sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn from_map(map: BTreeMap<usize, Scalar>) -> SparseVec {
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn to_map(v: &[(usize, Scalar)]) -> BTreeMap<usize, Scalar> {
    v.iter().cloned().collect()
}

/// `acc += coef * v`, dropping cancelled entries.
pub fn axpy(acc: &mut BTreeMap<usize, Scalar>, coef: &Scalar, v: &[(usize, Scalar)]) {
    if coef.is_zero() {
        return;
    }
    for (i, c) in v {
        let term = coef * c;
        match acc.get_mut(i) {
            Some(x) => {
                *x += &term;
                if x.is_zero() {
                    acc.remove(i);
                }
            }
            None => {
                acc.insert(*i, term);
            }
        }
    }
}

pub fn scale(v: &[(usize, Scalar)], coef: &Scalar) -> SparseVec {
    if coef.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, c)| (*i, c * coef)).collect()
}

pub fn add(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
    let mut acc = to_map(a);
    axpy(&mut acc, &Scalar::one(), b);
    from_map(acc)
}

pub fn sub(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
    let mut acc = to_map(a);
    axpy(&mut acc, &Scalar::from_int(-1), b);
    from_map(acc)
}

/// An incrementally built row echelon basis of a subspace of `Q^ncols`.
///
/// Rows are kept with leading coefficient one. With tracking enabled every
/// stored row also carries its expression in terms of the inserted vectors,
/// numbered in insertion order.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

pub struct Reduction {
    pub remainder: SparseVec,
    /// Coefficients `c_i` with `v - remainder = sum c_i * inserted_i` (tracking only).
    pub combination: Option<SparseVec>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: HashMap::new(), combos: None, inserted: 0 }
    }

    pub fn with_tracking(ncols: usize) -> Self {
        Echelon { combos: Some(Vec::new()), ..Echelon::new(ncols) }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn reduce(&self, v: &[(usize, Scalar)]) -> Reduction {
        let mut work = to_map(v);
        let mut combo: Option<BTreeMap<usize, Scalar>> = self.combos.as_ref().map(|_| BTreeMap::new());
        let mut cursor = 0usize;
        loop {
            let hit = work
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coef)) = hit else { break };
            let r = self.pivots[&col];
            axpy(&mut work, &-&coef, &self.rows[r]);
            if let (Some(acc), Some(combos)) = (combo.as_mut(), self.combos.as_ref()) {
                axpy(acc, &coef, &combos[r]);
            }
            cursor = col + 1;
        }
        Reduction { remainder: from_map(work), combination: combo.map(from_map) }
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).remainder.is_empty()
    }

    /// Expresses `v` through the inserted vectors, if it lies in the span.
    pub fn express(&self, v: &[(usize, Scalar)]) -> Option<SparseVec> {
        let red = self.reduce(v);
        if red.remainder.is_empty() {
            red.combination
        } else {
            None
        }
    }

    /// Adds a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        debug_assert!(v.iter().all(|(i, _)| *i < self.ncols));
        let id = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        if red.remainder.is_empty() {
            return false;
        }
        let (lead_col, lead) = red.remainder[0].clone();
        let inv = lead.inv().expect("nonzero leading entry");
        let row = scale(&red.remainder, &inv);
        if let Some(combos) = self.combos.as_mut() {
            let mut c = BTreeMap::new();
            c.insert(id, Scalar::one());
            axpy(&mut c, &Scalar::from_int(-1), &red.combination.unwrap_or_default());
            combos.push(scale(&from_map(c), &inv));
        }
        self.pivots.insert(lead_col, self.rows.len());
        self.rows.push(row);
        true
    }

    /// The reduced row echelon form, rows sorted by pivot column.
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let pivot_cols: Vec<usize> = order.iter().map(|&r| self.rows[r][0].0).collect();
        let mut out: Vec<SparseVec> = vec![Vec::new(); order.len()];
        for k in (0..order.len()).rev() {
            let mut work = to_map(&self.rows[order[k]]);
            for j in k + 1..order.len() {
                if let Some(c) = work.get(&pivot_cols[j]).cloned() {
                    axpy(&mut work, &-&c, &out[j]);
                }
            }
            out[k] = from_map(work);
        }
        out
    }

    /// A basis of `{x : r . x = 0 for every row r}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let rref = self.rref();
        let pivot_cols: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
        let is_pivot: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !is_pivot.contains(c)) {
            let mut v = BTreeMap::new();
            v.insert(free, Scalar::one());
            for (row, &p) in rref.iter().zip(&pivot_cols) {
                if let Some((_, c)) = row.iter().find(|(i, _)| *i == free) {
                    v.insert(p, -c);
                }
            }
            out.push(from_map(v));
        }
        out
    }
}

/// Canonical reduced form of the span of `vectors`.
pub fn span_rref(ncols: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(&v);
        if e.is_full() {
            break;
        }
    }
    e.rref()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, Scalar::from_int(c))).collect()
    }

    fn dot(a: &SparseVec, b: &SparseVec) -> Scalar {
        let bm = to_map(b);
        a.iter().filter_map(|(i, c)| bm.get(i).map(|d| c * d)).sum()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[(0, 1), (1, 1)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (2, -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 2), (1, 3), (2, 1)])));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn rref_is_canonical() {
        let a = span_rref(3, [v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)])]);
        let b = span_rref(3, [v(&[(0, 1), (2, -1)]), v(&[(0, 2), (1, 3), (2, 1)])]);
        assert_eq!(a, b);
    }

    #[test]
    fn nullspace_is_orthogonal_complement() {
        let mut e = Echelon::new(4);
        e.insert(&v(&[(0, 1), (1, 2), (3, -1)]));
        e.insert(&v(&[(1, 1), (2, 1)]));
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for n in &ns {
            for r in e.rows() {
                assert!(dot(r, n).is_zero());
            }
        }
    }

    #[test]
    fn tracked_combination_reproduces_vector() {
        let inputs = [v(&[(0, 1), (1, 1)]), v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 2), (2, -3)])];
        let mut e = Echelon::with_tracking(3);
        for x in &inputs {
            e.insert(x);
        }
        let target = v(&[(0, 5), (1, 1), (2, -2)]);
        let combo = e.express(&target).expect("in span");
        let mut acc = BTreeMap::new();
        for (id, c) in &combo {
            axpy(&mut acc, c, &inputs[*id]);
        }
        assert_eq!(from_map(acc), target);
    }
}
