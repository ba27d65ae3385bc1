//! The free Z/2-graded associative algebra over the rationals.
//!
//! Variables are `(id, parity)` pairs; monomials are nonempty words; polynomials
//! keep their terms in degree-lexicographic order with no stored zeros.

mod alternation;
mod ops;
mod text;
mod trace;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::{Parity, Scalar};

pub use alternation::{alternator, classify_type, AlternatedPolynomial, AlternatingSet, AlternationProfile, SetKind};
pub use ops::{capelli, multilinearize};
pub use text::{emit_documents, parse_document, parse_documents, parse_polynomial, PolynomialDocument};
pub use trace::{cayley_hamilton_trace_poly, TracePolynomial, TraceTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GradedVariable {
    pub id: u32,
    pub parity: Parity,
}

impl GradedVariable {
    pub fn new(id: u32, parity: Parity) -> Self {
        GradedVariable { id, parity }
    }

    pub fn even(id: u32) -> Self {
        GradedVariable::new(id, Parity::Even)
    }

    pub fn odd(id: u32) -> Self {
        GradedVariable::new(id, Parity::Odd)
    }
}

impl fmt::Display for GradedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x({},{})", self.id, self.parity.bit())
    }
}

/// A nonempty word in graded variables, ordered by length and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMonomial(Vec<GradedVariable>);

impl GradedMonomial {
    pub fn new(vars: Vec<GradedVariable>) -> Self {
        assert!(!vars.is_empty(), "monomials are nonempty");
        GradedMonomial(vars)
    }

    pub fn vars(&self) -> &[GradedVariable] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn parity(&self) -> Parity {
        self.0.iter().map(|v| v.parity).sum()
    }

    pub fn concat(&self, other: &GradedMonomial) -> GradedMonomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GradedMonomial(v)
    }

    pub fn count(&self, var: GradedVariable) -> usize {
        self.0.iter().filter(|&&v| v == var).count()
    }
}

impl Ord for GradedMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for GradedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GradedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    terms: BTreeMap<GradedMonomial, Scalar>,
}

impl GradedPolynomial {
    pub fn zero() -> Self {
        GradedPolynomial::default()
    }

    pub fn monomial(vars: Vec<GradedVariable>, coef: Scalar) -> Self {
        GradedPolynomial::from_terms([(GradedMonomial::new(vars), coef)])
    }

    pub fn var(v: GradedVariable) -> Self {
        GradedPolynomial::monomial(vec![v], Scalar::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GradedMonomial, Scalar)>) -> Self {
        let mut p = GradedPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: GradedMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GradedMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &GradedMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c);
        }
        p
    }

    pub fn sub(&self, other: &GradedPolynomial) -> GradedPolynomial {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> GradedPolynomial {
        if c.is_zero() {
            return GradedPolynomial::zero();
        }
        GradedPolynomial { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut p = GradedPolynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(a.concat(b), &(x * y));
            }
        }
        p
    }

    /// Every variable occurring in some term.
    pub fn variables(&self) -> BTreeSet<GradedVariable> {
        self.terms.keys().flat_map(|m| m.0.iter().copied()).collect()
    }

    pub fn max_id(&self) -> Option<u32> {
        self.variables().iter().map(|v| v.id).max()
    }

    /// Each term contains the same variables, each exactly once.
    pub fn is_multilinear(&self) -> bool {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return true };
        let mut base: Vec<GradedVariable> = first.0.clone();
        base.sort();
        if base.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        it.all(|m| {
            let mut v = m.0.clone();
            v.sort();
            v == base
        })
    }

    /// The sorted variable list of a multilinear polynomial.
    pub fn slot(&self) -> Vec<GradedVariable> {
        self.variables().into_iter().collect()
    }

    pub fn is_linear_in(&self, v: GradedVariable) -> bool {
        !self.terms.is_empty() && self.terms.keys().all(|m| m.count(v) == 1)
    }

    /// Parity shared by every term, `None` for mixed or zero polynomials.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Renames variables; unmapped variables are kept.
    pub fn rename(&self, map: &HashMap<GradedVariable, GradedVariable>) -> GradedPolynomial {
        GradedPolynomial::from_terms(self.terms.iter().map(|(m, c)| {
            (GradedMonomial(m.0.iter().map(|v| *map.get(v).unwrap_or(v)).collect()), c.clone())
        }))
    }

    /// Substitutes polynomials for variables; unmapped variables are kept.
    pub fn substitute(&self, map: &HashMap<GradedVariable, GradedPolynomial>) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        for (m, c) in &self.terms {
            let mut acc: Vec<(Vec<GradedVariable>, Scalar)> = vec![(Vec::new(), c.clone())];
            for v in &m.0 {
                match map.get(v) {
                    None => acc.iter_mut().for_each(|(w, _)| w.push(*v)),
                    Some(p) => {
                        let mut next = Vec::with_capacity(acc.len() * p.len());
                        for (w, x) in &acc {
                            for (pm, y) in &p.terms {
                                let mut w2 = w.clone();
                                w2.extend_from_slice(&pm.0);
                                next.push((w2, x * y));
                            }
                        }
                        acc = next;
                    }
                }
            }
            for (w, x) in acc {
                if !w.is_empty() {
                    out.add_term(GradedMonomial(w), &x);
                }
            }
        }
        out
    }

    pub fn swap(&self, a: GradedVariable, b: GradedVariable) -> GradedPolynomial {
        let map = HashMap::from([(a, b), (b, a)]);
        self.rename(&map)
    }

    /// Groups terms by the multiset of variables they contain.
    pub fn multihomogeneous_components(&self) -> Vec<GradedPolynomial> {
        let mut groups: BTreeMap<Vec<GradedVariable>, GradedPolynomial> = BTreeMap::new();
        let mut order: Vec<Vec<GradedVariable>> = Vec::new();
        for (m, c) in &self.terms {
            let mut key = m.0.clone();
            key.sort();
            let entry = groups.entry(key.clone()).or_insert_with(|| {
                order.push(key);
                GradedPolynomial::zero()
            });
            entry.add_term(m.clone(), c);
        }
        order.into_iter().map(|k| groups.remove(&k).unwrap()).collect()
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * {m}")?;
        }
        Ok(())
    }
}
