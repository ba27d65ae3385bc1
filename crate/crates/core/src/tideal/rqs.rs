//! `R_{q,s}(B, S)`: words `b_0 x_1 b_1 ... x_k b_k` with `k < s` over a
//! semisimple `B`, modulo the verbal ideal of `S`.
//!
//! The coefficients `b_j` run over the basis of `B` together with the
//! complement idempotent `1 - 1_B` of `B^#`, so that every word sits in one
//! Peirce component.

use std::collections::HashMap;

use super::verbal::verbal_image;
use crate::algebra::{BasisRole, Decomposition, Element, SuperAlgebra};
use crate::caps::Caps;
use crate::error::{over_cap, usage, Result};
use crate::eval::is_graded_identity;
use crate::linalg::SparseVec;
use crate::poly::{multilinearize, GradedPolynomial, GradedVariable};
use crate::scalar::{Parity, Scalar};

/// Label of the complement idempotent `1 - 1_B`.
const COMPLEMENT: &str = "1#";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedAlgebraWord {
    /// `k + 1` coefficients; `None` is the complement idempotent.
    pub coefficients: Vec<Option<usize>>,
    pub letters: Vec<GradedVariable>,
}

impl TruncatedAlgebraWord {
    pub fn parity(&self, b: &SuperAlgebra) -> Parity {
        let coefs: Parity = self.coefficients.iter().flatten().map(|&i| b.degree(i)).sum();
        coefs + self.letters.iter().map(|v| v.parity).sum()
    }

    pub fn label(&self, b: &SuperAlgebra) -> String {
        let coef = |c: &Option<usize>| c.map_or(COMPLEMENT.to_string(), |i| b.label(i).to_string());
        let mut parts = vec![coef(&self.coefficients[0])];
        for (x, c) in self.letters.iter().zip(&self.coefficients[1..]) {
            parts.push(x.to_string());
            parts.push(coef(c));
        }
        parts.join(" ")
    }
}

/// The basis of `B + (X) / (X)^s`: the basis of `B`, then words by length.
pub fn truncated_words(b: &SuperAlgebra, letters: &[GradedVariable], s: usize) -> Vec<TruncatedAlgebraWord> {
    let mut out: Vec<TruncatedAlgebraWord> =
        (0..b.dim()).map(|i| TruncatedAlgebraWord { coefficients: vec![Some(i)], letters: Vec::new() }).collect();
    let coefs: Vec<Option<usize>> = std::iter::once(None).chain((0..b.dim()).map(Some)).collect();
    let mut layer: Vec<TruncatedAlgebraWord> =
        coefs.iter().map(|&c| TruncatedAlgebraWord { coefficients: vec![c], letters: Vec::new() }).collect();
    for _ in 1..s {
        let mut next = Vec::with_capacity(layer.len() * letters.len() * coefs.len());
        for w in &layer {
            for &x in letters {
                for &c in &coefs {
                    let mut n = w.clone();
                    n.letters.push(x);
                    n.coefficients.push(c);
                    next.push(n);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn word_count(dim: usize, letters: usize, s: usize) -> u128 {
    let mut total = dim as u128;
    let mut layer = (dim + 1) as u128;
    for _ in 1..s {
        layer = layer.saturating_mul(letters as u128).saturating_mul((dim + 1) as u128);
        total = total.saturating_add(layer);
    }
    total
}

fn truncated_algebra(b: &SuperAlgebra, letters: &[GradedVariable], s: usize, caps: &Caps) -> Result<SuperAlgebra> {
    let d = b.require_decomposition()?;
    if !d.radical_indices().is_empty() {
        return usage("B must be semisimple");
    }
    let count = word_count(b.dim(), letters.len(), s);
    if count > caps.max_words as u128 {
        return over_cap(format!("{count} truncated words exceed the cap {}", caps.max_words));
    }
    let words = truncated_words(b, letters, s);
    let index: HashMap<&TruncatedAlgebraWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = words.len();
    let mut table: Vec<SparseVec> = Vec::with_capacity(n * n);
    for u in &words {
        for v in &words {
            if u.letters.len() + v.letters.len() >= s {
                table.push(Vec::new());
                continue;
            }
            let joint: Vec<(Option<usize>, Scalar)> =
                match (u.coefficients.last().unwrap(), v.coefficients[0]) {
                    (None, None) => vec![(None, Scalar::one())],
                    (Some(i), Some(j)) => b.basis_product(*i, j).iter().map(|(t, c)| (Some(*t), c.clone())).collect(),
                    _ => Vec::new(),
                };
            let mut prod: Vec<(usize, Scalar)> = joint
                .into_iter()
                .map(|(mid, c)| {
                    let mut coefficients = u.coefficients[..u.coefficients.len() - 1].to_vec();
                    coefficients.push(mid);
                    coefficients.extend_from_slice(&v.coefficients[1..]);
                    let mut w_letters = u.letters.clone();
                    w_letters.extend_from_slice(&v.letters);
                    (index[&TruncatedAlgebraWord { coefficients, letters: w_letters }], c)
                })
                .collect();
            prod.sort_by_key(|(i, _)| *i);
            table.push(prod);
        }
    }
    let p = d.p();
    let location = |c: Option<usize>| match c {
        None => p,
        Some(i) => match d.roles[i] {
            BasisRole::Semisimple { block } => block,
            BasisRole::Radical { .. } => unreachable!("B is semisimple"),
        },
    };
    let roles = words
        .iter()
        .map(|w| {
            if w.letters.is_empty() {
                d.roles[w.coefficients[0].unwrap()]
            } else {
                BasisRole::Radical { left: location(w.coefficients[0]), right: location(*w.coefficients.last().unwrap()) }
            }
        })
        .collect();
    let decomposition = Decomposition { blocks: d.blocks.clone(), units: d.units.clone(), roles };
    let labels = words.iter().map(|w| w.label(b)).collect();
    let degrees = words.iter().map(|w| w.parity(b)).collect();
    let wide = Caps { max_dim: caps.max_dim.max(caps.max_words), ..caps.clone() };
    SuperAlgebra::from_table(labels, degrees, table, None, Some(decomposition), &wide)
}

/// `R_{q,s}(B, S)` over the letters `x_1..x_q` even and `x_(q+1)..x_(2q)` odd.
pub fn build_rqs(b: &SuperAlgebra, generators: &[GradedPolynomial], q: usize, s: usize, caps: &Caps) -> Result<SuperAlgebra> {
    if q == 0 {
        return usage("q must be positive");
    }
    let letters: Vec<GradedVariable> = (1..=q as u32)
        .map(GradedVariable::even)
        .chain((q as u32 + 1..=2 * q as u32).map(GradedVariable::odd))
        .collect();
    build_rqs_over(b, generators, &letters, s, caps)
}

/// As [`build_rqs`] over an arbitrary alphabet of graded letters.
///
/// Every generator must be an identity of `B`; the verbal ideal then lies in
/// the word span and `B` survives as the semisimple part.
pub fn build_rqs_over(
    b: &SuperAlgebra,
    generators: &[GradedPolynomial],
    letters: &[GradedVariable],
    s: usize,
    caps: &Caps,
) -> Result<SuperAlgebra> {
    if s == 0 {
        return usage("s must be positive");
    }
    let mut sorted = letters.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return usage("letters must be distinct");
    }
    let t = truncated_algebra(b, letters, s, caps)?;
    for g in generators {
        for lin in multilinearize(g) {
            if !is_graded_identity(b, &lin, caps)? {
                return usage(format!("the generator {g} is not an identity of B"));
            }
        }
    }
    let ideal: Vec<Element> = verbal_image(&t, generators, caps)?;
    if ideal.is_empty() {
        return Ok(t);
    }
    let wide = Caps { max_dim: caps.max_dim.max(caps.max_words), ..caps.clone() };
    t.quotient(&ideal, &wide)
}
