//! Multilinearization and the Capelli polynomial.

use std::collections::BTreeMap;

use super::{GradedMonomial, GradedPolynomial, GradedVariable};
use crate::error::{over_cap, usage, Result};
use crate::perm::signed_permutations;
use crate::scalar::Scalar;

/// Largest Capelli order accepted (`d!` terms).
pub const CAPELLI_CAP: usize = 8;

/// Splits `f` into multihomogeneous components and fully linearizes each.
///
/// A variable of degree `d > 1` keeps its id for the first copy; the other
/// copies get fresh ids counting up from one above the largest id in `f`.
pub fn multilinearize(f: &GradedPolynomial) -> Vec<GradedPolynomial> {
    let mut next_id = f.max_id().map(|m| m + 1).unwrap_or(0);
    let mut out = Vec::new();
    for comp in f.multihomogeneous_components() {
        let first = comp.terms().next().expect("components are nonzero").0;
        let mut degrees: BTreeMap<GradedVariable, usize> = BTreeMap::new();
        for v in first.vars() {
            *degrees.entry(*v).or_default() += 1;
        }
        let mut copies: BTreeMap<GradedVariable, Vec<GradedVariable>> = BTreeMap::new();
        for (&v, &d) in &degrees {
            let mut c = vec![v];
            for _ in 1..d {
                c.push(GradedVariable::new(next_id, v.parity));
                next_id += 1;
            }
            copies.insert(v, c);
        }
        if degrees.values().all(|&d| d == 1) {
            out.push(comp);
            continue;
        }
        let perms: BTreeMap<usize, Vec<Vec<usize>>> = degrees
            .values()
            .map(|&d| (d, signed_permutations(d).into_iter().map(|(p, _)| p).collect()))
            .collect();
        let mut lin = GradedPolynomial::zero();
        for (m, c) in comp.terms() {
            let vars: Vec<GradedVariable> = degrees.keys().copied().collect();
            let choices: Vec<&Vec<Vec<usize>>> = vars.iter().map(|v| &perms[&degrees[v]]).collect();
            let mut idx = vec![0usize; vars.len()];
            loop {
                let mut seen: BTreeMap<GradedVariable, usize> = BTreeMap::new();
                let word: Vec<GradedVariable> = m
                    .vars()
                    .iter()
                    .map(|v| {
                        let k = vars.iter().position(|w| w == v).unwrap();
                        let occ = seen.entry(*v).or_default();
                        let copy = copies[v][choices[k][idx[k]][*occ]];
                        *occ += 1;
                        copy
                    })
                    .collect();
                lin.add_term(GradedMonomial::new(word), c);
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        break;
                    }
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
        out.push(lin);
    }
    out
}

/// `sum_sigma sgn(sigma) x_sigma(1) y_1 x_sigma(2) ... y_{d-1} x_sigma(d)`, all even.
///
/// `x_i` has id `i` and `y_j` has id `d + j`.
pub fn capelli(d: usize) -> Result<GradedPolynomial> {
    if d == 0 {
        return usage("the Capelli order must be positive");
    }
    if d > CAPELLI_CAP {
        return over_cap(format!("Capelli order {d} exceeds {CAPELLI_CAP}"));
    }
    let x = |i: usize| GradedVariable::even(i as u32 + 1);
    let y = |j: usize| GradedVariable::even((d + j + 1) as u32);
    let mut out = GradedPolynomial::zero();
    for (perm, odd) in signed_permutations(d) {
        let mut word = Vec::with_capacity(2 * d - 1);
        for (pos, &i) in perm.iter().enumerate() {
            if pos > 0 {
                word.push(y(pos - 1));
            }
            word.push(x(i));
        }
        let c = if odd { Scalar::from_int(-1) } else { Scalar::one() };
        out.add_term(GradedMonomial::new(word), &c);
    }
    Ok(out)
}
