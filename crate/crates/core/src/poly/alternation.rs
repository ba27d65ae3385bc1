//! Alternators, lazily alternated polynomials and polynomial types.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{GradedPolynomial, GradedVariable};
use crate::error::{usage, Result};
use crate::perm::signed_permutations;
use crate::scalar::{Parity, Scalar};

fn check_alternating_set(f: &GradedPolynomial, ys: &[GradedVariable]) -> Result<()> {
    if let Some(first) = ys.first() {
        if ys.iter().any(|y| y.parity != first.parity) {
            return usage("alternating variables must share one parity");
        }
    }
    let distinct: HashSet<_> = ys.iter().collect();
    if distinct.len() != ys.len() {
        return usage("alternating variables must be distinct");
    }
    if let Some(y) = ys.iter().find(|&&y| !f.is_linear_in(y)) {
        return usage(format!("the polynomial is not linear in {y}"));
    }
    Ok(())
}

/// `sum_sigma sgn(sigma) f(y_sigma(1), ..., y_sigma(n))`.
pub fn alternator(f: &GradedPolynomial, ys: &[GradedVariable]) -> Result<GradedPolynomial> {
    check_alternating_set(f, ys)?;
    if ys.len() <= 1 {
        return Ok(f.clone());
    }
    let mut out = GradedPolynomial::zero();
    for (perm, odd) in signed_permutations(ys.len()) {
        let map: HashMap<_, _> = ys.iter().zip(&perm).map(|(&y, &j)| (y, ys[j])).collect();
        let sign = if odd { Scalar::from_int(-1) } else { Scalar::one() };
        for (m, c) in f.rename(&map).terms() {
            out.add_term(m.clone(), &(c * &sign));
        }
    }
    Ok(out)
}

/// A core polynomial with alternators applied to disjoint single-parity sets,
/// kept unexpanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatedPolynomial {
    core: GradedPolynomial,
    sets: Vec<Vec<GradedVariable>>,
}

impl AlternatedPolynomial {
    pub fn new(core: GradedPolynomial, sets: Vec<Vec<GradedVariable>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &sets {
            check_alternating_set(&core, s)?;
            for v in s {
                if !seen.insert(*v) {
                    return usage(format!("{v} appears in two alternating sets"));
                }
            }
        }
        let sets = sets.into_iter().filter(|s| s.len() > 1).collect();
        Ok(AlternatedPolynomial { core, sets })
    }

    pub fn plain(core: GradedPolynomial) -> Self {
        AlternatedPolynomial { core, sets: Vec::new() }
    }

    pub fn core(&self) -> &GradedPolynomial {
        &self.core
    }

    pub fn sets(&self) -> &[Vec<GradedVariable>] {
        &self.sets
    }

    /// Number of terms the expansion may have before cancellation.
    pub fn expansion_size(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        self.sets.iter().map(|s| fact(s.len())).product::<u128>() * self.core.len() as u128
    }

    pub fn expand(&self) -> GradedPolynomial {
        let mut p = self.core.clone();
        for s in &self.sets {
            p = alternator(&p, s).expect("validated on construction");
        }
        p
    }

    /// Structural type check: the core is linear in every profile variable and
    /// each parity part of every profile set lies inside one alternated set.
    pub fn has_type(&self, profile: &AlternationProfile) -> bool {
        for set in profile.sets() {
            if set.vars.iter().any(|&v| !self.core.is_linear_in(v)) {
                return false;
            }
            for par in [Parity::Even, Parity::Odd] {
                let part = set.part(par);
                if part.len() > 1 && !self.sets.iter().any(|s| part.iter().all(|v| s.contains(v))) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    /// Parity counts lexicographically larger than the reference pair.
    Strict,
    /// Parity counts equal to the reference pair.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlternatingSet {
    pub vars: Vec<GradedVariable>,
    pub kind: SetKind,
}

impl AlternatingSet {
    pub fn counts(&self) -> (usize, usize) {
        (self.part(Parity::Even).len(), self.part(Parity::Odd).len())
    }

    pub fn part(&self, parity: Parity) -> Vec<GradedVariable> {
        self.vars.iter().copied().filter(|v| v.parity == parity).collect()
    }
}

/// Type data `(t; s; mu)`: `s` strict sets and `mu` exact sets over the pair `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlternationProfile {
    t: (usize, usize),
    sets: Vec<AlternatingSet>,
}

impl AlternationProfile {
    pub fn new(t: (usize, usize), sets: Vec<AlternatingSet>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &sets {
            for v in &s.vars {
                if !seen.insert(*v) {
                    return usage(format!("{v} appears twice in the profile"));
                }
            }
            let c = s.counts();
            match s.kind {
                SetKind::Strict if c <= t => {
                    return usage(format!("strict set with counts {c:?} is not larger than {t:?}"));
                }
                SetKind::Exact if c != t => {
                    return usage(format!("exact set with counts {c:?} differs from {t:?}"));
                }
                _ => {}
            }
        }
        Ok(AlternationProfile { t, sets })
    }

    /// Strict sets first, then exact sets, in the given orders.
    pub fn with_sets(t: (usize, usize), strict: Vec<Vec<GradedVariable>>, exact: Vec<Vec<GradedVariable>>) -> Result<Self> {
        let sets = strict
            .into_iter()
            .map(|vars| AlternatingSet { vars, kind: SetKind::Strict })
            .chain(exact.into_iter().map(|vars| AlternatingSet { vars, kind: SetKind::Exact }))
            .collect();
        AlternationProfile::new(t, sets)
    }

    pub fn t(&self) -> (usize, usize) {
        self.t
    }

    pub fn sets(&self) -> &[AlternatingSet] {
        &self.sets
    }

    pub fn s(&self) -> usize {
        self.sets.iter().filter(|s| s.kind == SetKind::Strict).count()
    }

    pub fn mu(&self) -> usize {
        self.sets.iter().filter(|s| s.kind == SetKind::Exact).count()
    }

    /// The single-parity parts with at least two variables.
    pub fn alternating_parts(&self) -> Vec<Vec<GradedVariable>> {
        self.sets
            .iter()
            .flat_map(|s| [s.part(Parity::Even), s.part(Parity::Odd)])
            .filter(|p| p.len() > 1)
            .collect()
    }
}

/// True iff `f` is linear in every profile variable and changes sign under
/// every adjacent transposition inside each parity part of each set.
pub fn classify_type(f: &GradedPolynomial, profile: &AlternationProfile) -> bool {
    let neg = f.scale(&Scalar::from_int(-1));
    for set in profile.sets() {
        if set.vars.iter().any(|&v| !f.is_linear_in(v)) {
            return false;
        }
        for par in [Parity::Even, Parity::Odd] {
            let part = set.part(par);
            for w in part.windows(2) {
                if f.swap(w[0], w[1]) != neg {
                    return false;
                }
            }
        }
    }
    true
}
