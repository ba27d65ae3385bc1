//! Multilinear slots of graded T-ideals: consequence spans, membership,
//! verbal ideals of finite dimensional algebras and the truncated
//! relatively free construction `R_{q,s}`.

mod rqs;
mod verbal;

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{over_cap, usage, Result};
use crate::eval::slot_monomials;
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{multilinearize, GradedMonomial, GradedPolynomial, GradedVariable};
use crate::scalar::{Parity, Scalar};

pub use rqs::{build_rqs, build_rqs_over, truncated_words, TruncatedAlgebraWord};
pub use verbal::{verbal_closure, verbal_image};

/// A set of distinct variables together with the basis of all their
/// multilinear monomials (see [`slot_monomials`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultidegreeSlot {
    variables: Vec<GradedVariable>,
    monomials: Vec<GradedMonomial>,
    columns: HashMap<Vec<GradedVariable>, usize>,
}

impl MultidegreeSlot {
    pub fn new(variables: Vec<GradedVariable>) -> Result<MultidegreeSlot> {
        let mut sorted = variables.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return usage("slot variables must be distinct");
        }
        let monomials = slot_monomials(&variables);
        let columns = monomials.iter().enumerate().map(|(i, m)| (m.vars().to_vec(), i)).collect();
        Ok(MultidegreeSlot { variables, monomials, columns })
    }

    /// The slot of a multilinear polynomial.
    pub fn of(f: &GradedPolynomial) -> Result<MultidegreeSlot> {
        if !f.is_multilinear() {
            return usage("the polynomial is not multilinear");
        }
        MultidegreeSlot::new(f.slot())
    }

    pub fn variables(&self) -> &[GradedVariable] {
        &self.variables
    }

    pub fn degree(&self) -> usize {
        self.variables.len()
    }

    pub fn monomials(&self) -> &[GradedMonomial] {
        &self.monomials
    }

    pub fn column(&self, word: &[GradedVariable]) -> Option<usize> {
        self.columns.get(word).copied()
    }

    /// Coordinates over [`MultidegreeSlot::monomials`]; fails if `f` leaves the slot.
    pub fn coordinates(&self, f: &GradedPolynomial) -> Result<SparseVec> {
        let mut v = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            match self.column(m.vars()) {
                Some(i) => v.push((i, c.clone())),
                None => return usage(format!("the monomial {m} is not multilinear in the slot")),
            }
        }
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    pub fn polynomial(&self, v: &[(usize, Scalar)]) -> GradedPolynomial {
        GradedPolynomial::from_terms(v.iter().map(|(i, c)| (self.monomials[*i].clone(), c.clone())))
    }

    fn check_cap(&self, caps: &Caps) -> Result<()> {
        if self.degree() > caps.max_degree {
            return over_cap(format!("slot degree {} exceeds the cap {}", self.degree(), caps.max_degree));
        }
        Ok(())
    }
}

/// One spanning element `v g~(u_1, ..., u_k) w` of a consequence span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsequenceRow {
    /// Index into the generator list.
    pub generator: usize,
    /// Index into the multilinearizations of that generator.
    pub linearization: usize,
    pub left: Vec<GradedVariable>,
    /// The monomial substituted for each variable of the linearization, in
    /// increasing variable order.
    pub arguments: Vec<Vec<GradedVariable>>,
    pub right: Vec<GradedVariable>,
}

impl ConsequenceRow {
    pub fn polynomial(&self, generators: &[GradedPolynomial]) -> GradedPolynomial {
        let g = &multilinearize(&generators[self.generator])[self.linearization];
        let map: HashMap<GradedVariable, GradedPolynomial> = g
            .slot()
            .into_iter()
            .zip(&self.arguments)
            .map(|(y, u)| (y, GradedPolynomial::monomial(u.clone(), Scalar::one())))
            .collect();
        let mut out = g.substitute(&map);
        if !self.left.is_empty() {
            out = GradedPolynomial::monomial(self.left.clone(), Scalar::one()).mul(&out);
        }
        if !self.right.is_empty() {
            out = out.mul(&GradedPolynomial::monomial(self.right.clone(), Scalar::one()));
        }
        out
    }
}

/// `f = sum_i coefficient_i * row_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub terms: Vec<(Scalar, ConsequenceRow)>,
}

impl MembershipCertificate {
    pub fn polynomial(&self, generators: &[GradedPolynomial]) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        for (c, row) in &self.terms {
            out = out.add(&row.polynomial(generators).scale(c));
        }
        out
    }

    pub fn certifies(&self, f: &GradedPolynomial, generators: &[GradedPolynomial]) -> bool {
        self.polynomial(generators) == *f
    }
}

/// The multilinear component of `T[generators]` in one slot.
#[derive(Clone, Debug)]
pub struct ConsequenceSpan {
    pub slot: MultidegreeSlot,
    pub generators: Vec<GradedPolynomial>,
    /// Reduced row echelon basis over the slot monomials.
    pub basis: Vec<SparseVec>,
    /// Independent spanning elements, in insertion order.
    rows: Vec<(ConsequenceRow, SparseVec)>,
}

impl ConsequenceSpan {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &GradedPolynomial) -> Result<bool> {
        let v = self.slot.coordinates(f)?;
        let mut e = Echelon::new(self.slot.monomials().len());
        for r in &self.basis {
            e.insert(r);
        }
        Ok(e.contains(&v))
    }

    /// A combination of spanning elements equal to `f`, if `f` lies in the span.
    pub fn express(&self, f: &GradedPolynomial) -> Result<Option<MembershipCertificate>> {
        let v = self.slot.coordinates(f)?;
        let mut e = Echelon::with_tracking(self.slot.monomials().len());
        for (_, r) in &self.rows {
            e.insert(r);
        }
        Ok(e.express(&v).map(|combo| MembershipCertificate {
            terms: combo.into_iter().map(|(i, c)| (c, self.rows[i].0.clone())).collect(),
        }))
    }

    pub fn independent_rows(&self) -> impl Iterator<Item = &ConsequenceRow> {
        self.rows.iter().map(|(r, _)| r)
    }
}

/// Ways to cut `n` letters into `v | u_1 | ... | u_k | w` with every `u_i` nonempty:
/// the `k + 1` cut positions `c_0 < ... < c_k` in `0..=n`.
fn cuts(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k + 1);
    fn rec(start: usize, n: usize, need: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if need == 0 {
            out.push(cur.clone());
            return;
        }
        for c in start..=n + 1 - need {
            cur.push(c);
            rec(c + 1, n, need - 1, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k + 1, &mut cur, &mut out);
    out
}

/// A linearization with its terms as positions into its sorted variables.
struct Linearization {
    generator: usize,
    index: usize,
    parities: Vec<Parity>,
    terms: Vec<(Vec<usize>, Scalar)>,
}

fn linearizations(generators: &[GradedPolynomial]) -> Vec<Linearization> {
    let mut out = Vec::new();
    for (j, g) in generators.iter().enumerate() {
        for (c, lin) in multilinearize(g).into_iter().enumerate() {
            let vars = lin.slot();
            let terms = lin
                .terms()
                .map(|(m, x)| (m.vars().iter().map(|v| vars.binary_search(v).unwrap()).collect(), x.clone()))
                .collect();
            out.push(Linearization {
                generator: j,
                index: c,
                parities: vars.iter().map(|v| v.parity).collect(),
                terms,
            });
        }
    }
    out
}

/// Spans all `v g~(u_1, ..., u_k) w` that are multilinear in `slot`, where `g~`
/// runs over the multilinearizations of the generators and `u_i` over
/// monomials of the parity of the variable they replace.
pub fn consequence_span(generators: &[GradedPolynomial], slot: &MultidegreeSlot, caps: &Caps) -> Result<ConsequenceSpan> {
    slot.check_cap(caps)?;
    let n = slot.degree();
    let ncols = slot.monomials().len();
    let lins = linearizations(generators);
    let cut_table: HashMap<usize, Vec<Vec<usize>>> =
        lins.iter().map(|l| l.parities.len()).filter(|&k| k <= n).map(|k| (k, cuts(n, k))).collect();

    // Every (v, u_1, ..., u_k, w) is a slot monomial cut into pieces.
    let candidates: Vec<(ConsequenceRow, SparseVec)> = slot
        .monomials()
        .par_iter()
        .flat_map_iter(|word| {
            let word = word.vars();
            let mut local = Vec::new();
            for lin in &lins {
                let k = lin.parities.len();
                let Some(table) = cut_table.get(&k) else { continue };
                for c in table {
                    let pieces: Vec<&[GradedVariable]> = (0..k).map(|i| &word[c[i]..c[i + 1]]).collect();
                    if pieces.iter().zip(&lin.parities).any(|(u, p)| u.iter().map(|v| v.parity).sum::<Parity>() != *p) {
                        continue;
                    }
                    let left = &word[..c[0]];
                    let right = &word[c[k]..];
                    let mut row: Vec<(usize, Scalar)> = Vec::with_capacity(lin.terms.len());
                    for (positions, x) in &lin.terms {
                        let mut w: Vec<GradedVariable> = left.to_vec();
                        for &p in positions {
                            w.extend_from_slice(pieces[p]);
                        }
                        w.extend_from_slice(right);
                        row.push((slot.column(&w).expect("the substitution stays in the slot"), x.clone()));
                    }
                    row.sort_by_key(|(i, _)| *i);
                    local.push((
                        ConsequenceRow {
                            generator: lin.generator,
                            linearization: lin.index,
                            left: left.to_vec(),
                            arguments: pieces.iter().map(|u| u.to_vec()).collect(),
                            right: right.to_vec(),
                        },
                        row,
                    ));
                }
            }
            local
        })
        .collect();

    let mut ech = Echelon::new(ncols);
    let mut seen: HashSet<SparseVec> = HashSet::new();
    let mut rows = Vec::new();
    for (desc, row) in candidates {
        if ech.is_full() {
            break;
        }
        if row.is_empty() || !seen.insert(normalized(&row)) {
            continue;
        }
        if ech.insert(&row) {
            rows.push((desc, row));
        }
    }
    Ok(ConsequenceSpan { slot: slot.clone(), generators: generators.to_vec(), basis: ech.rref(), rows })
}

fn normalized(v: &[(usize, Scalar)]) -> SparseVec {
    let inv = v[0].1.inv().expect("nonzero entry");
    crate::linalg::scale(v, &inv)
}

/// Outcome of a membership test in the slot of `f`.
#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub slot: Vec<GradedVariable>,
    pub member: bool,
    pub rank: usize,
    pub certificate: Option<MembershipCertificate>,
}

/// Decides `f in T[generators]` for multilinear `f`, with a certificate on success.
pub fn decide_membership(f: &GradedPolynomial, generators: &[GradedPolynomial], caps: &Caps) -> Result<Membership> {
    let slot = MultidegreeSlot::of(f)?;
    let span = consequence_span(generators, &slot, caps)?;
    let certificate = span.express(f)?;
    if let Some(c) = &certificate {
        debug_assert!(c.certifies(f, generators));
    }
    Ok(Membership { slot: slot.variables().to_vec(), member: certificate.is_some(), rank: span.rank(), certificate })
}

/// A random element `c_1 v g~(u) w + c_2 pi(v g~(u) w)` of `T[generators]`,
/// where `pi` permutes letters of equal parity. Arguments get an extra even
/// letter and the borders a letter each while `extra` lasts.
pub fn sample_consequence(rng: &mut impl Rng, generators: &[GradedPolynomial], extra: usize) -> Result<GradedPolynomial> {
    let nonzero: Vec<&GradedPolynomial> = generators.iter().filter(|g| !g.is_zero()).collect();
    let Some(g) = nonzero.choose(rng) else {
        return usage("sampling needs a nonzero generator");
    };
    let lins = multilinearize(g);
    let lin = lins.choose(rng).expect("nonzero polynomials have components");
    let mut next = 1u32;
    let mut fresh = |p: Parity| {
        next += 1;
        GradedVariable::new(next - 1, p)
    };
    let mut budget = extra;
    let mut spend = |rng: &mut dyn RngCore| {
        let take = budget > 0 && rng.gen_bool(0.5);
        budget -= usize::from(take);
        take
    };
    let random_parity = |rng: &mut dyn RngCore| if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
    let mut map = HashMap::new();
    for y in lin.slot() {
        let mut u = vec![fresh(y.parity)];
        if spend(rng) {
            u.insert(rng.gen_range(0..=1), fresh(Parity::Even));
        }
        map.insert(y, GradedPolynomial::monomial(u, Scalar::one()));
    }
    let mut row = lin.substitute(&map);
    if spend(rng) {
        row = GradedPolynomial::var(fresh(random_parity(rng))).mul(&row);
    }
    if spend(rng) {
        row = row.mul(&GradedPolynomial::var(fresh(random_parity(rng))));
    }
    let mut rename = HashMap::new();
    for p in [Parity::Even, Parity::Odd] {
        let class: Vec<GradedVariable> = row.slot().into_iter().filter(|v| v.parity == p).collect();
        let mut image = class.clone();
        image.shuffle(rng);
        rename.extend(class.into_iter().zip(image));
    }
    let c1 = Scalar::from_int([-2, -1, 1, 2][rng.gen_range(0..4)]);
    let c2 = Scalar::from_int(rng.gen_range(-2..=2));
    let f = row.scale(&c1).add(&row.rename(&rename).scale(&c2));
    Ok(if f.is_zero() { row } else { f })
}

pub fn is_member(f: &GradedPolynomial, generators: &[GradedPolynomial], caps: &Caps) -> Result<bool> {
    let slot = MultidegreeSlot::of(f)?;
    consequence_span(generators, &slot, caps)?.contains(f)
}
