//! The unital exterior algebra on `n` generators, with subsets as bitsets.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::SuperAlgebra;
use crate::caps::Caps;
use crate::error::{over_cap, usage, Result};
use crate::linalg::SparseVec;
use crate::scalar::{Parity, Scalar};

/// Hard limit of the bitset representation.
pub const GRASSMANN_LIMIT: usize = 24;

/// Sign of `e_a e_b` relative to the sorted monomial `e_(a | b)`; `None` when they overlap.
pub fn merge_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(swaps % 2 == 1)
}

pub fn subset_parity(mask: u32) -> Parity {
    Parity::from_bit((mask.count_ones() % 2) as u8)
}

/// `{1,3}` for `e_1 e_3`, generators counted from one.
pub fn subset_label(mask: u32) -> String {
    let items: Vec<String> = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannElement {
    n: usize,
    coeffs: BTreeMap<u32, Scalar>,
}

impl GrassmannElement {
    pub fn zero(n: usize) -> Self {
        GrassmannElement { n, coeffs: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        GrassmannElement::monomial(n, 0)
    }

    /// `e_i`, zero based.
    pub fn generator(n: usize, i: usize) -> Self {
        assert!(i < n, "generator index out of range");
        GrassmannElement::monomial(n, 1 << i)
    }

    pub fn monomial(n: usize, mask: u32) -> Self {
        assert!(n <= GRASSMANN_LIMIT && (mask >> n) == 0, "subset outside the generators");
        GrassmannElement { n, coeffs: BTreeMap::from([(mask, Scalar::one())]) }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (u32, Scalar)>) -> Self {
        let mut e = GrassmannElement::zero(n);
        for (m, c) in terms {
            e.add_term(m, &c);
        }
        e
    }

    fn add_term(&mut self, mask: u32, c: &Scalar) {
        assert!((mask >> self.n) == 0, "subset outside the generators");
        let entry = self.coeffs.entry(mask).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        self.coeffs.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        GrassmannElement::from_terms(self.n, self.coeffs.iter().map(|(m, x)| (*m, x * c)))
    }

    /// The parity when the element is homogeneous and nonzero.
    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.coeffs.keys().map(|&m| subset_parity(m));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }
}

impl Add for &GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, other: &GrassmannElement) -> GrassmannElement {
        assert_eq!(self.n, other.n, "generator counts differ");
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c);
        }
        out
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, other: &GrassmannElement) -> GrassmannElement {
        self + &-other
    }
}

impl Mul for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, other: &GrassmannElement) -> GrassmannElement {
        assert_eq!(self.n, other.n, "generator counts differ");
        let mut out = GrassmannElement::zero(self.n);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if let Some(odd) = merge_sign(*a, *b) {
                    let c = x * y;
                    out.add_term(a | b, &if odd { -c } else { c });
                }
            }
        }
        out
    }
}

/// The exterior algebra `E` on `n` generators as a graded algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grassmann {
    n: usize,
}

pub fn make_grassmann(n: usize, caps: &Caps) -> Result<Grassmann> {
    if n == 0 {
        return usage("the exterior algebra needs at least one generator");
    }
    if n > caps.max_grassmann.min(GRASSMANN_LIMIT) {
        return over_cap(format!("{n} generators exceed the cap {}", caps.max_grassmann.min(GRASSMANN_LIMIT)));
    }
    Ok(Grassmann { n })
}

impl Grassmann {
    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Subsets ordered by size, then by bitset value.
    pub fn basis(&self) -> Vec<u32> {
        let mut masks: Vec<u32> = (0..1u32 << self.n).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        masks
    }

    pub fn basis_of_parity(&self, parity: Parity) -> Vec<u32> {
        self.basis().into_iter().filter(|&m| subset_parity(m) == parity).collect()
    }

    pub fn one(&self) -> GrassmannElement {
        GrassmannElement::one(self.n)
    }

    pub fn generator(&self, i: usize) -> GrassmannElement {
        GrassmannElement::generator(self.n, i)
    }

    /// The structure-constant form, subject to the dimension cap.
    pub fn to_superalgebra(&self, caps: &Caps) -> Result<SuperAlgebra> {
        let basis = self.basis();
        let index: BTreeMap<u32, usize> = basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut table: Vec<SparseVec> = Vec::with_capacity(basis.len() * basis.len());
        for &a in &basis {
            for &b in &basis {
                table.push(match merge_sign(a, b) {
                    None => Vec::new(),
                    Some(odd) => vec![(index[&(a | b)], if odd { Scalar::from_int(-1) } else { Scalar::one() })],
                });
            }
        }
        SuperAlgebra::from_table(
            basis.iter().map(|&m| subset_label(m)).collect(),
            basis.iter().map(|&m| subset_parity(m)).collect(),
            table,
            Some(0),
            None,
            caps,
        )
    }
}
