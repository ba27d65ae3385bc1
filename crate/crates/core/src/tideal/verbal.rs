//! Verbal ideals of finite dimensional superalgebras.

use rayon::prelude::*;

use crate::algebra::{Element, SuperAlgebra};
use crate::caps::Caps;
use crate::error::Result;
use crate::eval::{Evaluable, TupleSpace};
use crate::linalg::{span_rref, Echelon, SparseVec};
use crate::poly::{multilinearize, GradedPolynomial};

/// The two-sided ideal generated by `seeds`, as a reduced echelon basis.
pub fn verbal_closure(alg: &SuperAlgebra, seeds: &[SparseVec]) -> Vec<SparseVec> {
    let dim = alg.dim();
    let mut ech = Echelon::new(dim);
    let mut frontier: Vec<SparseVec> = Vec::new();
    for s in seeds {
        if ech.insert(s) {
            frontier.push(s.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            let v = Element(v.clone());
            for b in 0..dim {
                let e = Element::basis(b);
                for prod in [alg.mul(&e, &v), alg.mul(&v, &e)] {
                    if !prod.is_zero() && ech.insert(&prod.0) {
                        next.push(prod.0);
                    }
                }
            }
        }
        frontier = next;
    }
    ech.rref()
}

/// The ideal of `alg` generated by all values of the multilinearizations of
/// `generators` at homogeneous basis tuples.
pub fn verbal_image(alg: &SuperAlgebra, generators: &[GradedPolynomial], caps: &Caps) -> Result<Vec<Element>> {
    let dim = alg.dim();
    let mut seeds: Vec<SparseVec> = Vec::new();
    for g in generators {
        for lin in multilinearize(g) {
            let compiled = lin.compile();
            let space = TupleSpace::new(alg, compiled.slot());
            space.check_cap(lin.len() as u128, caps)?;
            let values: Vec<SparseVec> = (0..space.size() as u64)
                .into_par_iter()
                .map(|i| {
                    let values: Vec<Element> = space.decode(i as u128).into_iter().map(Element::basis).collect();
                    compiled.eval(alg, &values).0
                })
                .filter(|v| !v.is_empty())
                .collect();
            seeds = span_rref(dim, seeds.into_iter().chain(values));
        }
    }
    Ok(verbal_closure(alg, &seeds).into_iter().map(Element).collect())
}
