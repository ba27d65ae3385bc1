//! Small named superalgebras used throughout the tests and examples.

use crate::algebra::{
    adjoin_unit, assemble_elementary, direct_product, make_group_matrix_superalgebra, make_matrix_superalgebra,
    Block, RadicalGenerator, RadicalSpec, SuperAlgebra,
};
use crate::caps::Caps;
use crate::scalar::{Parity, Scalar};

fn built(a: crate::Result<SuperAlgebra>) -> SuperAlgebra {
    a.expect("catalogue algebras are valid")
}

pub fn matrix(k: usize, m: usize) -> SuperAlgebra {
    built(make_matrix_superalgebra(k, m, &Caps::default()))
}

pub fn group_matrix(k: usize) -> SuperAlgebra {
    built(make_group_matrix_superalgebra(k, &Caps::default()))
}

fn triangular(parity: Parity) -> SuperAlgebra {
    let blocks = [Block::Matrix { k: 1, m: 0 }, Block::Matrix { k: 1, m: 0 }];
    let radical = RadicalSpec {
        generators: vec![RadicalGenerator { label: "r".into(), parity, from: 0, to: 1 }],
        products: vec![],
    };
    built(assemble_elementary(&blocks, &radical, &Caps::default()))
}

/// `Q e_1 + Q e_2 + Q r` with `r = e_1 r e_2` odd: two one-dimensional
/// blocks joined by an odd radical element, `nd = 2`.
pub fn odd_triangular() -> SuperAlgebra {
    triangular(Parity::Odd)
}

/// As [`odd_triangular`] with an even radical element: the upper triangular 2x2 matrices.
pub fn even_triangular() -> SuperAlgebra {
    triangular(Parity::Even)
}

/// `M_{1,1}` plus an even radical generator in `e_1 J (1 - e_1)`.
pub fn matrix_with_side_radical() -> SuperAlgebra {
    let radical = RadicalSpec {
        generators: vec![RadicalGenerator { label: "r".into(), parity: Parity::Even, from: 0, to: 1 }],
        products: vec![],
    };
    built(assemble_elementary(&[Block::Matrix { k: 1, m: 1 }], &radical, &Caps::default()))
}

/// As [`matrix_with_side_radical`] with the generator in `(1 - e_1) J e_1`.
pub fn matrix_with_left_radical() -> SuperAlgebra {
    let radical = RadicalSpec {
        generators: vec![RadicalGenerator { label: "r".into(), parity: Parity::Even, from: 1, to: 0 }],
        products: vec![],
    };
    built(assemble_elementary(&[Block::Matrix { k: 1, m: 1 }], &radical, &Caps::default()))
}

/// The nilpotent algebra spanned by `a` and `b = a^2` (both of parity `parity`
/// for `a`, even for `b`), `nd = 3`.
pub fn nilpotent_cube(parity: Parity) -> SuperAlgebra {
    let radical = RadicalSpec {
        generators: vec![
            RadicalGenerator { label: "a".into(), parity, from: 0, to: 0 },
            RadicalGenerator { label: "b".into(), parity: Parity::Even, from: 0, to: 0 },
        ],
        products: vec![("a".into(), "a".into(), vec![(Scalar::one(), "b".into())])],
    };
    built(assemble_elementary(&[], &radical, &Caps::default()))
}

/// One odd element squaring to zero.
pub fn odd_square_zero() -> SuperAlgebra {
    let radical = RadicalSpec {
        generators: vec![RadicalGenerator { label: "e".into(), parity: Parity::Odd, from: 0, to: 0 }],
        products: vec![],
    };
    built(assemble_elementary(&[], &radical, &Caps::default()))
}

/// Every catalogue algebra of dimension at most `max_dim`, with names.
pub fn all(max_dim: usize) -> Vec<(String, SuperAlgebra)> {
    let caps = Caps::default();
    let mut out: Vec<(String, SuperAlgebra)> = vec![
        ("M_{1,0}".into(), matrix(1, 0)),
        ("M_{2,0}".into(), matrix(2, 0)),
        ("M_{1,1}".into(), matrix(1, 1)),
        ("Q[c]".into(), group_matrix(1)),
        ("odd triangular".into(), odd_triangular()),
        ("even triangular".into(), even_triangular()),
        ("M_{1,1} with side radical".into(), matrix_with_side_radical()),
        ("nilpotent cube (even)".into(), nilpotent_cube(Parity::Even)),
        ("nilpotent cube (odd)".into(), nilpotent_cube(Parity::Odd)),
        ("odd square zero".into(), odd_square_zero()),
        ("Q + odd square zero".into(), built(adjoin_unit(&odd_square_zero(), &caps))),
        ("M_{1,0} x M_{1,0}".into(), built(direct_product(&[matrix(1, 0), matrix(1, 0)], &caps))),
        ("M_{1,0} x Q[c]".into(), built(direct_product(&[matrix(1, 0), group_matrix(1)], &caps))),
        ("Q[c] x Q[c]".into(), built(direct_product(&[group_matrix(1), group_matrix(1)], &caps))),
        ("M_{1,1} x M_{1,0}".into(), built(direct_product(&[matrix(1, 1), matrix(1, 0)], &caps))),
        ("odd triangular x M_{1,0}".into(), built(direct_product(&[odd_triangular(), matrix(1, 0)], &caps))),
    ];
    out.retain(|(_, a)| a.dim() <= max_dim);
    out
}
