//! Exact computations with Z/2-graded polynomial identities of finite
//! dimensional superalgebras over the rationals.
//!
//! The crate is organised bottom-up: [`algebra`] holds structure-constant
//! algebras with elementary decompositions, [`poly`] the free graded algebra,
//! [`eval`] exhaustive evaluation and identity checking, [`kemer`] witness
//! and boundary polynomials, [`tideal`] bounded-degree T-ideal computations
//! and [`grassmann`] exterior algebras and Grassmann envelopes.

pub mod algebra;
pub mod poly;
pub mod caps;
pub mod error;
pub mod eval;
pub mod grassmann;
pub mod kemer;
pub mod linalg;
pub mod scalar;
pub mod tideal;
pub mod zoo;
pub(crate) mod perm;

pub use caps::Caps;
pub use error::{Error, Result};
pub use scalar::{Parity, Scalar};
