//! Exact arithmetic for the projective Möbius action of PGL2(F_q) on monic
//! irreducible polynomials over finite fields: classification of matrices by
//! eigenvalue behaviour, invariant polynomials counted and listed by three
//! independent routes (closed formula, semilinear-polynomial factor
//! extraction, brute-force enumeration), and subgroup invariant analysis.

pub mod action;
pub mod counting;
pub mod error;
pub mod group_invariants;
pub mod field;
pub mod pgl2;
pub mod poly;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use field::{ExtElem, ExtField, FieldSpec, FqElem};
pub use pgl2::{Mat2, ProjMat, ReducedForm, Subgroup, TypeTag};
pub use poly::Poly;
