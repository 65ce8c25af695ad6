//! Exact-arithmetic library for the centerless Virasoro-like algebra on the
//! two-torus, its jet modules, and the positive part of the associated
//! Block-type algebra.
//!
//! Everything is computed over arbitrary-precision rationals, so every
//! algebraic identity checked by this crate is an exact equality of canonical
//! values, never an approximation.

pub mod error;
pub mod fit;
pub mod formal;
pub mod ideal;
pub mod jet;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod rep;
pub mod scalar;

pub use error::Error;
pub use formal::{
    bracket_bplus, bracket_g, bracket_l, bracket_semidirect, g_action_on_a, jacobi_defect,
    AElement, AlgebraElement, BPlusElement, GAElement, GElement, LElement,
};
pub use lattice::{det_pair, monomial, multi_binomial, multi_factorial, LatticePoint, MultiIndex};
pub use matrix::QMatrix;
pub use scalar::Rational;
