//! Symbolic-numeric toolkit for stable-rank certificates of crossed products
//! `l1(Z/nZ, A(D), alpha)` of the disk algebra by rotation actions.
//!
//! The disk algebra is modeled by complex polynomials with the Wiener norm
//! (sum of coefficient moduli), which dominates the sup norm on the closed
//! disk.

// `!(x > 0.0)` is used throughout so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod bounds;
pub mod certificate;
pub mod elimination;
pub mod error;
pub mod json;
pub mod liftrank;
pub mod moebius;
pub mod poly;
pub mod random;

pub use algebra::{AlgMatrix, CrossedElement, GroupSpec, RingElement};
pub use error::{AlgebraError, BoundsError, EliminationError, LiftError, MoebiusError, PolyError};
pub use num_complex::Complex64;
pub use poly::{CirclePath, Poly};
