//! Clamped buckling eigenvalue problem Δ²u + κ²u = −λΔu on the unit ball.
//!
//! Eigenvalues come from the roots α of a Bessel determinant F_k(α) with
//! λ = α² + κ²/α²; the modules build up from Bessel evaluation to branch
//! solving, eigenfunction construction and nodal classification.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dd;
pub mod dispersion;
pub mod eigenmodes;
pub mod error;
pub mod gamma;
pub mod nodal;
pub mod roots;
pub mod special_functions;
pub mod verify;

pub use error::{Error, Result};
