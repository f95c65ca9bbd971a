//! High-order flux reconstruction workbench for the inviscid Burgers equation.
//!
//! The crate builds reference-element operators on nodal (GLL Lagrange) or
//! modal (orthonormal Legendre) bases, assembles conservative DG, ESFR, and
//! split-form ESFR residuals on a periodic affine mesh, advances them with
//! classical RK4, and measures the broken Sobolev energy, the conserved
//! integral, and L2 errors. The [`harness`] module runs the energy,
//! convergence, and operator-identity studies and writes CSV.

pub mod diagnostics;
pub mod error;
pub mod flux;
pub mod harness;
pub mod mesh;
pub mod operators;
pub mod quadrature;
pub mod scheme;
pub mod time;

pub use error::{Error, Result};

/// Dense matrix type used for all reference-element operators.
pub type Matrix = nalgebra::DMatrix<f64>;
/// Dense column vector.
pub type Vector = nalgebra::DVector<f64>;
