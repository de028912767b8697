//! Exact Hochschild cohomology of finite-dimensional algebras, with the
//! Gerstenhaber bracket computed both on cochains and from loops of extensions.

pub mod algebra;
pub mod cli;
pub mod complex;
pub mod error;
pub mod extension;
pub mod field;
pub mod gf2;
pub mod hochschild;
pub mod hopf;
pub mod io;
pub mod loops;
pub mod matrix;
pub mod module;
pub mod resolution;
pub mod verify;

pub use error::{HhError, Result};
pub use field::{Field, FieldDesc, PrimeField, Rationals};
pub use matrix::{Matrix, Subspace};
