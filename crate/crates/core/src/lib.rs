//! Exact computations with vertex operator algebras, their matrix-valued
//! associative algebras and graded modules.

pub mod checks;
pub mod error;
pub mod formal;
pub mod gr;
pub mod linalg;
pub mod matrix;
pub mod reduction;
pub mod report;
pub mod scalar;
pub mod state;
pub mod voa;
pub mod zhu;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use state::{Monomial, State};
