//! Exact symbolic engine for metrics and pairs of left/right connections on
//! bimodules of 1-forms: the quantum plane at generic `q` and at a cube root
//! of unity, and matrix-valued function algebras.

pub mod compat;
pub mod connection;
pub mod error;
pub mod linalg;
pub mod matrixgeo;
pub mod metric;
pub mod oneforms;
pub mod parse;
pub mod qalgebra;
pub mod random;
pub mod rewrite;
pub mod scalar;
pub mod system;
pub mod textio;
pub mod verify;

pub use error::{Error, Result};
