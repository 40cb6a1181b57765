pub mod arith;
pub mod census;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod power_matrix;
pub mod selftest;

pub use error::{Error, Result};
pub use field::{Elem, Extension, FieldCtx};
pub use linalg::Matrix;
pub use poly::ReducedPoly;
pub use power_matrix::PowerMatrix;
