//! Quadratic Hecke characters over the Gaussian integers and the
//! L-functions attached to them.

// `!(x > 0.0)` rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod characters;
pub mod error;
pub mod exec;
pub mod gaussian;
pub mod hecke;
pub mod moments;
pub mod special;
pub mod survey;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gaussian::GaussInt;
