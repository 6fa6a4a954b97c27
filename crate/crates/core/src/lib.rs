//! Extended-precision laboratory for Diophantine Dirichlet series
//! `Σ f(φn)^v · w(n) / nˢ` with trigonometric kernels.

// `!(x > 0.0)` style guards reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod diophantine;
pub mod elliptic;
pub mod error;
pub mod precision;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use precision::DoubleDouble;
