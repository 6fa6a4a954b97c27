//! Numerical substrate: double-double scalars, reduction modulo π and
//! compensated summation.

pub mod dd;
pub mod reduce;
pub mod sum;

pub use dd::DoubleDouble;
pub use reduce::{
    half_pi, pi, reduce_mod_pi, sin_cos, sin_cos_int, sin_cos_pi_times, sin_int, ReducedAngle,
    TrigPair,
};
pub use sum::{compensated_sum, CompensatedSum};
