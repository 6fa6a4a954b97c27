//! Special functions: polygamma, zeta, half-order Bessel/Struve, polylog,
//! Fermi-Dirac and Bose-Einstein values.

pub mod bessel;
pub mod gamma_family;
pub mod polylog;

pub use bessel::{bessel_i_half, bessel_j_half, struve_h_minus_half, ComplexValue};
pub use gamma_family::{polygamma, tetragamma, trigamma, zeta, zeta3_tail, PolygammaOrder};
pub use polylog::{bose_einstein_g, fermi_dirac_f, polylog, polylog_truncated, TruncatedSeries};
