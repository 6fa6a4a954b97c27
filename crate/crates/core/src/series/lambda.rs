//! The Λ/Θ/Ψ decomposition of the Flint-Hills partial sums.
//!
//! With the triple-angle identity `sin 3n = 3 sin n − 4 sin³ n`,
//! `(π/(2√3))·(3csc²n − 4)/n³` is the real number
//! `−i·I_{1/2}(−3in)/(n⁴·I_{1/2}(−in)³)`, and summing it gives Λ(σ).
//! Combined with `ψ''(σ) = −2Σ_{n≥σ} n⁻³` this makes
//! `Ψ(σ) = (4/3)ζ(3) + (2√3/(3π))Λ(σ) + (2/3)ψ''(σ)` equal to
//! `Σ_{n<σ} csc²(n)/n³` exactly.

use crate::error::{Error, Result};
use crate::precision::{pi, sin_int, CompensatedSum, DoubleDouble};
use crate::special::{bessel_i_half, polygamma, tetragamma, zeta, ComplexValue, PolygammaOrder};

use super::partial::partial_sum;
use super::spec::SeriesSpec;

/// Largest relative imaginary part tolerated in a Bessel-path term.
pub const REALNESS_TOLERANCE: f64 = 1e-12;

fn sqrt3() -> DoubleDouble {
    DoubleDouble::from(3.0).sqrt()
}

/// `π/(2√3)`.
pub fn lambda_prefactor() -> DoubleDouble {
    pi() / sqrt3().mul_pow2(1)
}

/// `2√3/(3π)`, the weight of Λ in Ψ.
pub fn lambda_weight() -> DoubleDouble {
    sqrt3().mul_pow2(1) / (pi() * 3.0)
}

/// Λ summed through the half-order Bessel function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselLambda {
    pub value: DoubleDouble,
    /// Largest `|Im t|/|Re t|` over the terms.
    pub max_imag_residue: f64,
}

pub fn lambda_bessel_term(n: u64) -> Result<(DoubleDouble, f64)> {
    let nd = DoubleDouble::from(n as f64);
    let one = bessel_i_half(ComplexValue::imag(-nd))?;
    let three = bessel_i_half(ComplexValue::imag(-(nd * 3.0)))?;
    let denom = one.powi(3).scale(nd.powi(4));
    let t = ComplexValue::new(three.im, -three.re) / denom;
    let residue = (t.im / t.re).abs().to_f64();
    Ok((t.re, residue))
}

/// `Λ(σ) = Σ_{n<σ} Re[−i·I_{1/2}(−3in)/(n⁴ I_{1/2}³(−in))]`.
pub fn lambda_bessel(sigma: u64) -> Result<BesselLambda> {
    check_sigma("lambda_bessel", sigma, 1)?;
    let mut acc = CompensatedSum::new();
    let mut worst = 0.0f64;
    for n in 1..sigma {
        let (re, residue) = lambda_bessel_term(n)?;
        if !(residue <= REALNESS_TOLERANCE) {
            return Err(Error::Consistency(format!(
                "Bessel term at n = {n} has relative imaginary part {residue:e}"
            )));
        }
        worst = worst.max(residue);
        acc.add(re);
    }
    Ok(BesselLambda { value: acc.value(), max_imag_residue: worst })
}

/// `(π/(2√3))·(3csc²n − 4)/n³`.
pub fn lambda_elementary_term(n: u64) -> Result<DoubleDouble> {
    let csc2 = sin_int(n)?.sqr().recip();
    Ok(lambda_prefactor() * (csc2 * 3.0 - 4.0) / DoubleDouble::from(n as f64).powi(3))
}

/// Λ(σ) through the triple-angle reduction.
pub fn lambda_elementary(sigma: u64) -> Result<DoubleDouble> {
    check_sigma("lambda_elementary", sigma, 1)?;
    let mut acc = CompensatedSum::new();
    for n in 1..sigma {
        acc.add(lambda_elementary_term(n)?);
    }
    Ok(acc.value())
}

/// `Ψ(σ) = (4/3)ζ(3) + (2√3/(3π))Λ(σ) + (2/3)ψ''(σ)`.
pub fn psi_reconstruction(sigma: u64) -> Result<DoubleDouble> {
    check_sigma("psi_reconstruction", sigma, 2)?;
    let lambda = lambda_bessel(sigma)?.value;
    psi_from_lambda(sigma, lambda)
}

/// Ψ(σ) from a precomputed Λ(σ).
pub fn psi_from_lambda(sigma: u64, lambda: DoubleDouble) -> Result<DoubleDouble> {
    let zeta3 = zeta(3.0)?;
    let psi2 = tetragamma(sigma as f64)?;
    Ok(zeta3 * 4.0 / 3.0 + lambda_weight() * lambda + psi2 * 2.0 / 3.0)
}

/// `Θ(σ, n_max) = (π√3/3)ψ''(σ) + (π√3/2)Σ_{n=σ}^{n_max} csc²(n)/n³`.
pub fn theta_tail(sigma: u64, n_max: u64) -> Result<DoubleDouble> {
    check_sigma("theta_tail", sigma, 2)?;
    if n_max < sigma {
        return Err(Error::domain("theta_tail", format!("n_max = {n_max} is below σ = {sigma}")));
    }
    let pi_sqrt3 = pi() * sqrt3();
    let head = pi_sqrt3 / 3.0 * tetragamma(sigma as f64)?;
    let window = partial_sum(&SeriesSpec::flint_hills(), sigma, n_max)?.value;
    Ok(head + pi_sqrt3.mul_pow2(-1) * window)
}

/// Slope of Λ as a function of a continuous upper limit: `−(π/√3)ψ'''(t)`.
pub fn lambda_slope(t: f64) -> Result<DoubleDouble> {
    let psi3 = polygamma(PolygammaOrder::PENTAGAMMA, t)?;
    Ok(-(pi() / sqrt3()) * psi3)
}

fn check_sigma(op: &'static str, sigma: u64, min: u64) -> Result<()> {
    if sigma < min {
        return Err(Error::domain(op, format!("σ = {sigma} must be at least {min}")));
    }
    Ok(())
}
