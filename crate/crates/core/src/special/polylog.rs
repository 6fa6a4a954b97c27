//! Polylogarithm on `[−1, 1]` and the (factorial-free) Fermi-Dirac and
//! Bose-Einstein values built from it.

use crate::error::{Error, Result};
use crate::precision::{CompensatedSum, DoubleDouble};

use super::gamma_family::zeta;

const TARGET_TAIL: f64 = 1e-18;
const MAX_TERMS: usize = 20_000_000;

/// A truncated series value with a rigorous bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedSeries {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

fn check_polylog_args(s: f64, z: f64) -> Result<()> {
    if !(s > 1.0) {
        return Err(Error::domain("polylog", format!("s = {s} must exceed 1")));
    }
    if !(z.abs() <= 1.0) {
        return Err(Error::domain("polylog", format!("|z| = {} exceeds 1", z.abs())));
    }
    Ok(())
}

/// Li_s(z) summed over exactly `terms` terms, with the geometric tail bound
/// `|z|^{K+1}/((K+1)^s (1−|z|))`. Only defined for `|z| < 1`.
pub fn polylog_truncated(s: f64, z: f64, terms: usize) -> Result<TruncatedSeries> {
    check_polylog_args(s, z)?;
    if z.abs() == 1.0 {
        return Err(Error::domain("polylog_truncated", "geometric tail bound needs |z| < 1"));
    }
    let zd = DoubleDouble::from(z);
    let mut acc = CompensatedSum::new();
    let mut zk = DoubleDouble::ONE;
    for k in 1..=terms {
        zk *= zd;
        acc.add(zk * DoubleDouble::from(k as f64).powf(-s));
    }
    let next = (terms + 1) as f64;
    let tail_bound = z.abs().powf(next) / (next.powf(s) * (1.0 - z.abs()));
    Ok(TruncatedSeries { value: acc.value().to_f64(), tail_bound, terms })
}

/// Li_s(z) for real `s > 1`, `|z| <= 1`.
pub fn polylog(s: f64, z: f64) -> Result<f64> {
    check_polylog_args(s, z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 {
        return Ok(zeta(s)?.to_f64());
    }
    if z == -1.0 {
        // Li_s(−1) = −η(s) = −(1 − 2^{1−s}) ζ(s)
        let eta = (DoubleDouble::ONE - DoubleDouble::from(2.0).powf(1.0 - s)) * zeta(s)?;
        return Ok(-eta.to_f64());
    }
    let a = z.abs();
    let mut k = 1usize;
    while k < MAX_TERMS {
        let next = (k + 1) as f64;
        if a.powf(next) / (next.powf(s) * (1.0 - a)) < TARGET_TAIL {
            break;
        }
        k = (k * 2).max(k + 16);
    }
    let k = k.min(MAX_TERMS);
    let out = polylog_truncated(s, z, k)?;
    if out.tail_bound > 1e-15 {
        return Err(Error::Unsupported(format!(
            "|z| = {a} is too close to 1 for direct summation (tail bound {:e})",
            out.tail_bound
        )));
    }
    Ok(out.value)
}

/// Alternating sum `Σ_{k≥0} (−1)ᵏ a_k` for a completely monotone sequence,
/// using the Cohen–Rodriguez Villegas–Zagier weights. The error is below
/// `2·|a_0|/(3+√8)ⁿ`.
fn alternating_cvz(n: u32, a: impl Fn(u32) -> DoubleDouble) -> DoubleDouble {
    let root = DoubleDouble::from(3.0) + DoubleDouble::from(8.0).sqrt();
    let d = root.powi(n as i32);
    let d = (d + d.recip()).mul_pow2(-1);
    let mut b = DoubleDouble::from(-1.0);
    let mut c = -d;
    let mut acc = CompensatedSum::new();
    for k in 0..n {
        c = b - c;
        acc.add(c * a(k));
        let kf = k as f64;
        let nf = n as f64;
        b = b * ((kf + nf) * (kf - nf)) / ((kf + 0.5) * (kf + 1.0));
    }
    acc.value() / d
}

/// `F_p(x) = Σ_{r≥1} (−1)^{r+1} e^{r x} / r^{p+1}` for `p > 0`, `x <= 0`,
/// without the `Γ(p+1)` prefactor. Equals the normalised Fermi-Dirac
/// integral `(1/Γ(p+1))∫₀^∞ tᵖ/(e^{t−x}+1) dt`.
pub fn fermi_dirac_f(p: f64, x: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::domain("fermi_dirac_f", format!("p = {p} must be positive")));
    }
    if !(x <= 0.0) {
        return Err(Error::domain("fermi_dirac_f", format!("x = {x} must be non-positive")));
    }
    let decay = DoubleDouble::from(x).exp();
    let term = |r: u32| -> DoubleDouble {
        decay.powi(r as i32) * DoubleDouble::from(r as f64).powf(-(p + 1.0))
    };
    if decay.hi <= 0.5 {
        // plain alternating sum; remainder bounded by the next term
        let mut acc = CompensatedSum::new();
        let mut sign = 1.0;
        for r in 1..=2000u32 {
            let t = term(r);
            if t.hi < 1e-34 {
                break;
            }
            acc.add(t * sign);
            sign = -sign;
        }
        return Ok(acc.value().to_f64());
    }
    Ok(alternating_cvz(48, |k| term(k + 1)).to_f64())
}

/// Bose-Einstein value at the origin, `G_s(0) = Li_{s+1}(1) = ζ(s+1)`.
pub fn bose_einstein_g(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::domain("bose_einstein_g", format!("s = {s} must be positive")));
    }
    Ok(zeta(s + 1.0)?.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polylog_edges() {
        assert_eq!(polylog(2.5, 0.0).unwrap(), 0.0);
        assert!((polylog(2.0, 1.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((polylog(2.0, -1.0).unwrap() + PI * PI / 12.0).abs() < 1e-15);
        assert!(polylog(1.0, 0.5).is_err());
        assert!(polylog(2.0, 1.5).is_err());
    }

    #[test]
    fn dilog_at_half() {
        // Li₂(1/2) = π²/12 − ln²2/2
        let ln2 = std::f64::consts::LN_2;
        let expected = PI * PI / 12.0 - ln2 * ln2 / 2.0;
        assert!((polylog(2.0, 0.5).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn doubling_truncation_stays_within_bound() {
        for &(s, z) in &[(2.0, 0.9), (3.5, -0.7), (1.5, 0.99)] {
            let a = polylog_truncated(s, z, 200).unwrap();
            let b = polylog_truncated(s, z, 400).unwrap();
            assert!((a.value - b.value).abs() <= a.tail_bound, "s={s} z={z}");
        }
    }

    #[test]
    fn fermi_dirac_closed_form_at_zero() {
        // F_1(0) = ζ(2)/2
        assert!((fermi_dirac_f(1.0, 0.0).unwrap() - PI * PI / 12.0).abs() < 1e-15);
        assert!(fermi_dirac_f(0.0, 0.0).is_err());
        assert!(fermi_dirac_f(1.0, 0.1).is_err());
    }

    #[test]
    fn fermi_dirac_deep_negative_is_leading_exponential() {
        let v = fermi_dirac_f(2.0, -40.0).unwrap();
        assert!(((v - (-40f64).exp()) / v).abs() < 1e-15);
    }

    #[test]
    fn bose_einstein_is_shifted_zeta() {
        assert!((bose_einstein_g(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        let z3 = zeta(3.0).unwrap().to_f64();
        assert_eq!(bose_einstein_g(2.0).unwrap(), z3);
        assert!(bose_einstein_g(0.0).is_err());
    }
}
