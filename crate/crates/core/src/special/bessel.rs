//! Half-order Bessel and Struve functions via their elementary closed forms.
//!
//! `I_{1/2}(z) = √(2/(πz))·sinh z` with the principal square root, and
//! `J_{1/2}(x) = √(2/(πx))·sin x`. `H_{−1/2}` coincides with `J_{1/2}`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::precision::{pi, sin_cos, DoubleDouble};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexValue {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexValue {
    pub const I: Self = Self { re: DoubleDouble::ZERO, im: DoubleDouble::ONE };

    pub fn new(re: DoubleDouble, im: DoubleDouble) -> Self {
        Self { re, im }
    }

    pub fn real(re: DoubleDouble) -> Self {
        Self { re, im: DoubleDouble::ZERO }
    }

    pub fn imag(im: DoubleDouble) -> Self {
        Self { re: DoubleDouble::ZERO, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn norm_sqr(&self) -> DoubleDouble {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> DoubleDouble {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, k: DoubleDouble) -> Self {
        Self { re: self.re * k, im: self.im * k }
    }

    pub fn powi(self, n: u32) -> Self {
        (0..n).fold(Self::real(DoubleDouble::ONE), |acc, _| acc * self)
    }

    /// Principal square root (branch cut on the negative real axis, the
    /// cut itself mapped to the positive imaginary half-line).
    pub fn sqrt(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let r = self.abs();
        if !self.re.is_negative() {
            let t = ((r + self.re).mul_pow2(-1)).sqrt();
            Self { re: t, im: self.im / t.mul_pow2(1) }
        } else {
            let t = ((r - self.re).mul_pow2(-1)).sqrt();
            let re = self.im.abs() / t.mul_pow2(1);
            let im = if self.im.is_negative() { -t } else { t };
            Self { re, im }
        }
    }

    pub fn sinh(self) -> Result<Self> {
        let trig = sin_cos(self.im)?;
        let (sh, ch) = sinh_cosh(self.re);
        Ok(Self { re: sh * trig.cos, im: ch * trig.sin })
    }
}

fn sinh_cosh(x: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    if x.is_zero() {
        return (DoubleDouble::ZERO, DoubleDouble::ONE);
    }
    if x.hi.abs() < 0.5 {
        // Taylor avoids the cancellation in (eˣ − e⁻ˣ)/2
        let x2 = x.sqr();
        let mut term = x;
        let mut sh = x;
        for k in 1..40 {
            term = term * x2 / ((2 * k) as f64 * (2 * k + 1) as f64);
            sh += term;
            if term.abs().hi < 1e-34 * sh.abs().hi {
                break;
            }
        }
        let ch = (DoubleDouble::ONE + sh.sqr()).sqrt();
        return (sh, ch);
    }
    let e = x.exp();
    let inv = e.recip();
    ((e - inv).mul_pow2(-1), (e + inv).mul_pow2(-1))
}

impl Add for ComplexValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for ComplexValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Neg for ComplexValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Mul for ComplexValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Div for ComplexValue {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let d = rhs.norm_sqr();
        Self {
            re: (self.re * rhs.re + self.im * rhs.im) / d,
            im: (self.im * rhs.re - self.re * rhs.im) / d,
        }
    }
}

/// Modified Bessel function `I_{1/2}(z)`, `z ≠ 0`.
pub fn bessel_i_half(z: ComplexValue) -> Result<ComplexValue> {
    if z.is_zero() {
        return Err(Error::domain("bessel_i_half", "z must be nonzero"));
    }
    if !z.is_finite() {
        return Err(Error::domain("bessel_i_half", "z must be finite"));
    }
    let two = ComplexValue::real(DoubleDouble::from(2.0));
    let prefactor = (two / z.scale(pi())).sqrt();
    Ok(prefactor * z.sinh()?)
}

/// Bessel function `J_{1/2}(x)` for real `x > 0`.
pub fn bessel_j_half(x: f64) -> Result<DoubleDouble> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("bessel_j_half", format!("x = {x} must be positive")));
    }
    let xd = DoubleDouble::from(x);
    let s = sin_cos(xd)?.sin;
    Ok((DoubleDouble::from(2.0) / (pi() * xd)).sqrt() * s)
}

/// Struve `H_{−1/2}(x) = J_{1/2}(x)`.
pub fn struve_h_minus_half(x: f64) -> Result<DoubleDouble> {
    bessel_j_half(x).map_err(|e| match e {
        Error::Domain { detail, .. } => Error::Domain { op: "struve_h_minus_half", detail },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(x: f64) -> DoubleDouble {
        DoubleDouble::from(x)
    }

    #[test]
    fn principal_sqrt_branches() {
        let r = ComplexValue::real(dd(-4.0)).sqrt();
        assert_eq!(r.re.to_f64(), 0.0);
        assert_eq!(r.im.to_f64(), 2.0);
        let i = ComplexValue::imag(dd(2.0)).sqrt();
        assert!((i.re.to_f64() - 1.0).abs() < 1e-30);
        assert!((i.im.to_f64() - 1.0).abs() < 1e-30);
        let w = ComplexValue::new(dd(-3.0), dd(-4.0)).sqrt();
        assert!((w.re.to_f64() - 1.0).abs() < 1e-30);
        assert!((w.im.to_f64() + 2.0).abs() < 1e-30);
    }

    #[test]
    fn i_half_rejects_zero() {
        assert!(bessel_i_half(ComplexValue::default()).is_err());
        assert!(bessel_j_half(0.0).is_err());
        assert!(struve_h_minus_half(-1.0).is_err());
    }

    #[test]
    fn i_half_at_minus_i_half_pi_has_modulus_two_over_pi() {
        let z = ComplexValue::imag(-pi().mul_pow2(-1));
        let v = bessel_i_half(z).unwrap();
        let expected = DoubleDouble::from(2.0) / pi();
        assert!(((v.abs() - expected) / expected).abs().to_f64() < 1e-30);
    }

    #[test]
    fn j_half_vanishes_at_pi() {
        let v = bessel_j_half(std::f64::consts::PI).unwrap();
        // sin of the f64 nearest π is ≈ 1.2246e-16
        assert!(v.abs().to_f64() < 1e-16);
    }

    #[test]
    fn csc_times_j_half_at_one() {
        let j = bessel_j_half(1.0).unwrap();
        let csc = sin_cos(dd(1.0)).unwrap().sin.recip();
        let expected = (DoubleDouble::from(2.0) / pi()).sqrt();
        assert!(((csc * j - expected) / expected).abs().to_f64() < 1e-30);
    }

    #[test]
    fn struve_alias_is_bit_exact() {
        for x in [1.0, 3.0, std::f64::consts::PI, 17.5] {
            assert_eq!(struve_h_minus_half(x).unwrap(), bessel_j_half(x).unwrap());
        }
    }

    #[test]
    fn sinh_small_argument_is_accurate() {
        let (sh, ch) = sinh_cosh(dd(1e-10));
        assert!(((sh - 1e-10) / 1e-10).abs().to_f64() < 2e-20);
        assert!((ch - 1.0).abs().to_f64() < 1e-20);
    }
}
