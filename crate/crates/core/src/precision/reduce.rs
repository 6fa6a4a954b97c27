//! Argument reduction modulo π and π/2, and double-double sine/cosine.
//!
//! π is held as the 60-significant-digit literal [`PI_DIGITS`]. On first use
//! the literal is converted exactly into a 200-bit binary fixed-point integer
//! and cut, from the most significant end, into 23-bit groups. Each group
//! times its power of two is an `f64` chunk, and the chunks sum to π with an
//! error below 2⁻²⁰⁰. Because every chunk carries at most 23 significant bits,
//! the product `j·chunk` is exact for any integer multiple `|j| < 2³⁰`, so
//! `x − j·π` is accumulated from exact products and only the final
//! double-double additions round. This keeps the reduced argument accurate to
//! ~2⁻¹⁰⁴ of the largest intermediate remainder even when `x` sits within
//! 10⁻⁹ of a multiple of π.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::dd::DoubleDouble;
use crate::error::{Error, Result};

/// π to 60 significant digits.
pub const PI_DIGITS: &str = "3.14159265358979323846264338327950288419716939937510582097494";

/// Largest integer accepted by [`reduce_mod_pi`] and [`sin_int`].
pub const MAX_INTEGER_ARG: u64 = 1_000_000_000;

/// Largest magnitude accepted for a general double-double argument.
pub const MAX_REAL_ARG: f64 = 1.6e9;

const FIXED_POINT_BITS: u64 = 200;
const CHUNK_BITS: u64 = 23;
const MULTIPLE_LIMIT: f64 = 1_073_741_824.0; // 2^30

struct PiTable {
    chunks: Vec<f64>,
    half_chunks: Vec<f64>,
    pi: DoubleDouble,
    half_pi: DoubleDouble,
}

fn table() -> &'static PiTable {
    static TABLE: OnceLock<PiTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let chunks = pi_chunks();
        let half_chunks: Vec<f64> = chunks.iter().map(|c| c * 0.5).collect();
        let pi = chunks.iter().fold(DoubleDouble::ZERO, |acc, &c| acc + c);
        PiTable { half_pi: pi.mul_pow2(-1), pi, chunks, half_chunks }
    })
}

/// Splits [`PI_DIGITS`] into exact 23-bit `f64` chunks, most significant first.
pub fn pi_chunks() -> Vec<f64> {
    let (int_part, frac_part) = PI_DIGITS.split_once('.').expect("literal has a point");
    let digits: BigUint = format!("{int_part}{frac_part}").parse().expect("decimal digits");
    let scale = BigUint::from(10u32).pow(frac_part.len() as u32);
    let fixed = (digits << FIXED_POINT_BITS) / scale;

    let total_bits = fixed.bits();
    let mut chunks = Vec::new();
    let mut top = total_bits;
    while top > 0 {
        let bottom = top.saturating_sub(CHUNK_BITS);
        let mask = (BigUint::one() << (top - bottom)) - 1u32;
        let group = ((&fixed >> bottom) & mask).to_u64().expect("23-bit group");
        if group != 0 {
            let exp = bottom as i32 - FIXED_POINT_BITS as i32;
            chunks.push(group as f64 * 2f64.powi(exp));
        }
        top = bottom;
    }
    chunks
}

pub fn pi() -> DoubleDouble {
    table().pi
}

pub fn half_pi() -> DoubleDouble {
    table().half_pi
}

/// `x` written as `k·π + r` with `r ∈ (−π/2, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedAngle {
    pub k: i64,
    pub r: DoubleDouble,
    pub source_n: u64,
}

fn subtract_multiple(x: DoubleDouble, j: f64, chunks: &[f64]) -> DoubleDouble {
    let mut r = x;
    for &c in chunks {
        r -= DoubleDouble::from(j * c);
    }
    r
}

pub fn reduce_mod_pi(n: u64) -> Result<ReducedAngle> {
    if n > MAX_INTEGER_ARG {
        return Err(Error::Range { value: n.to_string(), max: MAX_INTEGER_ARG.to_string() });
    }
    let t = table();
    let x = DoubleDouble::from(n as f64);
    let mut k = (n as f64 / t.pi.hi).round();
    let mut r = subtract_multiple(x, k, &t.chunks);
    // the f64 quotient estimate can be one off near the boundary
    if r > t.half_pi {
        k += 1.0;
        r = subtract_multiple(x, k, &t.chunks);
    } else if r <= -t.half_pi {
        k -= 1.0;
        r = subtract_multiple(x, k, &t.chunks);
    }
    Ok(ReducedAngle { k: k as i64, r, source_n: n })
}

/// Sine and cosine of one argument together with its reduction data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigPair {
    pub sin: DoubleDouble,
    pub cos: DoubleDouble,
    /// Multiple of π/2 removed from the argument.
    pub quadrant: i64,
    /// Remainder in roughly `[−π/4, π/4]`.
    pub t: DoubleDouble,
}

impl TrigPair {
    /// Distance from the argument to the nearest zero of `sin`.
    pub fn sin_zero_distance(&self) -> f64 {
        if self.quadrant.rem_euclid(2) == 0 {
            self.t.hi.abs()
        } else {
            (half_pi() - self.t.abs()).hi
        }
    }

    /// Distance from the argument to the nearest zero of `cos`.
    pub fn cos_zero_distance(&self) -> f64 {
        if self.quadrant.rem_euclid(2) == 1 {
            self.t.hi.abs()
        } else {
            (half_pi() - self.t.abs()).hi
        }
    }
}

/// Taylor series for sin and cos on `|t| <= π/4 + δ`, Horner form in t².
fn sin_cos_small(t: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    const TERMS: u32 = 15;
    let t2 = t.sqr();
    let mut s = DoubleDouble::ONE;
    let mut c = DoubleDouble::ONE;
    for k in (1..=TERMS).rev() {
        let k = k as f64;
        s = DoubleDouble::ONE - t2 * s / ((2.0 * k) * (2.0 * k + 1.0));
        c = DoubleDouble::ONE - t2 * c / ((2.0 * k - 1.0) * (2.0 * k));
    }
    (t * s, c)
}

fn rotate(quadrant: i64, t: DoubleDouble) -> TrigPair {
    let (s, c) = sin_cos_small(t);
    let (sin, cos) = match quadrant.rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    TrigPair { sin, cos, quadrant, t }
}

/// sin and cos of a double-double argument, `|x| <= MAX_REAL_ARG`.
pub fn sin_cos(x: DoubleDouble) -> Result<TrigPair> {
    if !x.is_finite() || x.hi.abs() > MAX_REAL_ARG {
        return Err(Error::Range { value: format!("{:e}", x.hi), max: format!("{MAX_REAL_ARG:e}") });
    }
    let t = table();
    let j = (x.hi / t.half_pi.hi).round();
    debug_assert!(j.abs() < MULTIPLE_LIMIT);
    let r = subtract_multiple(x, j, &t.half_chunks);
    Ok(rotate(j as i64, r))
}

/// sin and cos of `π·y`. The reduction is exact in `y`, so rational
/// multiples of π land on true zeros.
pub fn sin_cos_pi_times(y: DoubleDouble) -> TrigPair {
    let twice = y.mul_pow2(1);
    let j = twice.round();
    let frac = twice - j;
    let t = frac * half_pi();
    // j may exceed i64 only for absurd inputs; quadrant needs j mod 4
    let q = (j.hi % 4.0 + j.lo % 4.0).rem_euclid(4.0) as i64;
    rotate(q, t)
}

/// sin(n) for a positive integer `n <= MAX_INTEGER_ARG`.
pub fn sin_int(n: u64) -> Result<DoubleDouble> {
    if n == 0 {
        return Err(Error::domain("sin_int", "n must be at least 1"));
    }
    if n > MAX_INTEGER_ARG {
        return Err(Error::Range { value: n.to_string(), max: MAX_INTEGER_ARG.to_string() });
    }
    Ok(sin_cos(DoubleDouble::from(n as f64))?.sin)
}

/// Sine and cosine of an integer argument.
pub fn sin_cos_int(n: u64) -> Result<TrigPair> {
    if n > MAX_INTEGER_ARG {
        return Err(Error::Range { value: n.to_string(), max: MAX_INTEGER_ARG.to_string() });
    }
    sin_cos(DoubleDouble::from(n as f64))
}
