//! Recursive half-angle expansion of `csc²`:
//!
//! `1/sin²x = ¼ Σ_{k<m} 4⁻ᵏ/cos²(x/2^{k+1}) + ¼·4^{1−m}/sin²(x/2^m)`.

use crate::error::{Error, Result};
use crate::precision::{sin_cos, DoubleDouble};

use super::spec::POLE_TOLERANCE;

/// Depth cap; beyond it `x/2^m` sinks below double-double resolution of `x`.
pub const MAX_DEPTH: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursionDecomposition {
    pub x: f64,
    pub m: u32,
    /// `¼ Σ_{k<m} 4⁻ᵏ/cos²(x/2^{k+1})`.
    pub cos_sum: DoubleDouble,
    /// `¼·4^{1−m}/sin²(x/2^m)`.
    pub remainder: DoubleDouble,
    pub total: DoubleDouble,
}

fn sec2_scaled(x: DoubleDouble, k: u32) -> Result<DoubleDouble> {
    let p = sin_cos(x.mul_pow2(-(k as i32 + 1)))?;
    if p.cos_zero_distance() < POLE_TOLERANCE {
        return Err(Error::RecursionPole { k });
    }
    Ok(p.cos.sqr().recip().mul_pow2(-2 * k as i32))
}

pub fn recursion_decompose(x: f64, m: u32) -> Result<RecursionDecomposition> {
    if !(1..=MAX_DEPTH).contains(&m) {
        return Err(Error::domain("recursion_decompose", format!("depth m = {m} outside 1..={MAX_DEPTH}")));
    }
    if !x.is_finite() || x == 0.0 {
        return Err(Error::domain("recursion_decompose", format!("x = {x} must be finite and nonzero")));
    }
    let xd = DoubleDouble::from(x);
    let mut cos_sum = DoubleDouble::ZERO;
    for k in 0..m {
        cos_sum += sec2_scaled(xd, k)?;
    }
    let cos_sum = cos_sum.mul_pow2(-2);

    let y = xd.mul_pow2(-(m as i32));
    let p = sin_cos(y)?;
    // for |y| < 1 the nearest zero is the origin, excluded since x ≠ 0
    if y.hi.abs() >= 1.0 && p.sin_zero_distance() < POLE_TOLERANCE {
        return Err(Error::RecursionPole { k: m });
    }
    let remainder = p.sin.sqr().recip().mul_pow2(-2 * m as i32);
    Ok(RecursionDecomposition { x, m, cos_sum, remainder, total: cos_sum + remainder })
}

/// The `k`-sum of the expansion at `x = n`, split at level `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSums {
    /// `Σ_{k=0}^{L} n⁻³·4⁻ᵏ/cos²(n/2^{k+1})`.
    pub s1: DoubleDouble,
    /// `Σ_{k=L+1}^{m−1} n⁻³·4⁻ᵏ/cos²(n/2^{k+1})`.
    pub s2: DoubleDouble,
    /// `S₁·3·4^L·n³/(4^{L+1} − 1)`: the reciprocal of the effective
    /// averaged `cos²` over the first `L + 1` levels.
    pub ratio: f64,
    /// `n⁻³ Σ_{k=L+1}^{m−1} 4⁻ᵏ`, the value of S₂ with every `cos²` set to 1.
    pub s2_geometric: DoubleDouble,
}

#[allow(non_snake_case)]
pub fn split_S1_S2(n: u64, m: u32, L: u32) -> Result<SplitSums> {
    if n == 0 || !(2..=MAX_DEPTH).contains(&m) || L + 2 > m {
        return Err(Error::domain(
            "split_S1_S2",
            format!("need n >= 1, 2 <= m <= {MAX_DEPTH}, 0 <= L <= m-2; got n={n}, m={m}, L={L}"),
        ));
    }
    let nd = DoubleDouble::from(n as f64);
    let inv_n3 = nd.powi(-3);
    let mut s1 = DoubleDouble::ZERO;
    let mut s2 = DoubleDouble::ZERO;
    let mut geom = DoubleDouble::ZERO;
    for k in 0..m {
        let t = sec2_scaled(nd, k)?;
        if k <= L {
            s1 += t;
        } else {
            s2 += t;
            geom += DoubleDouble::ONE.mul_pow2(-2 * k as i32);
        }
    }
    let s1 = s1 * inv_n3;
    let s2 = s2 * inv_n3;
    let four_l = DoubleDouble::ONE.mul_pow2(2 * L as i32);
    let ratio = s1 * 3.0 * four_l * nd.powi(3) / (four_l * 4.0 - 1.0);
    Ok(SplitSums { s1, s2, ratio: ratio.to_f64(), s2_geometric: geom * inv_n3 })
}
