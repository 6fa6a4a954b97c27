//! Polygamma functions and the Riemann zeta function in double-double.
//!
//! Both use Bernoulli-number asymptotics: polygamma shifts its argument up
//! with the recurrence `ψ⁽ᵐ⁾(x+1) = ψ⁽ᵐ⁾(x) + (−1)ᵐ m!/xᵐ⁺¹` until `x >= 30`
//! and then sums fifteen Bernoulli terms; zeta is Euler–Maclaurin with the
//! head summed to N = 32 and fifteen correction terms.

use crate::error::{Error, Result};
use crate::precision::{CompensatedSum, DoubleDouble};

/// B₂, B₄, …, B₃₀ as exact fractions.
const BERNOULLI_EVEN: [(i128, i128); 15] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
];

const SHIFT_THRESHOLD: f64 = 30.0;
const EM_CUTOFF: u32 = 32;

/// Order of a polygamma function, restricted to `1..=6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygammaOrder(u32);

impl PolygammaOrder {
    pub const TRIGAMMA: Self = Self(1);
    pub const TETRAGAMMA: Self = Self(2);
    pub const PENTAGAMMA: Self = Self(3);

    pub fn new(m: u32) -> Result<Self> {
        if (1..=6).contains(&m) {
            Ok(Self(m))
        } else {
            Err(Error::domain("polygamma", format!("order {m} outside 1..=6")))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

/// ψ⁽ᵐ⁾(x) for `x > 0`.
pub fn polygamma(m: PolygammaOrder, x: f64) -> Result<DoubleDouble> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("polygamma", format!("x = {x} must be positive and finite")));
    }
    let m = m.get();
    let m_fact = factorial(m) as f64;
    let mut y = DoubleDouble::from(x);
    let mut shift = CompensatedSum::new();
    while y.hi < SHIFT_THRESHOLD {
        shift.add(y.powi(-(m as i32 + 1)));
        y += 1.0;
    }

    let inv = y.recip();
    let inv2 = inv.sqr();
    let mut series = DoubleDouble::ZERO;
    for (k, &(num, den)) in BERNOULLI_EVEN.iter().enumerate().rev() {
        let two_k = 2 * (k as i128 + 1);
        // (2k+m−1)!/(2k)!
        let rising: i128 = (two_k + 1..two_k + m as i128).product();
        let coef = DoubleDouble::ratio(num * rising, den);
        series = (series + coef) * inv2;
    }
    let head = DoubleDouble::from(factorial(m - 1) as f64) + inv * (m_fact * 0.5);
    let asym = inv.powi(m as i32) * (head + series);

    let bracket = shift.value() * m_fact + asym;
    Ok(if m % 2 == 1 { bracket } else { -bracket })
}

pub fn trigamma(x: f64) -> Result<DoubleDouble> {
    polygamma(PolygammaOrder::TRIGAMMA, x)
}

pub fn tetragamma(x: f64) -> Result<DoubleDouble> {
    polygamma(PolygammaOrder::TETRAGAMMA, x)
}

/// Riemann zeta for real `s > 1`.
pub fn zeta(s: f64) -> Result<DoubleDouble> {
    if !(s > 1.0) || s.is_nan() {
        return Err(Error::domain("zeta", format!("s = {s} must exceed 1")));
    }
    if s > 200.0 {
        // 2^-200 is already far below double-double resolution
        return Ok(DoubleDouble::ONE + DoubleDouble::from(2.0).powf(-s));
    }
    let mut head = CompensatedSum::new();
    for n in 1..EM_CUTOFF {
        head.add(DoubleDouble::from(n as f64).powf(-s));
    }
    let big_n = DoubleDouble::from(EM_CUTOFF as f64);
    let n_pow = big_n.powf(-s);
    let mut tail = n_pow * big_n / (s - 1.0) + n_pow * 0.5;

    // B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let inv_n = big_n.recip();
    let inv_n2 = inv_n.sqr();
    let mut rising = DoubleDouble::from(s);
    let mut power = n_pow * inv_n;
    for (k, &(num, den)) in BERNOULLI_EVEN.iter().enumerate() {
        let two_k = 2 * (k as u32 + 1);
        if k > 0 {
            rising = rising * (s + two_k as f64 - 3.0) * (s + two_k as f64 - 2.0);
            power *= inv_n2;
        }
        let coef = DoubleDouble::ratio(num, den * factorial(two_k));
        tail += coef * rising * power;
    }
    Ok(head.value() + tail)
}

/// `Σ_{n≥σ} n⁻³`, evaluated as `−ψ''(σ)/2`.
pub fn zeta3_tail(sigma: u64) -> Result<DoubleDouble> {
    if sigma == 0 {
        return Err(Error::domain("zeta3_tail", "sigma must be at least 1"));
    }
    Ok(-tetragamma(sigma as f64)?.mul_pow2(-1))
}
