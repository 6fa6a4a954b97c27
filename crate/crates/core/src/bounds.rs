//! Inequality chains around the Flint-Hills partial sums: truncated Hölder
//! bounds (plain and Fermi-Dirac weighted), the δ arithmetic, and the
//! double-sided polygamma bounds for Ψ(σ).

use crate::error::{Error, Result};
use crate::precision::{pi, sin_int, CompensatedSum, DoubleDouble};
use crate::series::lambda::lambda_weight;
use crate::series::{lambda_bessel, psi_from_lambda};
use crate::special::{fermi_dirac_f, tetragamma, trigamma, zeta};

/// Relative slack in [`BoundReport::satisfied`].
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderConjugates {
    pub p: f64,
    pub q: f64,
}

impl HolderConjugates {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::domain("holder", format!("p = {p} must be finite and exceed 1")));
        }
        Ok(Self { p, q: p / (p - 1.0) })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub margin: f64,
    pub params: Vec<(String, f64)>,
}

impl BoundReport {
    pub fn new(lhs: f64, rhs: f64, params: Vec<(String, f64)>) -> Self {
        let satisfied = lhs <= rhs + BOUND_SLACK * rhs.abs();
        Self { lhs, rhs, satisfied, margin: rhs - lhs, params }
    }
}

/// `csc²(k)/k^e` for `k = 1..=N`.
fn csc2_over_power(big_n: u64, e: i32) -> Result<Vec<DoubleDouble>> {
    (1..=big_n)
        .map(|k| Ok(sin_int(k)?.sqr().recip() / DoubleDouble::from(k as f64).powi(e)))
        .collect()
}

/// `(Σ bₖ^q)^{1/q}` through logarithms so spikes cannot overflow.
fn lq_norm(b: &[DoubleDouble], q: f64) -> f64 {
    let logs: Vec<DoubleDouble> = b.iter().map(|x| x.ln() * q).collect();
    let top = logs.iter().copied().fold(DoubleDouble::from(f64::NEG_INFINITY), |m, l| if l > m { l } else { m });
    let mut acc = CompensatedSum::new();
    for l in &logs {
        acc.add((*l - top).exp());
    }
    ((top + acc.value().ln()) / q).exp().to_f64()
}

fn check_n(op: &'static str, big_n: u64) -> Result<()> {
    if big_n < 1 {
        return Err(Error::domain(op, "N must be at least 1"));
    }
    Ok(())
}

/// `Σ_{k≤N} csc²k/k³ ≤ ζ(p)^{1/p}·(Σ_{k≤N}(csc²k/k²)^q)^{1/q}`.
pub fn holder_truncated(p: f64, big_n: u64) -> Result<BoundReport> {
    let hc = HolderConjugates::new(p)?;
    check_n("holder_truncated", big_n)?;
    let b = csc2_over_power(big_n, 2)?;
    let lhs: DoubleDouble = b.iter().enumerate().map(|(i, x)| *x / (i + 1) as f64).sum();
    let prefactor = zeta(p)?.to_f64().powf(1.0 / p);
    let rhs = prefactor * lq_norm(&b, hc.q);
    Ok(BoundReport::new(
        lhs.to_f64(),
        rhs,
        vec![("p".into(), p), ("q".into(), hc.q), ("N".into(), big_n as f64), ("prefactor".into(), prefactor)],
    ))
}

/// `Σ_{k≤N} e^{xk/p}·csc²k/k³` against `|F_p(x)|^{1/p}·(Σ(csc²k/k²)^q)^{1/q}`,
/// with `F_p` the factorial-free Fermi-Dirac series.
pub fn fermi_weighted_holder(p: f64, x: f64, big_n: u64) -> Result<BoundReport> {
    let hc = HolderConjugates::new(p)?;
    check_n("fermi_weighted_holder", big_n)?;
    let f = fermi_dirac_f(p, x)?;
    let b = csc2_over_power(big_n, 2)?;
    let lhs: DoubleDouble = b
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let k = (i + 1) as f64;
            *t / k * (DoubleDouble::from(x) * k / p).exp()
        })
        .sum();
    let prefactor = f.abs().powf(1.0 / p);
    let rhs = prefactor * lq_norm(&b, hc.q);
    Ok(BoundReport::new(
        lhs.to_f64(),
        rhs,
        vec![
            ("p".into(), p),
            ("q".into(), hc.q),
            ("x".into(), x),
            ("N".into(), big_n as f64),
            ("fermi_dirac".into(), f),
            ("prefactor".into(), prefactor),
        ],
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaBound {
    pub delta_squared: f64,
    pub delta: f64,
}

/// `δ² = (π²/6)/((4/3)ζ(3) + (2√3/(3π))·c₁)`.
pub fn delta_from_c1(c1: f64) -> Result<DeltaBound> {
    if !c1.is_finite() {
        return Err(Error::domain("delta_from_c1", format!("c1 = {c1} must be finite")));
    }
    let denom = zeta(3.0)? * 4.0 / 3.0 + lambda_weight() * c1;
    if !(denom.hi > 0.0) {
        return Err(Error::domain("delta_from_c1", format!("denominator {} is not positive", denom.hi)));
    }
    let sq = pi().sqr() / 6.0 / denom;
    Ok(DeltaBound { delta_squared: sq.to_f64(), delta: sq.sqrt().to_f64() })
}

/// Both sides of the σ-bounds on Ψ(σ) together with their ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleSidedBounds {
    pub sigma: u64,
    pub lambda: DoubleDouble,
    /// `(4/3)ζ(3)`.
    pub zeta_term: DoubleDouble,
    /// `(σ² + 12)/(18σ⁴(σ+1)²)`.
    pub lower_middle: DoubleDouble,
    /// `(σ + 12)/(18σ⁴(σ+1))`.
    pub upper_middle: DoubleDouble,
    /// `(2√3/(3π))·Λ(σ)`.
    pub lambda_term: DoubleDouble,
    /// `−(2/3)[ψ'(σ)]²`.
    pub trigamma_term: DoubleDouble,
    pub lower: DoubleDouble,
    pub upper: DoubleDouble,
    pub psi_value: DoubleDouble,
    /// `lower − Ψ(σ)`, free of the shared terms' rounding.
    pub lower_gap: DoubleDouble,
    /// `upper − Ψ(σ)`.
    pub upper_gap: DoubleDouble,
    pub contained: bool,
}

pub fn double_sided_bounds(sigma: u64) -> Result<DoubleSidedBounds> {
    if sigma < 2 {
        return Err(Error::domain("double_sided_bounds", format!("σ = {sigma} must be at least 2")));
    }
    let lambda = lambda_bessel(sigma)?.value;
    double_sided_bounds_with_lambda(sigma, lambda)
}

/// As [`double_sided_bounds`] with Λ(σ) supplied by the caller.
pub fn double_sided_bounds_with_lambda(sigma: u64, lambda: DoubleDouble) -> Result<DoubleSidedBounds> {
    if sigma < 2 {
        return Err(Error::domain("double_sided_bounds", format!("σ = {sigma} must be at least 2")));
    }
    let s = DoubleDouble::from(sigma as f64);
    let s4 = s.powi(4);
    let lower_middle = (s.sqr() + 12.0) / (s4 * (s + 1.0).sqr() * 18.0);
    let upper_middle = (s + 12.0) / (s4 * (s + 1.0) * 18.0);
    let zeta_term = zeta(3.0)? * 4.0 / 3.0;
    let lambda_term = lambda_weight() * lambda;
    let psi1 = trigamma(sigma as f64)?;
    let psi2 = tetragamma(sigma as f64)?;
    let trigamma_term = -(psi1.sqr() * 2.0 / 3.0);
    let shared = zeta_term + lambda_term + trigamma_term;
    let lower = shared + lower_middle;
    let upper = shared + upper_middle;
    let psi_value = psi_from_lambda(sigma, lambda)?;
    let two_thirds_pq = (psi1.sqr() + psi2) * 2.0 / 3.0;
    let lower_gap = lower_middle - two_thirds_pq;
    let upper_gap = upper_middle - two_thirds_pq;
    let contained = lower_gap.hi <= 0.0 && upper_gap.hi >= 0.0;
    Ok(DoubleSidedBounds {
        sigma,
        lambda,
        zeta_term,
        lower_middle,
        upper_middle,
        lambda_term,
        trigamma_term,
        lower,
        upper,
        psi_value,
        lower_gap,
        upper_gap,
        contained,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichReport {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    /// `middle − lower`.
    pub lower_gap: f64,
    /// `upper − middle`.
    pub upper_gap: f64,
    pub satisfied: bool,
}

/// `(x²+12k²)/(12x⁴(x+k)²) < [ψ'(x)]² + ψ''(x)/k < (x+12k)/(12x⁴(x+k))`
/// for `k = 1`.
#[allow(non_snake_case)]
pub fn monotonic_PQ_check(x: f64, k: f64) -> Result<SandwichReport> {
    if k != 1.0 {
        return Err(Error::Unsupported(format!("k-polygamma with k = {k}; only k = 1 is implemented")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("monotonic_PQ_check", format!("x = {x} must be positive")));
    }
    let xd = DoubleDouble::from(x);
    let x4 = xd.powi(4);
    let lower = (xd.sqr() + 12.0) / (x4 * (xd + 1.0).sqr() * 12.0);
    let upper = (xd + 12.0) / (x4 * (xd + 1.0) * 12.0);
    let middle = trigamma(x)?.sqr() + tetragamma(x)?;
    let lower_gap = middle - lower;
    let upper_gap = upper - middle;
    Ok(SandwichReport {
        lower: lower.to_f64(),
        middle: middle.to_f64(),
        upper: upper.to_f64(),
        lower_gap: lower_gap.to_f64(),
        upper_gap: upper_gap.to_f64(),
        satisfied: lower_gap.hi > 0.0 && upper_gap.hi > 0.0,
    })
}
