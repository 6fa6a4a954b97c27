//! Weierstrass classes: integer sets `λ` with `csc²λ = λ³ + aλ + b`, and the
//! polygamma expansion of Flint-Hills partial sums over such classes.
//!
//! Over a class, `csc²λ/λ³ = 1 + a/λ² + b/λ³`, so a block sum of consecutive
//! members is `κ + a[ψ'(λ_lo) − ψ'(I+1)] + (b/2)[ψ''(I+1) − ψ''(λ_lo)]`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::precision::{sin_int, CompensatedSum, DoubleDouble};
use crate::special::{tetragamma, trigamma};

/// Members whose certificate residual exceeds this are not class members.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct EllipticClass {
    pub a: DoubleDouble,
    pub b: DoubleDouble,
    pub members: Vec<u64>,
    /// `csc²λ/λ³ − (1 + a/λ² + b/λ³)` per member.
    pub residuals: Vec<f64>,
    pub discriminant: f64,
}

impl EllipticClass {
    /// Whether every member satisfies the curve relation to tolerance,
    /// relative to its own `csc²λ/λ³`.
    pub fn is_exact(&self) -> bool {
        self.members.iter().zip(&self.residuals).all(|(&l, r)| {
            let scale = csc2_over_cube(l).map(|v| v.to_f64()).unwrap_or(f64::INFINITY);
            r.abs() <= MEMBERSHIP_TOLERANCE * scale
        })
    }
}

fn csc2_over_cube(l: u64) -> Result<DoubleDouble> {
    Ok(sin_int(l)?.sqr().recip() / DoubleDouble::from(l as f64).powi(3))
}

/// `csc²λ − λ³`, the ordinate fitted by `aλ + b`.
fn ordinate(l: u64) -> Result<DoubleDouble> {
    Ok(sin_int(l)?.sqr().recip() - DoubleDouble::from(l as f64).powi(3))
}

fn discriminant_dd(a: DoubleDouble, b: DoubleDouble) -> DoubleDouble {
    (a.powi(3) * 4.0 + b.sqr() * 27.0) * -16.0
}

/// `Δ = −16(4a³ + 27b²)`.
pub fn discriminant(a: f64, b: f64) -> f64 {
    discriminant_dd(DoubleDouble::from(a), DoubleDouble::from(b)).to_f64()
}

fn residual_with(a: DoubleDouble, b: DoubleDouble, l: u64) -> Result<DoubleDouble> {
    let ld = DoubleDouble::from(l as f64);
    Ok((ordinate(l)? - a * ld - b) / ld.powi(3))
}

/// Fits `(a, b)` to the members: an exact line through two points, least
/// squares through more.
pub fn fit_class(members: &[u64]) -> Result<EllipticClass> {
    if members.len() < 2 {
        return Err(Error::Fit(format!("{} member(s) given, at least 2 required", members.len())));
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Fit(format!("duplicate members in {members:?}; the system is singular")));
    }
    if sorted[0] == 0 {
        return Err(Error::Fit("members must be positive".into()));
    }
    let xs: Vec<DoubleDouble> = members.iter().map(|&l| DoubleDouble::from(l as f64)).collect();
    let ys: Vec<DoubleDouble> = members.iter().map(|&l| ordinate(l)).collect::<Result<_>>()?;

    let (a, b) = if members.len() == 2 {
        let a = (ys[1] - ys[0]) / (xs[1] - xs[0]);
        (a, ys[0] - a * xs[0])
    } else {
        // centred normal equations
        let n = members.len() as f64;
        let mx: DoubleDouble = xs.iter().copied().sum::<DoubleDouble>() / n;
        let my: DoubleDouble = ys.iter().copied().sum::<DoubleDouble>() / n;
        let sxx: DoubleDouble = xs.iter().map(|x| (*x - mx).sqr()).sum();
        let sxy: DoubleDouble = xs.iter().zip(&ys).map(|(x, y)| (*x - mx) * (*y - my)).sum();
        let a = sxy / sxx;
        (a, my - a * mx)
    };

    let disc = discriminant_dd(a, b);
    if disc.is_zero() {
        return Err(Error::DegenerateCurve { a: a.to_f64(), b: b.to_f64() });
    }
    let residuals = members.iter().map(|&l| residual_with(a, b, l).map(|r| r.to_f64())).collect::<Result<_>>()?;
    Ok(EllipticClass { a, b, members: members.to_vec(), residuals, discriminant: disc.to_f64() })
}

/// `csc²λ/λ³ − (1 + a/λ² + b/λ³)`.
pub fn membership_residual(class: &EllipticClass, lambda: u64) -> Result<f64> {
    if lambda < 1 {
        return Err(Error::domain("membership_residual", "λ must be at least 1"));
    }
    Ok(residual_with(class.a, class.b, lambda)?.to_f64())
}

/// One block of consecutive integers `λ_lo..=I` expanded over a class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionTerm {
    pub kappa: u64,
    pub a: DoubleDouble,
    pub b: DoubleDouble,
    pub lambda_lo: u64,
    pub i_hi: u64,
}

impl ExpansionTerm {
    pub fn new(class: &EllipticClass, lambda_lo: u64, i_hi: u64) -> Result<Self> {
        if lambda_lo < 1 || i_hi < lambda_lo {
            return Err(Error::domain("expansion_term", format!("need 1 <= λ_lo <= I, got {lambda_lo}..{i_hi}")));
        }
        Ok(Self { kappa: i_hi - lambda_lo + 1, a: class.a, b: class.b, lambda_lo, i_hi })
    }

    /// `a[ψ'(λ_lo) − ψ'(I+1)] + (b/2)[ψ''(I+1) − ψ''(λ_lo)]`.
    pub fn correction(&self) -> Result<DoubleDouble> {
        let lo = self.lambda_lo as f64;
        let hi = (self.i_hi + 1) as f64;
        let inv_sq = trigamma(lo)? - trigamma(hi)?;
        let inv_cube = (tetragamma(hi)? - tetragamma(lo)?).mul_pow2(-1);
        Ok(self.a * inv_sq + self.b * inv_cube)
    }
}

/// `κ + a[ψ'(λ_lo) − ψ'(I+1)] + (b/2)[ψ''(I+1) − ψ''(λ_lo)]`.
pub fn class_partial_sum(term: &ExpansionTerm) -> Result<DoubleDouble> {
    if term.kappa != term.i_hi + 1 - term.lambda_lo {
        return Err(Error::Consistency(format!(
            "κ = {} does not count {}..={}",
            term.kappa, term.lambda_lo, term.i_hi
        )));
    }
    Ok(term.correction()? + term.kappa as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullExpansion {
    pub kappa_total: u64,
    pub correction_sum: DoubleDouble,
    pub value: DoubleDouble,
    pub blocks: usize,
    /// `Σ` of member residuals: direct partial sum minus `value`. Zero up to
    /// rounding when every block is an exact pair fit.
    pub residual_gap: DoubleDouble,
    /// Largest `|Δ|` relative to `16·27·b²` over the blocks; near zero the
    /// fitted curve is close to a cusp.
    pub min_relative_discriminant: f64,
}

/// Consecutive blocks of `chunk` members; a trailing singleton joins the
/// previous block.
pub fn blocks(n_lo: u64, n_hi: u64, chunk: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut lo = n_lo;
    while lo <= n_hi {
        let hi = (lo + chunk - 1).min(n_hi);
        out.push((lo, hi));
        lo = hi + 1;
    }
    if out.len() > 1 {
        let (last_lo, last_hi) = out[out.len() - 1];
        if last_lo == last_hi {
            out.pop();
            out.last_mut().expect("at least one block").1 = last_hi;
        }
    }
    out
}

struct BlockResult {
    correction: DoubleDouble,
    gap: DoubleDouble,
    relative_disc: f64,
}

fn expand_block(lo: u64, hi: u64) -> Result<BlockResult> {
    let members: Vec<u64> = if lo == hi { vec![lo, lo + 1] } else { (lo..=hi).collect() };
    let class = fit_class(&members).map_err(|e| match e {
        Error::Fit(msg) => Error::Fit(format!("block {lo}..={hi}: {msg}")),
        other => other,
    })?;
    let term = ExpansionTerm::new(&class, lo, hi)?;
    let mut gap = CompensatedSum::new();
    for l in lo..=hi {
        gap.add(residual_with(class.a, class.b, l)?);
    }
    let scale = (class.b.sqr() * 27.0 * 16.0).to_f64();
    Ok(BlockResult {
        correction: term.correction()?,
        gap: gap.value(),
        relative_disc: class.discriminant.abs() / scale,
    })
}

/// Flint-Hills partial sum over `n_lo..=n_hi` rebuilt from block classes.
pub fn full_expansion(n_lo: u64, n_hi: u64, chunk: u64) -> Result<FullExpansion> {
    if chunk < 2 {
        return Err(Error::domain("full_expansion", format!("chunk = {chunk} must be at least 2")));
    }
    if n_lo < 1 || n_hi < n_lo {
        return Err(Error::domain("full_expansion", format!("need 1 <= n_lo <= n_hi, got {n_lo}..{n_hi}")));
    }
    let spans = blocks(n_lo, n_hi, chunk);
    let results: Vec<BlockResult> = spans.par_iter().map(|&(lo, hi)| expand_block(lo, hi)).collect::<Result<_>>()?;
    let mut correction = CompensatedSum::new();
    let mut gap = CompensatedSum::new();
    let mut min_rel = f64::INFINITY;
    for r in &results {
        correction.add(r.correction);
        gap.add(r.gap);
        min_rel = min_rel.min(r.relative_disc);
    }
    let kappa_total: u64 = spans.iter().map(|(lo, hi)| hi - lo + 1).sum();
    let correction_sum = correction.value();
    Ok(FullExpansion {
        kappa_total,
        correction_sum,
        value: correction_sum + kappa_total as f64,
        blocks: spans.len(),
        residual_gap: gap.value(),
        min_relative_discriminant: min_rel,
    })
}
