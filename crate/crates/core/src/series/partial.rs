use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::precision::dd::EPS;
use crate::precision::{CompensatedSum, DoubleDouble};

use super::spec::{Kernel, SeriesSpec, Weight};

const PARALLEL_CHUNK: u64 = 4096;

/// A new running record of `|f(φn)|^v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spike {
    pub index: u64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumReport {
    pub spec: SeriesSpec,
    pub n_lo: u64,
    pub n_hi: u64,
    pub value: DoubleDouble,
    pub n_terms: u64,
    pub max_term: f64,
    pub max_term_index: u64,
    pub spikes: Vec<Spike>,
    pub error_bound: f64,
}

#[derive(Debug, Clone, Default)]
struct Accumulator {
    sum: CompensatedSum,
    reduction_err: f64,
    max_term: f64,
    max_term_index: u64,
    record: f64,
    spikes: Vec<Spike>,
}

impl Accumulator {
    fn push(&mut self, spec: &SeriesSpec, n: u64) -> Result<()> {
        let t = spec.term(n)?;
        self.sum.add(t.value);
        let mag = t.value.abs().to_f64();
        self.reduction_err += mag * t.rel_err;
        if mag > self.max_term || self.max_term_index == 0 {
            self.max_term = mag;
            self.max_term_index = n;
        }
        if t.numerator_abs > self.record {
            self.record = t.numerator_abs;
            self.spikes.push(Spike { index: n, magnitude: t.numerator_abs });
        }
        Ok(())
    }

    /// Appends an accumulator covering the next range.
    fn merge(&mut self, other: Accumulator) {
        self.sum.merge(&other.sum);
        self.reduction_err += other.reduction_err;
        if other.max_term > self.max_term || self.max_term_index == 0 {
            self.max_term = other.max_term;
            self.max_term_index = other.max_term_index;
        }
        for s in other.spikes {
            if s.magnitude > self.record {
                self.record = s.magnitude;
                self.spikes.push(s);
            }
        }
    }

    fn finish(self, spec: &SeriesSpec, n_lo: u64, n_hi: u64) -> PartialSumReport {
        let value = self.sum.value();
        let n_terms = n_hi - n_lo + 1;
        let arithmetic = (8.0 + n_terms as f64) * EPS * self.sum.abs_total();
        PartialSumReport {
            spec: spec.clone(),
            n_lo,
            n_hi,
            value,
            n_terms,
            max_term: self.max_term,
            max_term_index: self.max_term_index,
            spikes: self.spikes,
            error_bound: arithmetic + self.reduction_err,
        }
    }
}

fn check_range(spec: &SeriesSpec, n_lo: u64, n_hi: u64) -> Result<()> {
    spec.validate()?;
    if n_lo < 1 || n_hi < n_lo {
        return Err(Error::domain("partial_sum", format!("need 1 <= n_lo <= n_hi, got {n_lo}..{n_hi}")));
    }
    Ok(())
}

/// Sequential compensated sum of terms `n_lo..=n_hi`. This is the normative
/// result.
pub fn partial_sum(spec: &SeriesSpec, n_lo: u64, n_hi: u64) -> Result<PartialSumReport> {
    check_range(spec, n_lo, n_hi)?;
    let mut acc = Accumulator::default();
    for n in n_lo..=n_hi {
        acc.push(spec, n)?;
    }
    Ok(acc.finish(spec, n_lo, n_hi))
}

/// Chunked parallel variant. Chunk boundaries are fixed and chunk results
/// are merged in index order, so the output does not depend on thread count.
pub fn partial_sum_parallel(spec: &SeriesSpec, n_lo: u64, n_hi: u64) -> Result<PartialSumReport> {
    check_range(spec, n_lo, n_hi)?;
    let starts: Vec<u64> = (n_lo..=n_hi).step_by(PARALLEL_CHUNK as usize).collect();
    let chunks: Vec<Accumulator> = starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + PARALLEL_CHUNK - 1).min(n_hi);
            let mut acc = Accumulator::default();
            for n in lo..=hi {
                acc.push(spec, n)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = Accumulator::default();
    for c in chunks {
        total.merge(c);
    }
    Ok(total.finish(spec, n_lo, n_hi))
}

/// Summatory function `A(x) = Σ_{n ≤ ⌊x⌋} f(φn)^v·w(n)` of the series
/// numerators, with `A(x) = 0` for `x < 1`.
pub fn summatory(spec: &SeriesSpec, x: f64) -> Result<DoubleDouble> {
    if !(x >= 1.0) {
        return Ok(DoubleDouble::ZERO);
    }
    let numer = SeriesSpec { s: 0.0, ..spec.clone() };
    let mut acc = CompensatedSum::new();
    for n in 1..=x.floor() as u64 {
        acc.add(numer.term(n)?.value);
    }
    Ok(acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelCheck {
    /// Direct partial sum `Σ_{n ≤ N} aₙ n⁻ˢ`.
    pub lhs: DoubleDouble,
    /// `A(N)·N⁻ˢ − Σ_{n<N} A(n)·((n+1)⁻ˢ − n⁻ˢ)`.
    pub rhs: DoubleDouble,
}

impl AbelCheck {
    pub fn relative_gap(&self) -> f64 {
        if self.lhs.is_zero() {
            return (self.lhs - self.rhs).abs().to_f64();
        }
        ((self.lhs - self.rhs) / self.lhs).abs().to_f64()
    }
}

/// Summation by parts with the numerators `aₙ` and `bₙ = n⁻ˢ`; `A(0) = 0`.
pub fn abel_check(spec: &SeriesSpec, big_n: u64) -> Result<AbelCheck> {
    if big_n < 1 {
        return Err(Error::domain("abel_check", "N must be at least 1"));
    }
    spec.validate()?;
    let numer = SeriesSpec { s: 0.0, ..spec.clone() };
    let b = |n: u64| DoubleDouble::from(n as f64).powf(-spec.s);

    let mut direct = CompensatedSum::new();
    let mut running = CompensatedSum::new();
    let mut parts = CompensatedSum::new();
    for n in 1..=big_n {
        let a = numer.term(n)?.value;
        running.add(a);
        let bn = b(n);
        direct.add(a * bn);
        if n < big_n {
            parts.add(-(running.value() * (b(n + 1) - bn)));
        }
    }
    parts.add(running.value() * b(big_n));
    Ok(AbelCheck { lhs: direct.value(), rhs: parts.value() })
}

/// `∫ term(t) d⌊t⌋` over `(x_lo, x_hi]`: the jump at integer `n` contributes
/// the term at `n`.
pub fn stieltjes_floor_sum(spec: &SeriesSpec, x_lo: f64, x_hi: f64) -> Result<DoubleDouble> {
    if !(x_lo >= 1.0) || !(x_hi >= x_lo) || !x_hi.is_finite() {
        return Err(Error::domain(
            "stieltjes_floor_sum",
            format!("need 1 <= x_lo <= x_hi, got ({x_lo}, {x_hi})"),
        ));
    }
    let first = x_lo.floor() as u64 + 1;
    let last = x_hi.floor() as u64;
    if last < first {
        return Ok(DoubleDouble::ZERO);
    }
    match partial_sum(spec, first, last) {
        Ok(r) => Ok(r.value),
        Err(Error::Pole { n, .. }) => Err(Error::CommonDiscontinuity { n }),
        Err(e) => Err(e),
    }
}

/// `Σ_{n ≤ N} χ(n)/nˢ` with `table = [χ(1), …, χ(k)]`.
pub fn character_series(table: &[f64], s: f64, big_n: u64) -> Result<DoubleDouble> {
    if !(s > 1.0) {
        return Err(Error::domain("character_series", format!("s = {s} must exceed 1")));
    }
    if big_n == 0 {
        return Ok(DoubleDouble::ZERO);
    }
    let spec = SeriesSpec::new(Kernel::One, 0.0, s).with_weight(Weight::Periodic(table.to_vec()));
    Ok(partial_sum(&spec, 1, big_n)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CotIdentity {
    pub csc_sum: DoubleDouble,
    pub cot_sum: DoubleDouble,
    pub cube_sum: DoubleDouble,
    pub relative_residual: f64,
}

/// `Σ csc²/n³ − Σ cot²/n³ = Σ n⁻³` over `n ≤ N`, checked to 10⁻¹⁸.
pub fn cot_sec_identity_check(big_n: u64) -> Result<CotIdentity> {
    let csc_sum = partial_sum(&SeriesSpec::flint_hills(), 1, big_n)?.value;
    let cot_sum = partial_sum(&SeriesSpec::new(Kernel::Cot, 2.0, 3.0), 1, big_n)?.value;
    let cube_sum = partial_sum(&SeriesSpec::new(Kernel::One, 0.0, 3.0), 1, big_n)?.value;
    let relative_residual = ((csc_sum - cot_sum - cube_sum) / cube_sum).abs().to_f64();
    if relative_residual > 1e-18 {
        return Err(Error::Consistency(format!(
            "csc² − cot² partial sums differ from Σn⁻³ by {relative_residual:e} (relative)"
        )));
    }
    Ok(CotIdentity { csc_sum, cot_sum, cube_sum, relative_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::spec::Phase;

    #[test]
    fn single_term_report() {
        let r = partial_sum(&SeriesSpec::flint_hills(), 1, 1).unwrap();
        assert_eq!(r.n_terms, 1);
        assert_eq!(r.spikes.len(), 1);
        assert_eq!(r.max_term_index, 1);
        assert!(r.error_bound < 1e-28);
    }

    #[test]
    fn empty_range_rejected() {
        assert!(partial_sum(&SeriesSpec::flint_hills(), 5, 4).is_err());
        assert!(partial_sum(&SeriesSpec::flint_hills(), 0, 4).is_err());
    }

    #[test]
    fn spikes_up_to_400() {
        let r = partial_sum(&SeriesSpec::flint_hills(), 1, 400).unwrap();
        let idx: Vec<u64> = r.spikes.iter().map(|s| s.index).collect();
        assert_eq!(idx, [1, 3, 22, 333, 355]);
        assert_eq!(r.max_term_index, 355);
    }

    #[test]
    fn parallel_matches_sequential() {
        let spec = SeriesSpec::flint_hills();
        let a = partial_sum(&spec, 3, 20_000).unwrap();
        let b = partial_sum_parallel(&spec, 3, 20_000).unwrap();
        assert!(((a.value - b.value) / a.value).abs().to_f64() < 1e-20);
        assert_eq!(a.spikes, b.spikes);
        assert_eq!(a.max_term_index, b.max_term_index);
    }

    #[test]
    fn cookson_hills_has_no_integer_poles() {
        let r = partial_sum(&SeriesSpec::cookson_hills(), 1, 1000).unwrap();
        assert!(r.value.is_finite());
    }

    #[test]
    fn summatory_starts_at_zero() {
        let spec = SeriesSpec::flint_hills();
        assert_eq!(summatory(&spec, 0.0).unwrap(), DoubleDouble::ZERO);
        assert_eq!(summatory(&spec, 0.999).unwrap(), DoubleDouble::ZERO);
        let a1 = summatory(&spec, 1.5).unwrap();
        let s1 = crate::precision::sin_int(1).unwrap();
        assert!((a1 * s1.sqr() - 1.0).abs().to_f64() < 1e-30);
    }

    #[test]
    fn abel_single_term() {
        let c = abel_check(&SeriesSpec::flint_hills(), 1).unwrap();
        assert_eq!(c.lhs, c.rhs);
        assert!(abel_check(&SeriesSpec::flint_hills(), 0).is_err());
    }

    #[test]
    fn stieltjes_jump_convention() {
        let spec = SeriesSpec::flint_hills();
        assert_eq!(stieltjes_floor_sum(&spec, 1.0, 1.0).unwrap(), DoubleDouble::ZERO);
        let got = stieltjes_floor_sum(&spec, 1.0, 10.5).unwrap();
        let want = partial_sum(&spec, 2, 10).unwrap().value;
        assert_eq!(got, want);
        let rational = spec.with_phase(Phase::PiTimes(0.25));
        assert_eq!(
            stieltjes_floor_sum(&rational, 1.0, 5.0).unwrap_err(),
            Error::CommonDiscontinuity { n: 4 }
        );
    }

    #[test]
    fn alternating_character_approaches_eta2() {
        let v = character_series(&[1.0, -1.0], 2.0, 100_000).unwrap().to_f64();
        let eta2 = std::f64::consts::PI.powi(2) / 12.0;
        // alternating remainder is below the first omitted term
        assert!((v - eta2).abs() < 1.0 / 100_001f64.powi(2));
    }

    #[test]
    fn pythagorean_first_term() {
        let c = cot_sec_identity_check(1).unwrap();
        assert!((c.csc_sum - c.cot_sum - 1.0).abs().to_f64() < 1e-30);
    }
}
