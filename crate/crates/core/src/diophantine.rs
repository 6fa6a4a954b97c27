//! Continued-fraction convergents of a decimal digit string, spike/convergent
//! correlation, and irrationality-exponent diagnostics.
//!
//! All approximation errors are formed as exact rationals against the digit
//! string; only the final conversion to `f64` (or its logarithm) rounds.

use std::collections::BTreeSet;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::{partial_sum_parallel, Kernel, SeriesSpec};

/// π to 100 decimal places.
pub const PI_100: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

/// Minimum number of significant digits accepted in a digit string.
pub const MIN_SIGNIFICANT_DIGITS: usize = 60;

/// A real number given by finitely many decimal digits, `numer / 10^scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitString {
    pub numer: BigInt,
    pub scale: u32,
    pub significant_digits: usize,
}

impl DigitString {
    /// Parses the digit-string file format: one content line holding an
    /// optional sign, decimal digits and at most one period. Text after `#`
    /// is a comment and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut content = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let line = content.next().ok_or_else(|| Error::Parse("no digits found".into()))?;
        if content.next().is_some() {
            return Err(Error::Parse("expected a single line of digits".into()));
        }
        let (negative, body) = match line.as_bytes()[0] {
            b'-' => (true, &line[1..]),
            b'+' => (false, &line[1..]),
            _ => (false, line),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if frac_part.contains('.') {
            return Err(Error::Parse("more than one period".into()));
        }
        let digits = format!("{int_part}{frac_part}");
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("'{line}' is not a decimal number")));
        }
        let significant_digits = digits.trim_start_matches('0').len();
        if significant_digits < MIN_SIGNIFICANT_DIGITS {
            return Err(Error::Parse(format!(
                "{significant_digits} significant digits given, at least {MIN_SIGNIFICANT_DIGITS} required"
            )));
        }
        let mut numer: BigInt = digits.parse().map_err(|_| Error::Parse("bad digits".into()))?;
        if negative {
            numer = -numer;
        }
        Ok(Self { numer, scale: frac_part.len() as u32, significant_digits })
    }

    pub fn pi() -> Self {
        Self::parse(PI_100).expect("built-in literal")
    }

    pub fn denom(&self) -> BigInt {
        BigInt::from(10u32).pow(self.scale)
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.numer, &self.denom())
    }
}

/// `num/den` rounded to `f64`, for arbitrarily large operands.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = 64i64 - (num.bits() as i64 - den.bits() as i64);
    let scaled = if shift >= 0 { (num << shift as u64) / den } else { num / (den << (-shift) as u64) };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let drop = bits - 64;
    (x >> drop).to_f64().unwrap_or(f64::NAN).ln() + drop as f64 * std::f64::consts::LN_2
}

/// One continued-fraction convergent `p/q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergent {
    /// Partial quotient that produced this convergent.
    pub a: BigInt,
    pub p: BigInt,
    pub q: BigInt,
    /// `|α − p/q|`.
    pub abs_error: f64,
    /// `ln|α − p/q|`, `−∞` for an exact match.
    pub ln_abs_error: f64,
    /// `−ln|α − p/q| / ln q`, defined for `q >= 2` and nonzero error.
    pub eff_exponent: Option<f64>,
}

struct Expansion {
    convergents: Vec<Convergent>,
    terminated: bool,
}

/// Partial quotients of `num/den`, at most `limit` of them.
fn quotients(mut num: BigInt, mut den: BigInt, limit: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    while out.len() < limit && !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        out.push(a);
        num = std::mem::replace(&mut den, r);
    }
    out
}

/// Number of leading partial quotients shared by every real within one unit
/// of the last digit. Those quotients, and the convergents built from them,
/// do not depend on the digits that were cut off.
fn certified_depth(alpha: &DigitString, limit: usize) -> usize {
    let den = alpha.denom();
    let lo = quotients(&alpha.numer - 1, den.clone(), limit.saturating_add(1));
    let hi = quotients(&alpha.numer + 1, den, limit.saturating_add(1));
    let common = lo.iter().zip(&hi).take_while(|(a, b)| a == b).count();
    // the final shared quotient of a terminating endpoint is not yet settled
    common.min(lo.len().min(hi.len()).saturating_sub(1)).min(limit)
}

fn expand(alpha: &DigitString, limit: usize) -> Expansion {
    let den = alpha.denom();
    let (mut num, mut d) = (alpha.numer.clone(), den.clone());
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    let mut convergents = Vec::new();
    let mut terminated = false;
    while convergents.len() < limit {
        let (a, r) = num.div_mod_floor(&d);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);

        // |α_digits − p/q| = |numer·q − p·den| / (den·q)
        let err_num = (&alpha.numer * &q - &p * &den).abs();
        let err_den = &den * &q;
        let (abs_error, ln_abs_error) = if err_num.is_zero() {
            (0.0, f64::NEG_INFINITY)
        } else {
            (ratio_to_f64(&err_num, &err_den), ln_big(&err_num) - ln_big(&err_den))
        };
        let eff_exponent = (q > BigInt::one() && !err_num.is_zero()).then(|| -ln_abs_error / ln_big(&q));
        convergents.push(Convergent { a, p: p.clone(), q: q.clone(), abs_error, ln_abs_error, eff_exponent });

        if r.is_zero() {
            terminated = true;
            break;
        }
        num = std::mem::replace(&mut d, r);
    }
    Expansion { convergents, terminated }
}

/// The first `count` convergents of `alpha`. A terminating expansion (an
/// exactly rational digit string) ends the list early.
pub fn convergents_of(alpha: &DigitString, count: usize) -> Result<Vec<Convergent>> {
    if count < 1 {
        return Err(Error::domain("convergents_of", "count must be at least 1"));
    }
    if alpha.numer.sign() != Sign::Plus {
        return Err(Error::domain("convergents_of", "α must be positive"));
    }
    let exp = expand(alpha, count);
    if certified_depth(alpha, count) >= exp.convergents.len() || exact_rational(alpha, &exp) {
        return Ok(exp.convergents);
    }
    Err(Error::Depth { requested: count, max: max_safe_depth(alpha) })
}

/// A digit string always has a finite expansion; it counts as an exact
/// rational when the expansion ends before the digits stop determining it.
fn exact_rational(alpha: &DigitString, exp: &Expansion) -> bool {
    exp.terminated && exp.convergents.len() <= certified_depth(alpha, exp.convergents.len()) + 1
}

/// Largest convergent count the digits support.
pub fn max_safe_depth(alpha: &DigitString) -> usize {
    let exp = expand(alpha, usize::MAX);
    if exact_rational(alpha, &exp) {
        exp.convergents.len()
    } else {
        certified_depth(alpha, usize::MAX)
    }
}

/// Convergents with denominator at most `q_max`.
pub fn convergents_up_to(alpha: &DigitString, q_max: u64) -> Result<Vec<Convergent>> {
    let all = convergents_of(alpha, max_safe_depth(alpha).max(1))?;
    let bound = BigInt::from(q_max);
    Ok(all.into_iter().take_while(|c| c.q <= bound).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpikeCorrelation {
    pub index: u64,
    /// `|csc(index)|`.
    pub magnitude: f64,
    pub is_convergent_numerator: bool,
}

/// Running records of `|csc n|` for `n <= n_max`, flagged by membership in
/// the convergent numerators of π. `n = 1` opens the record sequence but is
/// not a numerator.
pub fn spike_correlate(n_max: u64) -> Result<Vec<SpikeCorrelation>> {
    let spec = SeriesSpec::new(Kernel::Csc, 1.0, 0.0);
    let report = partial_sum_parallel(&spec, 1, n_max)?;
    let numerators: BTreeSet<u64> = convergents_of(&DigitString::pi(), max_safe_depth(&DigitString::pi()))?
        .iter()
        .filter_map(|c| c.p.to_u64())
        .filter(|&p| p <= n_max)
        .collect();
    Ok(report
        .spikes
        .iter()
        .map(|s| SpikeCorrelation {
            index: s.index,
            magnitude: s.magnitude,
            is_convergent_numerator: numerators.contains(&s.index),
        })
        .collect())
}

/// Largest effective exponent over the list, with the index attaining it.
pub fn effective_mu(conv: &[Convergent]) -> Result<(f64, usize)> {
    if conv.is_empty() {
        return Err(Error::domain("effective_mu", "empty convergent list"));
    }
    conv.iter()
        .enumerate()
        .filter_map(|(i, c)| c.eff_exponent.map(|e| (e, i)))
        .fold(None, |best: Option<(f64, usize)>, (e, i)| match best {
            Some((b, _)) if b >= e => best,
            _ => Some((e, i)),
        })
        .ok_or_else(|| Error::domain("effective_mu", "no convergent with q >= 2 and nonzero error"))
}

/// Whether `|α − p/q| < q^{−(μ−ε)}`.
pub fn epsilon_good(alpha: &DigitString, p: &BigInt, q: &BigInt, mu: f64, eps: f64) -> Result<bool> {
    if *q < BigInt::from(2) {
        return Err(Error::domain("epsilon_good", "q must be at least 2"));
    }
    if !(eps > 0.0) {
        return Err(Error::domain("epsilon_good", format!("ε = {eps} must be positive")));
    }
    let den = alpha.denom();
    let err_num = (&alpha.numer * q - p * &den).abs();
    if err_num.is_zero() {
        return Ok(true);
    }
    let ln_err = ln_big(&err_num) - ln_big(&(&den * q));
    Ok(ln_err < -(mu - eps) * ln_big(q))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuCondition {
    pub u: f64,
    pub v: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePredicates {
    /// `μ < 1 + u/v`.
    pub meiburg_converges: bool,
    /// `1 + u/v`, the measure bound implied by convergence.
    pub alekseyev_upper: f64,
}

pub fn convergence_predicates(c: MuCondition) -> Result<ConvergencePredicates> {
    if !(c.u > 0.0) || !(c.v >= 1.0) || !c.mu.is_finite() {
        return Err(Error::domain("convergence_predicates", format!("need u > 0, v >= 1; got {c:?}")));
    }
    let threshold = 1.0 + c.u / c.v;
    Ok(ConvergencePredicates { meiburg_converges: c.mu < threshold, alekseyev_upper: threshold })
}

/// `min q^e·|α − p/q|` over the convergents with nonzero error, and the index
/// attaining it.
pub fn floor_constant_c(conv: &[Convergent], exponent: f64) -> Result<(f64, usize)> {
    if conv.is_empty() {
        return Err(Error::domain("floor_constant_C", "empty convergent list"));
    }
    if !(exponent > 0.0) {
        return Err(Error::domain("floor_constant_C", format!("exponent {exponent} must be positive")));
    }
    conv.iter()
        .enumerate()
        .filter(|(_, c)| c.ln_abs_error.is_finite())
        .map(|(i, c)| ((exponent * ln_big(&c.q) + c.ln_abs_error).exp(), i))
        .fold(None, |best: Option<(f64, usize)>, (v, i)| match best {
            Some((b, _)) if b <= v => best,
            _ => Some((v, i)),
        })
        .ok_or_else(|| Error::domain("floor_constant_C", "every convergent is exact"))
}

/// One published upper bound on the irrationality measure of π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuRecord {
    pub bound: f64,
    pub author: &'static str,
    pub year: u16,
}

pub const MU_PI_HISTORY: [MuRecord; 5] = [
    MuRecord { bound: 42.0, author: "Mahler", year: 1953 },
    MuRecord { bound: 20.6, author: "Mignotte", year: 1974 },
    MuRecord { bound: 14.65, author: "Chudnovsky", year: 1982 },
    MuRecord { bound: 13.398, author: "Hata", year: 1993 },
    MuRecord { bound: 7.6063, author: "Salikhov", year: 2008 },
];

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> DigitString {
        DigitString::parse(&format!("2.{}", "0".repeat(59))).unwrap()
    }

    #[test]
    fn parser_accepts_file_format() {
        let text = format!("# pi\n\n{PI_100}  # trailing\n");
        assert_eq!(DigitString::parse(&text).unwrap(), DigitString::pi());
        assert_eq!(DigitString::pi().significant_digits, 101);
        let neg = DigitString::parse(&format!("-{PI_100}")).unwrap();
        assert!(neg.numer.is_negative());
    }

    #[test]
    fn parser_rejects_malformed() {
        assert!(DigitString::parse("3.14").is_err());
        assert!(DigitString::parse(&format!("{PI_100}.1")).is_err());
        assert!(DigitString::parse(&format!("{PI_100}\n{PI_100}")).is_err());
        assert!(DigitString::parse(&PI_100.replace('5', "x")).is_err());
        assert!(DigitString::parse("# only a comment").is_err());
    }

    #[test]
    fn pi_numerators() {
        let c = convergents_of(&DigitString::pi(), 6).unwrap();
        let p: Vec<u64> = c.iter().map(|c| c.p.to_u64().unwrap()).collect();
        assert_eq!(p, [3, 22, 333, 355, 103993, 104348]);
        let q: Vec<u64> = c.iter().map(|c| c.q.to_u64().unwrap()).collect();
        assert_eq!(q, [1, 7, 106, 113, 33102, 33215]);
        assert!((c[3].abs_error - 2.667e-7).abs() < 1e-10);
    }

    #[test]
    fn rational_input_terminates() {
        let c = convergents_of(&two(), 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].p.clone(), c[0].q.clone()), (BigInt::from(2), BigInt::one()));
        assert_eq!(c[0].abs_error, 0.0);
        assert_eq!(convergents_of(&two(), 5).unwrap().len(), 1);
        assert!(effective_mu(&c).is_err());
    }

    #[test]
    fn depth_limit_is_reported() {
        let max = max_safe_depth(&DigitString::pi());
        assert!(max > 80 && max < 110, "max = {max}");
        match convergents_of(&DigitString::pi(), max + 1) {
            Err(Error::Depth { requested, max: m }) => assert_eq!((requested, m), (max + 1, max)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn epsilon_good_examples() {
        let pi = DigitString::pi();
        assert!(epsilon_good(&pi, &BigInt::from(355), &BigInt::from(113), 2.0, 0.5).unwrap());
        assert!(!epsilon_good(&pi, &BigInt::from(22), &BigInt::from(7), 10.0, 0.1).unwrap());
        assert!(epsilon_good(&two(), &BigInt::from(4), &BigInt::from(2), 100.0, 0.1).unwrap());
        assert!(epsilon_good(&pi, &BigInt::from(3), &BigInt::from(1), 2.0, 0.1).is_err());
    }

    #[test]
    fn predicates() {
        let c = convergence_predicates(MuCondition { u: 3.0, v: 2.0, mu: 2.4 }).unwrap();
        assert!(c.meiburg_converges);
        assert_eq!(c.alekseyev_upper, 2.5);
        assert!(!convergence_predicates(MuCondition { u: 3.0, v: 2.0, mu: 2.5 }).unwrap().meiburg_converges);
        assert_eq!(convergence_predicates(MuCondition { u: 2.0, v: 2.0, mu: 1.0 }).unwrap().alekseyev_upper, 2.0);
    }

    #[test]
    fn floor_constant_singleton_and_exponent_two() {
        let c = convergents_of(&DigitString::pi(), 4).unwrap();
        let (single, _) = floor_constant_c(&c[3..4], 2.5).unwrap();
        assert!((single - 113f64.powf(2.5) * c[3].abs_error).abs() < 1e-12 * single);
        let (two, _) = floor_constant_c(&c, 2.0).unwrap();
        assert!(two < 1.0);
    }

    #[test]
    fn large_ratio_conversion() {
        let a = BigInt::from(10u32).pow(400);
        let b = BigInt::from(3) * BigInt::from(10u32).pow(399);
        assert!((ratio_to_f64(&a, &b) - 10.0 / 3.0).abs() < 1e-15);
        assert!((ln_big(&a) - 400.0 * std::f64::consts::LN_10).abs() < 1e-12);
    }
}
