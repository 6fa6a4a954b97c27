use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::precision::{sin_cos, sin_cos_int, sin_cos_pi_times, DoubleDouble, TrigPair};

/// Kernel evaluations closer than this to a singularity are refused.
pub const POLE_TOLERANCE: f64 = 1e-15;

/// Trigonometric base `f` of a series term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    Csc,
    Cot,
    Sec,
    One,
}

impl Kernel {
    pub fn name(self) -> &'static str {
        match self {
            Kernel::Csc => "csc",
            Kernel::Cot => "cot",
            Kernel::Sec => "sec",
            Kernel::One => "one",
        }
    }

    /// Value of the kernel and distance of the argument to its nearest pole.
    pub fn eval(self, pair: &TrigPair) -> (DoubleDouble, f64) {
        match self {
            Kernel::Csc => (pair.sin.recip(), pair.sin_zero_distance()),
            Kernel::Cot => (pair.cos / pair.sin, pair.sin_zero_distance()),
            Kernel::Sec => (pair.cos.recip(), pair.cos_zero_distance()),
            Kernel::One => (DoubleDouble::ONE, f64::INFINITY),
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csc" => Ok(Kernel::Csc),
            "cot" => Ok(Kernel::Cot),
            "sec" => Ok(Kernel::Sec),
            "one" | "1" => Ok(Kernel::One),
            other => Err(Error::Parse(format!("unknown kernel '{other}'"))),
        }
    }
}

/// Argument scale: term `n` evaluates the kernel at `φ·n` radians or at `π·α·n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phase {
    Radians(f64),
    PiTimes(f64),
}

impl Default for Phase {
    fn default() -> Self {
        Phase::Radians(1.0)
    }
}

/// Optional coefficient multiplying each term.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Weight {
    #[default]
    None,
    /// `table[(n − 1) mod k]` is the coefficient of term `n`, so the table
    /// lists χ(1), χ(2), …, χ(k).
    Periodic(Vec<f64>),
    /// `exp(x·n/p)`.
    Exponential { x: f64, p: f64 },
}

impl Weight {
    pub fn at(&self, n: u64) -> DoubleDouble {
        match self {
            Weight::None => DoubleDouble::ONE,
            Weight::Periodic(table) => DoubleDouble::from(table[((n - 1) % table.len() as u64) as usize]),
            Weight::Exponential { x, p } => (DoubleDouble::from(*x) * n as f64 / *p).exp(),
        }
    }
}

/// One Diophantine Dirichlet series `Σ f(φn)^v · w(n) / nˢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub kernel: Kernel,
    pub v: f64,
    pub s: f64,
    pub phase: Phase,
    pub weight: Weight,
}

impl SeriesSpec {
    pub fn new(kernel: Kernel, v: f64, s: f64) -> Self {
        Self { kernel, v, s, phase: Phase::default(), weight: Weight::None }
    }

    /// `Σ csc²(n)/n³`.
    pub fn flint_hills() -> Self {
        Self::new(Kernel::Csc, 2.0, 3.0)
    }

    /// `Σ sec²(n)/n³`.
    pub fn cookson_hills() -> Self {
        Self::new(Kernel::Sec, 2.0, 3.0)
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn with_weight(mut self, weight: Weight) -> Self {
        self.weight = weight;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |detail: String| Err(Error::domain("series", detail));
        if !(self.v >= 0.0) || !self.v.is_finite() {
            return bad(format!("kernel power v = {} must be finite and non-negative", self.v));
        }
        if !self.s.is_finite() {
            return bad(format!("exponent s = {} must be finite", self.s));
        }
        if self.kernel == Kernel::One && self.weight == Weight::None && !(self.s > 1.0) {
            return bad(format!("p-series needs s > 1, got {}", self.s));
        }
        match self.phase {
            Phase::Radians(phi) | Phase::PiTimes(phi) if !(phi > 0.0) || !phi.is_finite() => {
                return bad(format!("phase {phi} must be positive"));
            }
            _ => {}
        }
        match &self.weight {
            Weight::Periodic(table) if table.is_empty() => {
                return bad("periodic weight needs period >= 1".into());
            }
            Weight::Periodic(table) if table.iter().any(|c| !c.is_finite()) => {
                return bad("periodic weight has a non-finite entry".into());
            }
            Weight::Exponential { x, p } if !(*p > 0.0) || !x.is_finite() => {
                return bad(format!("exponential weight needs p > 0 and finite x, got ({x}, {p})"));
            }
            _ => {}
        }
        Ok(())
    }

    fn trig(&self, n: u64) -> Result<(TrigPair, f64)> {
        match self.phase {
            Phase::Radians(1.0) => Ok((sin_cos_int(n)?, n as f64)),
            Phase::Radians(phi) => {
                let arg = DoubleDouble::from_product(phi, n as f64);
                Ok((sin_cos(arg)?, arg.hi.abs()))
            }
            Phase::PiTimes(alpha) => {
                let y = DoubleDouble::from_product(alpha, n as f64);
                Ok((sin_cos_pi_times(y), 1.0))
            }
        }
    }

    /// Evaluates term `n`.
    pub fn term(&self, n: u64) -> Result<Term> {
        if n == 0 {
            return Err(Error::domain("series", "terms are indexed from n = 1"));
        }
        let (numerator, rel_err) = if self.kernel == Kernel::One || self.v == 0.0 {
            (DoubleDouble::ONE, 0.0)
        } else {
            let (pair, arg) = self.trig(n)?;
            let (f, distance) = self.kernel.eval(&pair);
            if distance < POLE_TOLERANCE {
                return Err(Error::Pole { n, distance });
            }
            // reduction error ~2⁻¹⁰⁴·|arg| absolute, amplified by 1/distance
            let rel = self.v * (4.0 * crate::precision::dd::EPS * arg.max(1.0)) / distance;
            (kernel_power(f, self.v), rel)
        };
        let weight = self.weight.at(n);
        let value = numerator * weight * DoubleDouble::from(n as f64).powf(-self.s);
        Ok(Term { n, value, numerator_abs: numerator.abs().to_f64(), rel_err })
    }
}

/// `f^v`: signed for integral `v`, `|f|^v` otherwise.
pub fn kernel_power(f: DoubleDouble, v: f64) -> DoubleDouble {
    if v == v.trunc() && v.abs() <= 64.0 {
        f.powi(v as i32)
    } else {
        f.abs().powf(v)
    }
}

/// A single evaluated series term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub n: u64,
    pub value: DoubleDouble,
    /// `|f(φn)|^v`, the quantity whose running records are spikes.
    pub numerator_abs: f64,
    /// Estimated relative error of `value` from argument reduction.
    pub rel_err: f64,
}
