//! Deterministic compensated summation of double-double terms.
//!
//! The running leading word is updated with an error-free `two_sum`; every
//! rounding residue and every low word is collected in a double-double
//! compensation register. The register is itself small compared with the
//! sum, so its own rounding enters at roughly the third-word level and the
//! final result is well inside `4·2⁻¹⁰⁰·Σ|tᵢ|`.

use super::dd::{two_sum, DoubleDouble};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    lead: f64,
    comp: DoubleDouble,
    abs_total: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: DoubleDouble) {
        let (s, e) = two_sum(self.lead, x.hi);
        self.lead = s;
        self.comp += DoubleDouble::new(e, x.lo);
        self.abs_total += x.hi.abs();
    }

    #[inline]
    pub fn add_f64(&mut self, x: f64) {
        self.add(DoubleDouble::from(x));
    }

    /// Folds another accumulator in. Merging chunk accumulators in a fixed
    /// order is deterministic.
    pub fn merge(&mut self, other: &CompensatedSum) {
        let (s, e) = two_sum(self.lead, other.lead);
        self.lead = s;
        self.comp += other.comp;
        self.comp += e;
        self.abs_total += other.abs_total;
    }

    pub fn value(&self) -> DoubleDouble {
        DoubleDouble::from(self.lead) + self.comp
    }

    /// Σ|tᵢ| (leading words), used for condition estimates.
    pub fn abs_total(&self) -> f64 {
        self.abs_total
    }
}

impl Extend<DoubleDouble> for CompensatedSum {
    fn extend<I: IntoIterator<Item = DoubleDouble>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

pub fn compensated_sum<I: IntoIterator<Item = DoubleDouble>>(terms: I) -> DoubleDouble {
    let mut acc = CompensatedSum::new();
    acc.extend(terms);
    acc.value()
}
