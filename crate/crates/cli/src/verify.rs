//! The `verify` suites. Each check records a measured deviation and the
//! tolerance it is held to. Published reference values that their own inputs
//! do not reproduce are reported as known discrepancies and do not fail the run.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use dds_core::bounds::{delta_from_c1, double_sided_bounds_with_lambda, fermi_weighted_holder, holder_truncated, monotonic_PQ_check};
use dds_core::diophantine::{convergents_of, ln_big, spike_correlate, DigitString};
use dds_core::elliptic::{fit_class, full_expansion};
use dds_core::precision::sin_int;
use dds_core::series::{
    abel_check, cot_sec_identity_check, lambda_bessel, lambda_bessel_term, lambda_elementary,
    lambda_elementary_term, lambda_slope, partial_sum, psi_from_lambda, recursion_decompose, stieltjes_floor_sum,
    summatory, SeriesSpec,
};
use dds_core::special::{fermi_dirac_f, polygamma, polylog_truncated, tetragamma, trigamma, zeta, PolygammaOrder};
use dds_core::{DoubleDouble, Result};
use serde_json::Value;

use crate::commands::Suite;
use crate::envelope::{num, row, Envelope};

pub const LAMBDA_10001: f64 = 78.1160806386;
const ZETA3: f64 = 1.2020569031595942853997;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Known,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Known => "known-discrepancy",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub suite: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub status: Status,
    pub note: String,
}

#[derive(Default)]
struct Report {
    checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, suite: &'static str, name: &str, tolerance: f64, known: bool, dev: Result<f64>) {
        let (measured, note) = match dev {
            Ok(d) => (d, String::new()),
            Err(e) => (f64::NAN, e.to_string()),
        };
        let ok = measured <= tolerance;
        let status = match (ok, known) {
            (true, _) => Status::Pass,
            (false, true) => Status::Known,
            (false, false) => Status::Fail,
        };
        self.checks.push(Check { name: name.to_string(), suite, measured, tolerance, status, note });
    }

    fn identity(&mut self, name: &str, tolerance: f64, dev: Result<f64>) {
        self.push("identities", name, tolerance, false, dev);
    }

    fn golden(&mut self, name: &str, tolerance: f64, dev: Result<f64>) {
        self.push("golden", name, tolerance, false, dev);
    }

    fn known(&mut self, name: &str, tolerance: f64, dev: Result<f64>) {
        self.push("golden", name, tolerance, true, dev);
    }
}

fn rel(a: DoubleDouble, b: DoubleDouble) -> f64 {
    if b.is_zero() {
        return (a - b).abs().to_f64();
    }
    ((a - b) / b).abs().to_f64()
}

/// Deviation in units of half the fourth significant digit of `want`.
fn sig4(got: f64, want: f64) -> f64 {
    let half_unit = 0.5 * 10f64.powi(want.abs().log10().floor() as i32 - 3);
    (got - want).abs() / half_unit
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn abs_csc(n: u64) -> Result<f64> {
    Ok(sin_int(n)?.recip().abs().to_f64())
}

fn identities(r: &mut Report, lambda_10001: DoubleDouble) {
    let fh = SeriesSpec::flint_hills();
    for sigma in [2u64, 10, 100, 1000, 10001] {
        r.identity(&format!("reconstruction sigma={sigma}"), 1e-9, (|| {
            let lambda = if sigma == 10001 { lambda_10001 } else { lambda_bessel(sigma)?.value };
            let direct = partial_sum(&fh, 1, sigma - 1)?.value;
            Ok(rel(psi_from_lambda(sigma, lambda)?, direct))
        })());
        r.identity(&format!("lambda paths sigma={sigma}"), 1e-12, (|| {
            let b = if sigma == 10001 { lambda_10001 } else { lambda_bessel(sigma)?.value };
            Ok(rel(lambda_elementary(sigma)?, b))
        })());
    }
    r.identity("bessel term realness n<=200", 1e-15, (|| {
        let mut worst = 0f64;
        for n in 1..=200 {
            let (re, residue) = lambda_bessel_term(n)?;
            worst = worst.max(rel(re, lambda_elementary_term(n)?)).max(residue);
        }
        Ok(worst)
    })());
    r.identity("csc^2 - cot^2 = 1 over n<=10^4", 1e-18, cot_sec_identity_check(10_000).map(|c| c.relative_residual));
    r.identity("recursive half-angle x in {1,2.5,7}, m<=20", 1e-13, (|| {
        let mut worst = 0f64;
        for x in [1.0, 2.5, 7.0] {
            let want = dds_core::precision::sin_cos(DoubleDouble::from(x))?.sin.sqr().recip();
            for m in 1..=20 {
                worst = worst.max(rel(recursion_decompose(x, m)?.total, want));
            }
        }
        Ok(worst)
    })());
    r.identity("floor-Stieltjes = partial sum over (1, 1000]", 0.0, (|| {
        Ok(rel(stieltjes_floor_sum(&fh, 1.0, 1000.0)?, partial_sum(&fh, 2, 1000)?.value))
    })());
    r.identity("Abel summation, N=1000", 1e-25, abel_check(&fh, 1000).map(|a| a.relative_gap()));
    r.identity("A(0) = 0", 0.0, summatory(&fh, 0.0).map(|v| v.abs().to_f64()));
    r.identity("polygamma recurrence m<=6", 1e-15, (|| {
        let mut worst = 0f64;
        for m in 1..=6u32 {
            let order = PolygammaOrder::new(m)?;
            let fact: f64 = (1..=m).map(f64::from).product();
            for x in [0.5, 1.0, 2.5, 7.0] {
                let step = polygamma(order, x + 1.0)? - polygamma(order, x)?;
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let want = DoubleDouble::from(sign * fact) / DoubleDouble::from(x).powi(m as i32 + 1);
                worst = worst.max(rel(step, want));
            }
        }
        Ok(worst)
    })());
    for p in [1.0, 2.0, 3.0, 5.0, 10.0] {
        r.identity(&format!("F_p(0) closed form p={p}"), 1e-14, (|| {
            let closed = (zeta(p + 1.0)? * (1.0 - 2f64.powf(-p))).to_f64();
            Ok((fermi_dirac_f(p, 0.0)? - closed).abs())
        })());
    }
    r.identity("polylog tail bound honoured", 0.0, (|| {
        let a = polylog_truncated(2.0, 0.5, 20)?;
        let b = polylog_truncated(2.0, 0.5, 40)?;
        Ok(flag((b.value - a.value).abs() <= a.tail_bound))
    })());
    for p in [1.5, 2.0, 4.0, 8.0, 64.0] {
        for n in [1u64, 10, 1000] {
            r.identity(&format!("holder p={p} N={n}"), 0.0, holder_truncated(p, n).map(|b| flag(b.satisfied)));
        }
    }
    for (p, x, n) in [(2.0, 0.0, 1000), (4.0, 0.0, 1000), (6.0, 0.0, 1000), (8.0, 0.0, 1000), (2.0, -1.0, 500)] {
        r.identity(
            &format!("fermi holder p={p} x={x} N={n}"),
            0.0,
            fermi_weighted_holder(p, x, n).map(|b| flag(b.satisfied)),
        );
    }
    r.identity("polygamma sandwich x in [0.25, 1e5]", 0.0, (|| {
        let (lo, hi) = (0.25f64.ln(), 1e5f64.ln());
        let mut bad = 0.0;
        for i in 0..=40 {
            let x = (lo + (hi - lo) * i as f64 / 40.0).exp();
            bad += flag(monotonic_PQ_check(x, 1.0)?.satisfied);
        }
        Ok(bad)
    })());
    r.identity("elliptic pair expansion over [1, 10^4]", 1e-9, (|| {
        let e = full_expansion(1, 10_000, 2)?;
        let direct = partial_sum(&fh, 1, 10_000)?.value;
        Ok(rel(e.value, direct) + flag(e.kappa_total == 10_000))
    })());
    r.identity("pair discriminants nonzero, lambda<=200", 0.0, (|| {
        let mut bad = 0.0;
        for l in 1..200 {
            bad += flag(fit_class(&[l, l + 1])?.discriminant != 0.0);
        }
        Ok(bad)
    })());
    r.identity("classical convergent sandwich", 1e-9, (|| {
        let c = convergents_of(&DigitString::pi(), 40)?;
        let mut worst = 0f64;
        for w in c.windows(2) {
            let (q, q1) = (&w[0].q, &w[1].q);
            let ln_lo = -(ln_big(q) + ln_big(&(q1 + q)));
            let ln_hi = -(ln_big(q) + ln_big(q1));
            // violations measured in log space
            worst = worst.max(ln_lo - w[0].ln_abs_error).max(w[0].ln_abs_error - ln_hi).max(0.0);
        }
        Ok(worst)
    })());
    r.identity("slope field negative on [1, 10]", 0.0, (|| {
        let mut bad = 0.0;
        for i in 0..10 {
            bad += flag(lambda_slope(1.0 + i as f64)?.is_negative());
        }
        Ok(bad)
    })());
}

fn golden(r: &mut Report, lambda_10001: DoubleDouble) {
    r.golden("Lambda(10001) = 78.1160806386", 1e-4, Ok((lambda_10001.to_f64() - LAMBDA_10001).abs()));
    r.golden("(4/3) zeta(3) = 1.602742537", 1e-9, zeta(3.0).map(|z| (z.to_f64() * 4.0 / 3.0 - 1.602742537).abs()));
    r.golden("trigamma(1) = pi^2/6", 1e-15, trigamma(1.0).map(|t| (t.to_f64() / (PI * PI / 6.0) - 1.0).abs()));
    r.golden("tetragamma(1) = -2 zeta(3)", 1e-15, tetragamma(1.0).map(|t| (t.to_f64() / (-2.0 * ZETA3) - 1.0).abs()));
    let delta = delta_from_c1(LAMBDA_10001);
    r.golden("delta(c1) = 0.23294263", 1e-6, delta.clone().map(|d| (d.delta - 0.23294263).abs()));
    r.golden("delta(c1)^2 = 0.054262268", 1e-7, delta.map(|d| (d.delta_squared - 0.054262268).abs()));
    for (n, want) in [(1u64, 1.1884), (3, 7.08617), (22, 112.978), (333, 113.364), (355, 33173.7)] {
        r.golden(&format!("|csc {n}| = {want} (4 digits)"), 1.0, abs_csc(n).map(|g| sig4(g, want)));
    }
    let records: Result<Vec<u64>> = spike_correlate(120_000).map(|v| v.iter().map(|s| s.index).collect());
    r.golden(
        "spike records n<=120000 open with 1, 3, 22, 333, 355, 103993",
        0.0,
        records.clone().map(|v| flag(v.starts_with(&[1, 3, 22, 333, 355, 103993]))),
    );
    r.golden("first six numerators of pi", 0.0, (|| {
        let p: Vec<String> = convergents_of(&DigitString::pi(), 6)?.iter().map(|c| c.p.to_string()).collect();
        Ok(flag(p == ["3", "22", "333", "355", "103993", "104348"]))
    })());

    let b = double_sided_bounds_with_lambda(10001, lambda_10001);
    let part = |f: fn(&dds_core::bounds::DoubleSidedBounds) -> f64| b.as_ref().map(f).map_err(Clone::clone);
    r.known("sigma=10001 lower bound 30.284206291623365", 1e-4, part(|b| (b.lower.to_f64() - 30.284206291623365).abs()));
    r.known("sigma=10001 upper bound 30.292042537", 1e-4, part(|b| (b.upper.to_f64() - 30.292042537).abs()));
    r.known("sigma=10001 lower middle term 5.55e-16", 0.02, part(|b| (b.lower_middle.to_f64() / 5.55e-16 - 1.0).abs()));
    r.known("sigma=10001 upper middle term 5.55e-15", 0.02, part(|b| (b.upper_middle.to_f64() / 5.55e-15 - 1.0).abs()));
    r.known("sigma=10001 weighted Lambda 28.6893", 1e-3, part(|b| (b.lambda_term.to_f64() - 28.6893).abs()));
    r.known("|csc 103993| = 33173.7 (4 digits)", 1.0, abs_csc(103993).map(|g| sig4(g, 33173.7)));
    r.known(
        "spike records n<=120000 are exactly {1, 3, 22, 333, 355, 103993}",
        0.0,
        records.map(|v| flag(v.into_iter().collect::<BTreeSet<_>>() == BTreeSet::from([1, 3, 22, 333, 355, 103993]))),
    );
    for p in [2.0, 4.0, 8.0] {
        r.known(
            &format!("fermi holder p={p} x=0 N=1 satisfied"),
            0.0,
            fermi_weighted_holder(p, 0.0, 1).map(|b| flag(b.satisfied)),
        );
    }
}

/// Runs the suite; the flag is false when any non-known check failed.
pub fn verify(suite: Suite) -> (Envelope, bool) {
    let mut env = Envelope::new("verify");
    let name = match suite {
        Suite::Identities => "identities",
        Suite::Golden => "golden",
        Suite::All => "all",
    };
    env.param("suite", name);
    let mut report = Report::default();
    let lambda_10001 = lambda_bessel(10001).map(|b| b.value);
    match &lambda_10001 {
        Ok(l) => {
            if suite != Suite::Golden {
                identities(&mut report, *l);
            }
            if suite != Suite::Identities {
                golden(&mut report, *l);
            }
        }
        Err(e) => report.golden("Lambda(10001)", 0.0, Err(e.clone())),
    }
    let count = |s: Status| report.checks.iter().filter(|c| c.status == s).count();
    let (pass, fail, known) = (count(Status::Pass), count(Status::Fail), count(Status::Known));
    let rows: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            row(vec![
                ("suite", c.suite.into()),
                ("check", c.name.clone().into()),
                ("measured", num(c.measured)),
                ("tolerance", num(c.tolerance)),
                ("status", c.status.name().into()),
                ("note", c.note.clone().into()),
            ])
        })
        .collect();
    env.result("passed", pass).result("failed", fail).result("known_discrepancies", known).result("rows", rows);
    (env, fail == 0)
}
