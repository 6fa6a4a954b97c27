//! Checks against independent big-integer and quadrature oracles.

use dds_core::diophantine::{convergents_of, effective_mu, max_safe_depth, DigitString};
use dds_core::precision::{compensated_sum, reduce_mod_pi, sin_int, CompensatedSum};
use dds_core::series::character_series;
use dds_core::special::{fermi_dirac_f, tetragamma, trigamma, zeta, zeta3_tail};
use dds_core::DoubleDouble;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const BITS: u32 = 320;

fn one() -> BigInt {
    BigInt::one() << BITS
}

fn atan_inv(x: u32) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut term = one() / x;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !term.is_zero() {
        let t = &term / (2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

fn machin_pi() -> BigInt {
    atan_inv(5) * 16 - atan_inv(239) * 4
}

fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> BITS
}

fn sin_fixed(r: &BigInt) -> BigInt {
    let r2 = mul(r, r);
    let mut term = r.clone();
    let mut sum = r.clone();
    let mut j = 1u64;
    while !term.is_zero() {
        term = -mul(&term, &r2) / BigInt::from((2 * j) * (2 * j + 1));
        sum += &term;
        j += 1;
    }
    sum
}

/// `sin n` in fixed point and `round(n/π)`.
fn oracle_sin(n: u64, pi: &BigInt) -> (BigInt, i64) {
    let x = BigInt::from(n) << BITS;
    let k: BigInt = ((&x << 1u32) + pi) / (pi << 1u32);
    let r = &x - &k * pi;
    let s = sin_fixed(&r);
    let k = k.to_i64().unwrap();
    (if k % 2 == 0 { s } else { -s }, k)
}

fn f64_to_fixed(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64;
    let m = BigInt::from((bits & ((1u64 << 52) - 1)) | (1u64 << 52));
    let shift = BITS as i64 + e - 1075;
    let v = if shift >= 0 { m << shift as u32 } else { m >> (-shift) as u32 };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

fn dd_to_fixed(d: DoubleDouble) -> BigInt {
    f64_to_fixed(d.hi) + f64_to_fixed(d.lo)
}

fn rel_diff(a: &BigInt, b: &BigInt) -> f64 {
    let d: BigInt = ((a - b).abs() << 200u32) / b.abs();
    d.to_f64().unwrap() / 2f64.powi(200)
}

fn fixed_to_f64(x: &BigInt) -> f64 {
    // keep 64 leading bits
    let len = x.bits() as i64;
    let drop = (len - 64).max(0);
    let top = (x >> drop as u32).to_f64().unwrap();
    top * 2f64.powi((drop - BITS as i64) as i32)
}

#[test]
fn machin_pi_agrees_with_digit_string() {
    let pi = machin_pi();
    let s = DigitString::pi();
    let scaled = (&s.numer << BITS) / s.denom();
    assert!(rel_diff(&scaled, &pi) < 1e-90);
}

#[test]
fn sin_int_matches_big_number_oracle() {
    let pi = machin_pi();
    let mut rng = StdRng::seed_from_u64(0x51_1e);
    let mut ns: Vec<u64> = (0..1000).map(|_| rng.gen_range(1..=10_000_000)).collect();
    let numerators: Vec<u64> = convergents_of(&DigitString::pi(), 20)
        .unwrap()
        .iter()
        .filter_map(|c| c.p.to_u64())
        .filter(|&p| p <= 10_000_000)
        .collect();
    assert!(numerators.contains(&103993) && numerators.contains(&5419351));
    ns.extend(numerators);
    let mut worst = 0f64;
    for n in ns {
        let (want, k) = oracle_sin(n, &pi);
        let got = sin_int(n).unwrap();
        let e = rel_diff(&dd_to_fixed(got), &want);
        assert!(e <= 1e-20, "n={n} rel={e:e}");
        worst = worst.max(e);
        assert_eq!(reduce_mod_pi(n).unwrap().k, k, "n={n}");
    }
    assert!(worst < 1e-20);
}

#[test]
fn compensated_sum_of_a_million_micro_units() {
    let unit = 1e-6;
    let s = compensated_sum(std::iter::repeat(DoubleDouble::from(unit)).take(1_000_000));
    let want = DoubleDouble::from_product(1e6, unit);
    assert!(((s - want) / want).abs().to_f64() < 1e-25);
    let mut acc = CompensatedSum::new();
    for _ in 0..1_000_000 {
        acc.add_f64(unit);
    }
    assert_eq!(acc.value(), s);
}

fn fermi_integrand(t: f64, p: f64, x: f64) -> f64 {
    t.powf(p) / ((t - x).exp() + 1.0)
}

#[test]
fn fermi_dirac_matches_simpson_quadrature() {
    let (p, x) = (2.0, -1.0);
    let (a, b, n) = (0.0, 80.0, 400_000usize);
    let h = (b - a) / n as f64;
    let mut acc = CompensatedSum::new();
    for i in 0..=n {
        let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        acc.add_f64(w * fermi_integrand(a + i as f64 * h, p, x));
    }
    // 1/Γ(p+1)
    let quad = acc.value().to_f64() * h / 3.0 / 2.0;
    let got = fermi_dirac_f(p, x).unwrap();
    assert!((got - quad).abs() < 1e-10, "{got} vs {quad}");
}

#[test]
fn zeta3_tail_matches_brute_force() {
    const TERMS: u64 = 10_000_000;
    for sigma in [1u64, 2, 10, 100] {
        let m = sigma + TERMS;
        let mut acc = CompensatedSum::new();
        for n in (sigma..m).rev() {
            let nf = n as f64;
            acc.add(DoubleDouble::from(nf).powi(-3));
        }
        let mf = m as f64;
        // Euler-Maclaurin tail Σ_{n≥M} n⁻³
        let tail = 1.0 / (2.0 * mf * mf) + 1.0 / (2.0 * mf.powi(3)) + 1.0 / (4.0 * mf.powi(4));
        let brute = acc.value() + tail;
        let got = zeta3_tail(sigma).unwrap();
        let rel = ((got - brute) / brute).abs().to_f64();
        assert!(rel < 1e-12, "σ={sigma}: {rel:e}");
    }
}

#[test]
fn polygamma_at_one() {
    let zeta3 = 1.2020569031595942853997381615114_f64;
    let t = trigamma(1.0).unwrap().to_f64();
    assert!((t - std::f64::consts::PI.powi(2) / 6.0).abs() / t < 1e-15);
    let q = tetragamma(1.0).unwrap().to_f64();
    assert!((q + 2.0 * zeta3).abs() / q.abs() < 1e-15);
}

#[test]
fn zeta_five_frozen() {
    let z = zeta(5.0).unwrap().to_f64();
    assert!((z - 1.0369277551433699263).abs() < 1e-16);
}

#[test]
fn dirichlet_beta_partial_sum_matches_big_number_oracle() {
    const B: u32 = 192;
    const N: u64 = 1_000_000;
    let scale = BigInt::one() << (2 * B);
    let mut oracle = BigInt::zero();
    for n in (1..=N).step_by(2) {
        // 2^B / n^{3/2}
        let root = (BigInt::from(n) << (2 * B)).sqrt();
        let term = &scale / (BigInt::from(n) * root);
        if n % 4 == 1 {
            oracle += term;
        } else {
            oracle -= term;
        }
    }
    let got = character_series(&[1.0, 0.0, -1.0, 0.0], 1.5, N).unwrap();
    let got_fixed = (f64_to_fixed(got.hi) + f64_to_fixed(got.lo)) >> (BITS - B);
    let e = rel_diff(&got_fixed, &oracle);
    assert!(e < 1e-26, "{e:e}");
}

fn convergent_list() -> Vec<dds_core::diophantine::Convergent> {
    let pi = DigitString::pi();
    convergents_of(&pi, max_safe_depth(&pi)).unwrap()
}

#[test]
fn first_numerators_of_pi() {
    let c = convergent_list();
    let p: Vec<u64> = c.iter().take(6).map(|c| c.p.to_u64().unwrap()).collect();
    assert_eq!(p, [3, 22, 333, 355, 103993, 104348]);
}

#[test]
fn classical_sandwich_holds_exactly() {
    let pi = DigitString::pi();
    let den = pi.denom();
    let c = convergent_list();
    for w in c.windows(2) {
        let (p, q, q1) = (&w[0].p, &w[0].q, &w[1].q);
        let err_num = (&pi.numer * q - p * &den).abs();
        // |α − p/q| = err_num / (den·q)
        assert!(&den < &(&err_num * (q1 + q)), "lower fails at q={q}");
        assert!(&(&err_num * q1) < &den, "upper fails at q={q}");
    }
}

#[test]
fn effective_mu_matches_brute_force_oracle() {
    let pi = machin_pi();
    let c: Vec<_> = convergent_list().into_iter().take_while(|c| c.q <= BigInt::from(33102)).collect();
    let (mu, _) = effective_mu(&c).unwrap();
    assert!(mu > 2.0 && mu < 3.5, "{mu}");
    let mut best = f64::MIN;
    for conv in &c {
        let q = conv.q.to_u64().unwrap();
        if q < 2 {
            continue;
        }
        let pq = (&conv.p << BITS) / &conv.q;
        let err = (&pi - pq).abs();
        let e = -fixed_to_f64(&err).ln() / (q as f64).ln();
        assert!((conv.eff_exponent.unwrap() - e).abs() < 1e-6, "q={q}");
        assert!(e > 2.0);
        best = best.max(e);
    }
    assert!((best - mu).abs() < 1e-6);
}
