use dds_core::bounds::{delta_from_c1, fermi_weighted_holder, holder_truncated, monotonic_PQ_check};
use dds_core::diophantine::{convergence_predicates, MuCondition};
use dds_core::elliptic::{fit_class, full_expansion, ExpansionTerm, class_partial_sum};
use dds_core::precision::{compensated_sum, sin_int};
use dds_core::series::{
    lambda_elementary, lambda_elementary_term, partial_sum, recursion_decompose, stieltjes_floor_sum, SeriesSpec,
};
use dds_core::special::{polygamma, PolygammaOrder};
use dds_core::DoubleDouble;
use proptest::prelude::*;

fn rel(a: DoubleDouble, b: DoubleDouble) -> f64 {
    ((a - b) / b).abs().to_f64()
}

fn factorial(m: u32) -> f64 {
    (1..=m).map(f64::from).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compensated_sum_is_permutation_stable(
        terms in prop::collection::vec(1e-3f64..1e3, 1..400),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let forward = compensated_sum(terms.iter().map(|&t| DoubleDouble::from(t)));
        let mut shuffled = terms.clone();
        shuffled.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let back = compensated_sum(shuffled.iter().map(|&t| DoubleDouble::from(t)));
        prop_assert!(rel(back, forward) <= 1e-25);
    }

    #[test]
    fn polygamma_recurrence(m in 1u32..=6, k in 512u32..61_440) {
        // dyadic x keeps x + 1 exact
        let x = k as f64 / 1024.0;
        let order = PolygammaOrder::new(m).unwrap();
        let step = polygamma(order, x + 1.0).unwrap() - polygamma(order, x).unwrap();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let want = DoubleDouble::from(sign * factorial(m)) / DoubleDouble::from(x).powi(m as i32 + 1);
        prop_assert!(rel(step, want) <= 1e-15, "m={} x={} rel={:e}", m, x, rel(step, want));
    }

    #[test]
    fn recursion_depth_independence(x in 0.1f64..50.0, m in 1u32..60) {
        match (recursion_decompose(x, m), recursion_decompose(x, m + 1)) {
            (Ok(a), Ok(b)) => prop_assert!(rel(b.total, a.total) <= 1e-13),
            // a half-angle pole is a property of x, not of the identity
            _ => prop_assume!(false),
        }
    }

    #[test]
    fn fit_pairs_reconstruct_two_term_sums(l in 1u64..=5000) {
        let class = fit_class(&[l, l + 1]).unwrap();
        prop_assert!(class.discriminant != 0.0);
        let term = ExpansionTerm::new(&class, l, l + 1).unwrap();
        let got = class_partial_sum(&term).unwrap();
        let direct = partial_sum(&SeriesSpec::flint_hills(), l, l + 1).unwrap().value;
        prop_assert!(rel(got, direct) <= 1e-10);
    }

    #[test]
    fn kappa_counts_indices(lo in 1u64..500, len in 0u64..500, chunk in 2u64..9) {
        let e = full_expansion(lo, lo + len, chunk).unwrap();
        prop_assert_eq!(e.kappa_total, len + 1);
    }

    #[test]
    fn predicates_monotone_in_u(u in 0.01f64..10.0, du in 0.0f64..10.0, v in 1.0f64..10.0, mu in 1.0f64..20.0) {
        let a = convergence_predicates(MuCondition { u, v, mu }).unwrap();
        let b = convergence_predicates(MuCondition { u: u + du, v, mu }).unwrap();
        prop_assert!(!a.meiburg_converges || b.meiburg_converges);
    }

    #[test]
    fn delta_decreases_in_c1(c1 in 0.0f64..1e4, dc in 1e-6f64..1e3) {
        let a = delta_from_c1(c1).unwrap().delta;
        let b = delta_from_c1(c1 + dc).unwrap().delta;
        prop_assert!(b < a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lambda_telescopes(s1 in 1u64..10_000, width in 1u64..2000) {
        let s2 = (s1 + width).min(10_000);
        prop_assume!(s2 > s1);
        let diff = lambda_elementary(s2).unwrap() - lambda_elementary(s1).unwrap();
        let window: DoubleDouble = (s1..s2).map(|n| lambda_elementary_term(n).unwrap()).sum();
        prop_assert!(rel(diff, window) <= 1e-14);
    }

    #[test]
    fn pair_chunking_is_alignment_free(split in 1u64..10_000) {
        let whole = partial_sum(&SeriesSpec::flint_hills(), 1, 10_000).unwrap().value;
        let a = full_expansion(1, split, 2).unwrap();
        let b = full_expansion(split + 1, 10_000, 2).unwrap();
        prop_assert_eq!(a.kappa_total + b.kappa_total, 10_000);
        prop_assert!(rel(a.value + b.value, whole) <= 1e-9);
    }

    #[test]
    fn stieltjes_matches_partial_sum(lo in 0u64..2000, len in 1u64..2000) {
        let spec = SeriesSpec::flint_hills();
        let st = stieltjes_floor_sum(&spec, lo as f64, (lo + len) as f64).unwrap();
        let direct = partial_sum(&spec, lo + 1, lo + len).unwrap().value;
        prop_assert_eq!(st, direct);
    }
}

#[test]
fn flint_hills_partial_sums_increase() {
    let spec = SeriesSpec::flint_hills();
    let mut prev = DoubleDouble::ZERO;
    for n in 1..=2000 {
        let v = partial_sum(&spec, 1, n).unwrap().value;
        assert!(v > prev, "N={n}");
        prev = v;
    }
}

#[test]
fn pair_classes_up_to_200() {
    for l in 1..=199u64 {
        let c = fit_class(&[l, l + 1]).unwrap();
        assert!(c.discriminant != 0.0);
        assert!(c.is_exact());
    }
}

#[test]
fn monotonic_pq_on_log_grid() {
    let (lo, hi) = (0.25f64.ln(), 1e5f64.ln());
    for i in 0..=60 {
        let x = (lo + (hi - lo) * i as f64 / 60.0).exp();
        let r = monotonic_PQ_check(x, 1.0).unwrap();
        assert!(r.satisfied, "x={x} {r:?}");
    }
}

#[test]
fn holder_grid() {
    for p in [1.5, 2.0, 4.0, 8.0, 64.0] {
        for n in [1, 10, 1000] {
            let r = holder_truncated(p, n).unwrap();
            assert!(r.satisfied, "p={p} N={n}");
            assert!(r.rhs.is_finite());
        }
    }
}

#[test]
fn fermi_holder_at_zero_rescales_plain_holder() {
    for m in 1..=4 {
        let p = 2.0 * m as f64;
        let plain = holder_truncated(p, 1000).unwrap();
        let fermi = fermi_weighted_holder(p, 0.0, 1000).unwrap();
        let z = dds_core::special::zeta(p).unwrap().to_f64().powf(1.0 / p);
        let f = dds_core::special::fermi_dirac_f(p, 0.0).unwrap().powf(1.0 / p);
        assert!((fermi.lhs - plain.lhs).abs() / plain.lhs < 1e-14);
        assert!((fermi.rhs - plain.rhs / z * f).abs() / fermi.rhs < 1e-12);
        assert!(fermi.satisfied, "p={p}");
    }
}

#[test]
fn sin_int_is_exact_at_small_arguments() {
    assert_eq!(sin_int(1).unwrap().to_f64(), 1f64.sin());
}
