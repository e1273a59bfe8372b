use proptest::prelude::*;

use opfractal::operators::{apply_s0, apply_s1, apply_u};
use opfractal::spectrum::{scale_value, stratum_index, word_from_value, word_value};
use opfractal::{
    in_zero_set, mu_hat, mu_hat_product, reduce_argument, BernoulliParams, DigitWord, QuarterInt,
};

fn any_params() -> impl Strategy<Value = BernoulliParams> {
    (1u32..=6).prop_map(|n| BernoulliParams::scale(n).unwrap())
}

fn scaled_params() -> impl Strategy<Value = BernoulliParams> {
    (2u32..=6, 1u32..=4).prop_map(|(n, k)| BernoulliParams::new(n, Some(2 * k + 1)).unwrap())
}

fn word(max_digits: u32) -> impl Strategy<Value = DigitWord> {
    (0u64..(1u64 << max_digits)).prop_map(|m| DigitWord::from_mask(m).unwrap())
}

fn quarter(bound: i128) -> impl Strategy<Value = QuarterInt> {
    (-bound..=bound).prop_map(QuarterInt::from_quarters)
}

/// cos products evaluated left to right, fine for small arguments.
fn naive(t: f64, n: u32) -> f64 {
    let base = 2.0 * n as f64;
    let mut p = 1.0;
    let mut x = t;
    for _ in 0..80 {
        x /= base;
        p *= (std::f64::consts::TAU * x).cos();
    }
    p
}

proptest! {
    #[test]
    fn zero_set_iff_reduction_vanishes(t in quarter(1 << 60), params in any_params()) {
        prop_assert_eq!(in_zero_set(t, params), reduce_argument(t, params).is_zero());
    }

    #[test]
    fn reduction_preserves_value(t in quarter(1 << 16), params in any_params()) {
        prop_assume!(!in_zero_set(t, params));
        let r = reduce_argument(t, params);
        let full = mu_hat_product(t.to_f64(), params, 60).unwrap();
        let reduced = mu_hat_product(r.reduced.to_f64(), params, 60).unwrap();
        let diff = (full.value() - r.sign as f64 * reduced.value()).abs();
        prop_assert!(diff <= full.error_bound + reduced.error_bound, "diff {diff}");
    }

    #[test]
    fn symmetric_under_negation(t in quarter(1 << 40), params in any_params()) {
        let a = mu_hat(t, params, 1e-12).unwrap();
        let b = mu_hat(-t, params, 1e-12).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn error_bounds_are_honest(x in -200.0f64..200.0, terms in 1u32..12, params in any_params()) {
        let coarse = mu_hat_product(x, params, terms).unwrap();
        let fine = mu_hat_product(x, params, 4 * terms).unwrap();
        prop_assert!((coarse.value() - fine.value()).abs() <= coarse.error_bound + fine.error_bound);
    }

    #[test]
    fn agrees_with_naive_product(x in -50.0f64..50.0, params in any_params()) {
        let v = mu_hat_product(x, params, 60).unwrap();
        prop_assert!((v.value() - naive(x, params.n())).abs() <= v.error_bound + 1e-12);
    }

    #[test]
    fn words_and_values_correspond(w in word(30), v in word(30), params in any_params()) {
        let value = word_value(w, params);
        prop_assert_eq!(word_from_value(value, params), Some(w));
        prop_assert_eq!(w.mask().cmp(&v.mask()), value.cmp(&word_value(v, params)));
    }

    #[test]
    fn distinct_words_are_orthogonal(w in word(30), v in word(30), params in any_params()) {
        prop_assume!(w != v);
        prop_assume!(params.n() >= 2);
        prop_assert!(in_zero_set(word_value(w, params) - word_value(v, params), params));
    }

    #[test]
    fn scaled_words_are_orthogonal(w in word(30), v in word(30), params in scaled_params()) {
        prop_assume!(w != v);
        let diff = scale_value(w, params).unwrap() - scale_value(v, params).unwrap();
        prop_assert!(in_zero_set(diff, params));
    }

    #[test]
    fn isometries_are_injective_with_disjoint_ranges(w in word(20), v in word(20)) {
        prop_assume!(w != v);
        prop_assert_ne!(apply_s0(w), apply_s0(v));
        prop_assert_ne!(apply_s1(w), apply_s1(v));
        prop_assert_ne!(apply_s0(w), apply_s1(v));
        prop_assert_ne!(apply_s0(w), apply_s1(w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn u_preserves_strata(w in word(5), params in scaled_params()) {
        let image = apply_u(w, params, 6, 1e-10).unwrap();
        for target in image.support() {
            prop_assert_eq!(stratum_index(target), stratum_index(w));
        }
    }
}
