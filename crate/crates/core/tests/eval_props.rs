use proptest::prelude::*;
use seriation::eval::{comparison_accuracy, ordering_error, precision_agreement};
use seriation::{induced_order, Comparison, Ordering};

fn arb_case(max_n: usize) -> impl Strategy<Value = (Ordering, Vec<f64>)> {
    (2..=max_n).prop_flat_map(|n| {
        (
            Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::hash_set(0u32..1_000_000, n),
        )
            .prop_map(|(ranks, pts)| {
                let mut lat: Vec<f64> = pts.into_iter().map(|x| x as f64 / 1e6).collect();
                lat.reverse();
                (Ordering::from_ranks(ranks).unwrap(), lat)
            })
    })
}

/// Smallest D such that every pair more than D apart in the true order is
/// ordered consistently with one fixed direction, by trying every D.
fn exhaustive_error(sigma: &Ordering, latents: &[f64]) -> usize {
    let n = latents.len();
    let truth = induced_order(latents);
    let ok = |dir: bool, d: usize| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let gap = truth.rank(i).abs_diff(truth.rank(j));
                if gap <= d || truth.rank(i) >= truth.rank(j) {
                    return true;
                }
                (sigma.rank(i) < sigma.rank(j)) == dir
            })
        })
    };
    (0..n).find(|&d| ok(true, d) || ok(false, d)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn error_matches_exhaustive((sigma, lat) in arb_case(8)) {
        prop_assert_eq!(ordering_error(&sigma, &lat).unwrap().error_d, exhaustive_error(&sigma, &lat));
    }

    #[test]
    fn error_is_reversal_invariant((sigma, lat) in arb_case(30)) {
        let a = ordering_error(&sigma, &lat).unwrap();
        let b = ordering_error(&sigma.reversed(), &lat).unwrap();
        prop_assert_eq!(a.error_d, b.error_d);
    }

    #[test]
    fn zero_error_means_agreement_at_every_precision((sigma, lat) in arb_case(30), d in 1e-9f64..1.0) {
        if ordering_error(&sigma, &lat).unwrap().error_d == 0 {
            prop_assert!(precision_agreement(&sigma, &lat, d).unwrap().0);
        }
        let truth = induced_order(&lat);
        prop_assert_eq!(ordering_error(&truth, &lat).unwrap().error_d, 0);
        prop_assert!(precision_agreement(&truth.reversed(), &lat, d).unwrap().0);
    }

    #[test]
    fn true_comparison_is_fully_accurate((_, lat) in arb_case(30), gap in 0.0f64..0.5) {
        let f = Comparison::from_ordering(&induced_order(&lat));
        prop_assert_eq!(comparison_accuracy(&f, &lat, gap).unwrap(), 1.0);
        prop_assert_eq!(comparison_accuracy(&f.negated(), &lat, gap).unwrap(), 1.0);
    }
}
