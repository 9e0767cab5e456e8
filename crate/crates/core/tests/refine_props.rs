use proptest::prelude::*;
use seriation::graphon::sample_graph;
use seriation::refine::{
    build_schedule, build_schedule_with, iterative_estimate, refine, stage_levels, Contradiction,
    FixedOrderHook, IterativeOptions, ThresholdRule,
};
use seriation::{induced_order, GraphonSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn schedule_shape(eps in 0.01f64..0.499, n in 3usize..1_000_000) {
        for rule in [ThresholdRule::Asymptotic, ThresholdRule::Desk] {
            let s = build_schedule_with(eps, n, rule).unwrap();
            prop_assert_eq!(s.k, (-eps.log2()).floor() as usize + 1);
            prop_assert_eq!(s.p.len(), s.k);
            prop_assert_eq!(s.d.len(), s.k);
            prop_assert_eq!(s.thresholds.len(), s.k - 1);
            prop_assert!(s.beta > 0.0);
            prop_assert!((s.p[s.k - 1] - 1.0).abs() < 1e-12);
            prop_assert!(s.p.windows(2).all(|w| w[0] < w[1]));
            for t in &s.thresholds {
                prop_assert!(t.c1 >= 1 && t.c2 >= 1 && t.c3 >= 1);
                prop_assert!(t.c1 <= n && t.c2 <= n && t.c3 <= n);
            }
        }
    }

    #[test]
    fn levels_nested_and_final_level_is_everything(eps in 0.05f64..0.49, n in 3usize..3000, seed in any::<u64>()) {
        let s = build_schedule(eps, n).unwrap();
        let levels = stage_levels(&s, seed);
        prop_assert_eq!(levels.len(), s.k);
        for w in levels.windows(2) {
            prop_assert!(w[0].iter().all(|v| w[1].binary_search(v).is_ok()));
        }
        prop_assert_eq!(levels[s.k - 1].len(), n);
        prop_assert_eq!(&levels, &stage_levels(&s, seed));
    }
}

#[test]
fn reversing_the_input_order_negates_fresh_comparisons() {
    let spec = GraphonSpec::step(0.8, 0.0, 0.2).unwrap();
    for seed in 0..4 {
        let s = sample_graph(&spec, 300, seed).unwrap();
        let lat = s.latents.as_ref().unwrap();
        let v1: Vec<usize> = (0..300).step_by(3).collect();
        let v2: Vec<usize> = (0..300).collect();
        let sub: Vec<f64> = v1.iter().map(|&v| lat[v]).collect();
        let sigma = induced_order(&sub);
        let sched = build_schedule_with(0.45, 300, ThresholdRule::Desk).unwrap();
        let th = sched.thresholds[0];
        let a = refine(&s.graph, &v1, &v2, &sigma, th, Contradiction::default()).unwrap();
        let b = refine(
            &s.graph,
            &v1,
            &v2,
            &sigma.reversed(),
            th,
            Contradiction::default(),
        )
        .unwrap();
        assert_eq!(a.fresh, b.fresh);
        assert_eq!(b.fresh_comparison, a.fresh_comparison.negated());
        assert!(a.fresh_comparison.is_antisymmetric());
    }
}

#[test]
fn true_order_survives_iteration() {
    let spec = GraphonSpec::step(0.8, 0.0, 0.2).unwrap();
    let s = sample_graph(&spec, 600, 11).unwrap();
    let lat = s.latents.as_ref().unwrap();
    let hook = FixedOrderHook {
        full: induced_order(lat),
    };
    let out = iterative_estimate(&s.graph, 0.45, &hook, 11, IterativeOptions::default()).unwrap();
    assert_eq!(out.stage_orders.len(), out.schedule.k);
    let err = seriation::eval::ordering_error(&out.ordering, lat)
        .unwrap()
        .error_d;
    assert!(err < 60, "error {err}");
    assert_eq!(out.ordering.n(), 600);
}
