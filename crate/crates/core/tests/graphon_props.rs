use proptest::prelude::*;
use seriation::graphon::{sample_graph, square_closed_form_step};
use seriation::{induced_order, GraphonSpec, Ordering};

fn arb_step() -> impl Strategy<Value = GraphonSpec> {
    (0.0f64..=1.0, 0.0f64..=1.0, 0.01f64..0.99).prop_map(|(a, b, d)| {
        let (p, q) = if a >= b { (a, b) } else { (b, a) };
        GraphonSpec::step(p, q, d).unwrap()
    })
}

fn arb_profile() -> impl Strategy<Value = GraphonSpec> {
    prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..6).prop_map(|raw| {
        let mut zs: Vec<f64> = raw.iter().map(|r| r.0).collect();
        zs[0] = 0.0;
        zs.sort_by(f64::total_cmp);
        zs.dedup();
        let mut vs: Vec<f64> = raw.iter().map(|r| r.1).take(zs.len()).collect();
        vs.sort_by(|a, b| b.total_cmp(a));
        let breakpoints = zs.into_iter().zip(vs).collect();
        GraphonSpec::Profile { breakpoints }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eval_is_symmetric(spec in prop_oneof![arb_step(), arb_profile()], x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
        let a = spec.eval(x, y).unwrap();
        prop_assert_eq!(a, spec.eval(y, x).unwrap());
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn square_is_symmetric(spec in prop_oneof![arb_step(), arb_profile()], x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
        let a = spec.square_eval(x, y, 512).unwrap();
        let b = spec.square_eval(y, x, 512).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn closed_form_matches_quadrature(spec in arb_step(), x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
        let GraphonSpec::Step { p, q, d } = spec else { unreachable!() };
        let exact = square_closed_form_step(p, q, d, x, y).unwrap();
        prop_assert!((exact - spec.square_eval(x, y, 256).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn sampling_is_deterministic() {
    let spec = GraphonSpec::step(0.7, 0.2, 0.3).unwrap();
    let a = sample_graph(&spec, 120, 11).unwrap();
    let b = sample_graph(&spec, 120, 11).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.graph, sample_graph(&spec, 120, 12).unwrap().graph);
}

#[test]
fn constant_edge_density() {
    let c = 0.3;
    let n = 2000;
    let g = sample_graph(&GraphonSpec::Constant { c }, n, 5)
        .unwrap()
        .graph;
    let pairs = (n * (n - 1) / 2) as f64;
    let density = g.edge_count() as f64 / pairs;
    let se = (c * (1.0 - c) / pairs).sqrt();
    assert!((density - c).abs() < 3.0 * se, "density {density}");
}

#[test]
fn sharp_step_rows_are_intervals_in_latent_order() {
    for seed in 0..5 {
        let s = sample_graph(&GraphonSpec::step(1.0, 0.0, 0.15).unwrap(), 150, seed).unwrap();
        let order: Ordering = induced_order(s.latents.as_ref().unwrap());
        assert!(seriation::interval::is_robinsonian_under(&s.graph, &order).unwrap());
    }
    // with p < 1 rows have gaps, but no edge spans more than d
    let s = sample_graph(&GraphonSpec::step(0.8, 0.0, 0.15).unwrap(), 150, 0).unwrap();
    let lat = s.latents.unwrap();
    assert!(s.graph.edges().all(|(u, v)| (lat[u] - lat[v]).abs() < 0.15));
}
