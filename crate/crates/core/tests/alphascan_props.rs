use rayon::prelude::*;
use seriation::alphascan::{pick_alpha, scan_alpha, ScanConfig};
use seriation::eval::ordering_error;
use seriation::graphon::{check_assumptions, sample_graph};
use seriation::sketch::{desk_default_params, main_estimate};
use seriation::GraphonSpec;

#[test]
fn picked_alpha_is_feasible_and_competitive() {
    let spec = GraphonSpec::step(0.8, 0.1, 0.2).unwrap();
    let window = check_assumptions(&spec, 0.1, 1024).unwrap();
    let mid = 0.5 * (window.alpha_lower + window.alpha_upper);
    let grid: Vec<f64> = (2..=16).map(|k| k as f64 / 100.0).collect();
    let n = 400;
    let params = desk_default_params(n);
    let runs: Vec<(f64, usize, usize)> = (0..20u64)
        .into_par_iter()
        .map(|seed| {
            let s = sample_graph(&spec, n, seed).unwrap();
            let lat = s.latents.as_ref().unwrap();
            let mut config = ScanConfig::for_size(n, seed);
            config.trials = 100;
            let diags = scan_alpha(&s.graph, &grid, &config).unwrap();
            assert!(diags.windows(2).all(|w| w[1].h_edges <= w[0].h_edges));
            let chosen = pick_alpha(&diags).expect("a candidate passes");
            let err = |alpha: f64| {
                main_estimate(&s.graph, alpha, &params, seed)
                    .map_or(n, |o| ordering_error(&o, lat).unwrap().error_d)
            };
            (chosen, err(chosen), err(mid))
        })
        .collect();
    for &(a, _, _) in &runs {
        assert!(a > window.alpha_upper && a < window.alpha_lower, "chosen {a} outside the window");
    }
    let median = |mut v: Vec<usize>| {
        v.sort_unstable();
        v[v.len() / 2]
    };
    let at_chosen = median(runs.iter().map(|r| r.1).collect());
    let at_mid = median(runs.iter().map(|r| r.2).collect());
    assert!(at_chosen as f64 <= 1.5 * at_mid as f64, "median error {at_chosen} vs {at_mid} at {mid}");
}
