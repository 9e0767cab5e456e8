use proptest::prelude::*;
use seriation::Graph;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
        )
            .prop_map(|(n, bits)| {
                let mut k = 0;
                Graph::from_fn(n, |_, _| {
                    k += 1;
                    bits[k - 1]
                })
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn common_neighbors_match_naive(g in arb_graph(50)) {
        let cn = g.common_neighbors();
        let n = g.n();
        for i in 0..n {
            for j in 0..n {
                let naive = (0..n).filter(|&k| g.has_edge(i, k) && g.has_edge(k, j)).count();
                prop_assert_eq!(cn.get(i, j) as usize, naive);
            }
        }
    }

    #[test]
    fn threshold_square_is_monotone(g in arb_graph(200), a in 0.01f64..0.99, b in 0.01f64..0.99) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let h_lo = g.threshold_square(lo).unwrap();
        let h_hi = g.threshold_square(hi).unwrap();
        prop_assert!(h_hi.edges().all(|(u, v)| h_lo.has_edge(u, v)));
    }

    #[test]
    fn restriction_composes(g in arb_graph(40), a_mask in any::<u64>(), b_mask in any::<u64>()) {
        let n = g.n();
        let a: Vec<usize> = (0..n).filter(|&v| a_mask >> (v % 64) & 1 == 1).collect();
        let both: Vec<usize> = a.iter().copied().filter(|&v| b_mask >> (v % 64) & 1 == 1).collect();
        prop_assume!(!both.is_empty());
        let (ga, _) = g.induced_subgraph(&a).unwrap();
        let positions: Vec<usize> = both.iter().map(|v| a.iter().position(|x| x == v).unwrap()).collect();
        let (twice, _) = ga.induced_subgraph(&positions).unwrap();
        let (once, map) = g.induced_subgraph(&both).unwrap();
        prop_assert_eq!(twice, once);
        prop_assert_eq!(map, both);
    }
}
