use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use rans::graph::build_rans;
use rans::montecarlo::{sample_graph_at, sample_tree_at};
use rans::series::PowerSeries;
use rans::tree::{SamplingStrategy, TernaryTree};

fn strategy() -> impl Strategy<Value = SamplingStrategy> {
    prop_oneof![Just(SamplingStrategy::CycleLemma), Just(SamplingStrategy::RecursiveSplit)]
}

fn series(len: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(-20i64..20, len).prop_map(PowerSeries::from_integers)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_trees_have_the_requested_shape(n in 0usize..120, seed: u64, s in strategy()) {
        let t = sample_tree_at(n, seed, 0, s);
        prop_assert_eq!(t.order(), n);
        prop_assert_eq!(t.leaf_count(), 2 * n + 1);
        let word = t.encode();
        prop_assert_eq!(word.len(), 3 * n + 1);
        prop_assert_eq!(TernaryTree::decode(&word).unwrap(), t);
    }

    #[test]
    fn graph_counts(n in 0usize..150, seed: u64) {
        let g = sample_graph_at(n, seed, 1, SamplingStrategy::CycleLemma);
        prop_assert_eq!(g.vertex_count(), n + 3);
        prop_assert_eq!(g.edge_count(), 3 * n + 3);
        prop_assert!(g.is_connected());
        let degrees: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degrees, 2 * g.edge_count());
        let n = n as u64;
        prop_assert_eq!(g.pair_count(), n * (n.saturating_sub(1)) / 2 + 3 * n);
        let census = g.total_distance_census();
        prop_assert!(census.is_consistent());
        prop_assert_eq!(census.pairs(), g.pair_count());
        prop_assert_eq!(census.grand_total, g.pairwise_distance_total());
        prop_assert!(census.inter_total <= census.frontier_model_inter());
        prop_assert_eq!(census.inter_total == census.frontier_model_inter(), census.frontier_shortcuts == 0);
    }

    #[test]
    fn outermost_distances_differ_by_at_most_one(n in 1usize..100, seed: u64) {
        let g = sample_graph_at(n, seed, 2, SamplingStrategy::CycleLemma);
        let d: Vec<Vec<u32>> = (0..3).map(|s| g.bfs_distances(s)).collect();
        for x in 0..g.vertex_count() {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                prop_assert!(d[a][x].abs_diff(d[b][x]) <= 1);
            }
        }
    }

    #[test]
    fn labelings_are_distances(n in 0usize..100, seed: u64) {
        let g = sample_graph_at(n, seed, 3, SamplingStrategy::RecursiveSplit);
        prop_assert_eq!(g.delta_labeling(1).unwrap(), g.bfs_from_set(&[0]));
        prop_assert_eq!(g.delta_labeling(2).unwrap(), g.bfs_from_set(&[0, 1]));
        prop_assert_eq!(g.delta_labeling(3).unwrap(), g.bfs_from_set(&[0, 1, 2]));
    }

    #[test]
    fn pair_classes_cover_all_pairs(n in 1usize..25, seed: u64) {
        let g = sample_graph_at(n, seed, 4, SamplingStrategy::CycleLemma);
        let mut pairs = 0u64;
        for v in 0..g.vertex_count() {
            for w in v + 1..g.vertex_count() {
                if v < 3 && w < 3 {
                    continue;
                }
                g.classify_pair(v, w).unwrap();
                pairs += 1;
            }
        }
        prop_assert_eq!(pairs, g.pair_count());
    }

    #[test]
    fn rebuilt_graph_is_identical(n in 0usize..80, seed: u64) {
        let t = sample_tree_at(n, seed, 5, SamplingStrategy::CycleLemma);
        let again = TernaryTree::decode(&t.encode()).unwrap();
        prop_assert_eq!(build_rans(&t).export(), build_rans(&again).export());
    }

    #[test]
    fn inverse_and_product_rule(mut a in series(12), b in series(12), lead in 1i64..5) {
        a.set_coeff(0, BigRational::from_integer(BigInt::from(lead))).unwrap();
        let one = PowerSeries::one(11);
        prop_assert_eq!(&a * &a.inverse().unwrap(), one);
        let lhs = (&a * &b).derivative();
        let rhs = &a.derivative() * &b + &a * &b.derivative();
        prop_assert_eq!(lhs.first_mismatch(&rhs), None);
        let q = (&a * &b).div(&a).unwrap();
        prop_assert_eq!(q, b);
    }
}
