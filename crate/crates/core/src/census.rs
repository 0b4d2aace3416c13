//! Exhaustive aggregation of graph statistics over every RANS of an order.
//!
//! These totals are the brute-force oracle the generating functions are
//! checked against.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{build_rans, RansGraph};
use crate::tree::enumerate_trees;

/// Totals over all RANS of one order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCensus {
    pub order: usize,
    pub trees: u64,
    /// `distance_from_o1[i]`: internal vertices at distance `i` from `O1`.
    pub distance_from_o1: Vec<u64>,
    /// Sums of the three labelings over internal vertices.
    pub delta: [u64; 3],
    pub equidistant: u64,
    pub intra: u64,
    pub inter: u64,
    pub inter_lower_bound: u64,
    pub fedges: u64,
    pub grand_total: u64,
    /// `intra + inter_lower_bound + fedges`: the grand total if every inter
    /// shortest path crossed the frontier.
    pub frontier_model_total: u64,
    /// Inter pairs with a path around the frontier shorter than any path
    /// through it.
    pub frontier_shortcuts: u64,
    /// `center_degree[k]`: RANS whose center has degree `k`.
    pub center_degree: Vec<u64>,
    /// RANS by numbers of internal vertices at distance 1, 2, 3 from `O1`.
    pub profiles: BTreeMap<[u32; 3], u64>,
    /// RANS by their triple of labeling sums.
    pub delta_triples: BTreeMap<[u32; 3], u64>,
    /// Invariant violations found while aggregating; empty when all hold.
    pub violations: Vec<String>,
}

fn bump(v: &mut Vec<u64>, i: usize, by: u64) {
    if v.len() <= i {
        v.resize(i + 1, 0);
    }
    v[i] += by;
}

impl OrderCensus {
    fn absorb(&mut self, g: &RansGraph, word: &str) {
        let n = g.order();
        self.trees += 1;
        let mut fail = |what: &str| self.violations.push(format!("{word}: {what}"));

        if g.edge_count() != 3 + 3 * n {
            fail("edge count differs from 3 + 3n");
        }
        if !g.is_connected() {
            fail("graph is not connected");
        }
        let from = [0, 1, 2].map(|s| g.bfs_distances(s));
        for x in 0..g.vertex_count() {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                if from[a][x].abs_diff(from[b][x]) > 1 {
                    fail("outermost clique bound violated");
                }
            }
        }
        let targets: [&[usize]; 3] = [&[0], &[0, 1], &[0, 1, 2]];
        let mut triple = [0u32; 3];
        for (k, set) in targets.iter().enumerate() {
            let labels = g.delta_labeling(k as u8 + 1).expect("valid variant");
            if labels != g.bfs_from_set(set) {
                fail("labeling differs from BFS distance");
            }
            let sum: u64 = labels[3..].iter().map(|&l| l as u64).sum();
            self.delta[k] += sum;
            triple[k] = sum as u32;
        }
        *self.delta_triples.entry(triple).or_default() += 1;

        let profile = g.distance_profile(0).expect("O1 exists");
        let mut marks = [0u32; 3];
        for (i, &c) in profile.counts.iter().enumerate() {
            bump(&mut self.distance_from_o1, i, c);
            if (1..=3).contains(&i) {
                marks[i - 1] = c as u32;
            }
        }
        *self.profiles.entry(marks).or_default() += 1;

        self.equidistant += g.equidistant_count();
        let census = g.total_distance_census();
        if !census.is_consistent() {
            fail("distance census is inconsistent");
        }
        if census.pairs() != g.pair_count() {
            fail("pair count differs from n(n-1)/2 + 3n");
        }
        self.intra += census.intra_total;
        self.inter += census.inter_total;
        self.inter_lower_bound += census.inter_lower_bound;
        self.fedges += census.fedge_count;
        self.grand_total += census.grand_total;
        self.frontier_model_total += census.intra_total + census.frontier_model_inter();
        self.frontier_shortcuts += census.frontier_shortcuts;
        if let Some(d) = g.degree_stats().center_degree {
            bump(&mut self.center_degree, d, 1);
        }
    }

    /// Internal vertices at distance `i` from `O1`, 0 past the maximum.
    pub fn at_distance(&self, i: usize) -> u64 {
        self.distance_from_o1.get(i).copied().unwrap_or(0)
    }

    /// Marginal of [`Self::profiles`] over the first `d` distances.
    pub fn profile_marginal(&self, d: usize) -> BTreeMap<Vec<u32>, u64> {
        let mut out = BTreeMap::new();
        for (k, &c) in &self.profiles {
            *out.entry(k[..d].to_vec()).or_default() += c;
        }
        out
    }
}

/// Aggregates every RANS of order `n`; refuses orders above `cap`.
pub fn census(n: usize, cap: usize) -> Result<OrderCensus> {
    let mut out = OrderCensus {
        order: n,
        ..Default::default()
    };
    for tree in enumerate_trees(n, cap)? {
        out.absorb(&build_rans(&tree), &tree.encode());
    }
    Ok(out)
}

/// Censuses of orders `0..=max`.
pub fn census_up_to(max: usize, cap: usize) -> Result<Vec<OrderCensus>> {
    (0..=max).map(|n| census(n, cap)).collect()
}

/// One scalar statistic across a census table, indexed by order.
pub fn column<F: Fn(&OrderCensus) -> u64>(table: &[OrderCensus], f: F) -> Vec<u64> {
    table.iter().map(f).collect()
}
