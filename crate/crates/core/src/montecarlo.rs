//! Sampled statistics on uniformly random RANS.
//!
//! Sample `i` of a run with seed `s` always uses the PRNG stream
//! [`rng::stream`]`(s, i)`, so results do not depend on how samples are
//! scheduled.

use std::collections::HashMap;

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::graph::{build_rans, RansGraph};
use crate::rng;
use crate::tree::{enumerate_trees, SamplingStrategy, TernaryTree, TreeSampler};

pub fn sample_tree_at(n: usize, seed: u64, index: u64, strategy: SamplingStrategy) -> TernaryTree {
    let mut r = rng::stream(seed, index);
    TreeSampler::new(strategy).sample(n, &mut r)
}

pub fn sample_graph_at(n: usize, seed: u64, index: u64, strategy: SamplingStrategy) -> RansGraph {
    build_rans(&sample_tree_at(n, seed, index, strategy))
}

/// Mean distance over `C(R)` for `count` sampled RANS of order `n`, by
/// all-pairs BFS.
pub fn mean_pairwise_samples(n: usize, count: usize, seed: u64, strategy: SamplingStrategy) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InsufficientData("the empty RANS has no pairs".into()));
    }
    Ok((0..count as u64)
        .map(|i| {
            sample_graph_at(n, seed, i, strategy)
                .mean_pairwise_distance()
                .expect("nonempty")
        })
        .collect())
}

/// Histogram of internal-vertex degrees over `count` sampled RANS. Each
/// internal vertex is the center of a sub-RANS, so this is the center
/// degree of a random sub-RANS.
pub fn internal_degree_histogram(n: usize, count: usize, seed: u64, strategy: SamplingStrategy) -> Vec<u64> {
    let mut hist = Vec::new();
    for i in 0..count as u64 {
        for d in sample_graph_at(n, seed, i, strategy).internal_degrees() {
            if hist.len() <= d {
                hist.resize(d + 1, 0);
            }
            hist[d] += 1;
        }
    }
    hist
}

/// One row of a distance profile from `O1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub order: usize,
    pub sample: u64,
    pub distance: usize,
    pub count: u64,
    /// `count / n`.
    pub proportion: f64,
    /// `distance / sqrt(n)`.
    pub scaled_distance: f64,
    /// `sqrt(n) count / n`.
    pub scaled_proportion: f64,
}

/// Profiles from `O1` for `samples` RANS at each order, one row per distance
/// from 1 to the largest observed.
pub fn profile_rows(orders: &[usize], samples: usize, seed: u64, strategy: SamplingStrategy) -> Vec<ProfileRow> {
    let mut rows = Vec::new();
    for (j, &n) in orders.iter().enumerate() {
        if n == 0 {
            continue;
        }
        for s in 0..samples as u64 {
            let index = (j * samples) as u64 + s;
            let g = sample_graph_at(n, seed, index, strategy);
            let p = g.distance_profile(0).expect("O1 exists");
            let root = (n as f64).sqrt();
            for i in 1..=p.max_distance() {
                let c = p.counts[i];
                rows.push(ProfileRow {
                    order: n,
                    sample: index,
                    distance: i,
                    count: c,
                    proportion: c as f64 / n as f64,
                    scaled_distance: i as f64 / root,
                    scaled_proportion: root * c as f64 / n as f64,
                });
            }
        }
    }
    rows
}

/// Position of the largest average proportion, in units of `sqrt(n)`.
pub fn profile_peak(rows: &[ProfileRow]) -> Option<f64> {
    let mut by_distance: HashMap<(usize, usize), (f64, usize)> = HashMap::new();
    for r in rows {
        let e = by_distance.entry((r.order, r.distance)).or_default();
        e.0 += r.proportion;
        e.1 += 1;
    }
    let mut peaks: HashMap<usize, (usize, f64)> = HashMap::new();
    for (&(n, i), &(sum, _)) in &by_distance {
        let e = peaks.entry(n).or_insert((i, sum));
        if sum > e.1 {
            *e = (i, sum);
        }
    }
    if peaks.is_empty() {
        return None;
    }
    let total: f64 = peaks.iter().map(|(&n, &(i, _))| i as f64 / (n as f64).sqrt()).sum();
    Some(total / peaks.len() as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquareResult {
    pub order: usize,
    pub samples: usize,
    pub cells: usize,
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Sample counts per shape, in enumeration order.
    pub observed: Vec<u64>,
}

impl ChiSquareResult {
    /// Uniformity is not rejected at significance `alpha`.
    pub fn accepts(&self, alpha: f64) -> bool {
        self.p_value > alpha
    }
}

/// Pearson chi-square of sampled shape frequencies against the uniform law
/// on all trees of order `n`.
pub fn chi_square_uniformity(
    n: usize,
    samples: usize,
    seed: u64,
    strategy: SamplingStrategy,
    cap: usize,
) -> Result<ChiSquareResult> {
    let shapes: HashMap<String, usize> = enumerate_trees(n, cap)?
        .enumerate()
        .map(|(i, t)| (t.encode(), i))
        .collect();
    let cells = shapes.len();
    if cells < 2 {
        return Err(Error::InsufficientData(format!("order {n} has a single shape")));
    }
    let mut observed = vec![0u64; cells];
    let mut sampler = TreeSampler::new(strategy);
    let mut r = rng::seeded(seed);
    for _ in 0..samples {
        let word = sampler.sample(n, &mut r).encode();
        observed[shapes[&word]] += 1;
    }
    let expected = samples as f64 / cells as f64;
    let statistic = observed
        .iter()
        .map(|&o| (o as f64 - expected).powi(2) / expected)
        .sum();
    let dof = cells - 1;
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    Ok(ChiSquareResult {
        order: n,
        samples,
        cells,
        statistic,
        dof,
        p_value: dist.sf(statistic),
        observed,
    })
}

/// Chi-square test that two count vectors over the same cells come from the
/// same distribution. Returns `(statistic, dof, p_value)`.
pub fn chi_square_homogeneity(a: &[u64], b: &[u64]) -> Result<(f64, usize, f64)> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::InsufficientData("need two count vectors over the same cells".into()));
    }
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let total = na + nb;
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        cells += 1;
        for (obs, rows) in [(x as f64, na), (y as f64, nb)] {
            let e = rows * col / total;
            statistic += (obs - e).powi(2) / e;
        }
    }
    let dof = cells.saturating_sub(1).max(1);
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    Ok((statistic, dof, dist.sf(statistic)))
}
