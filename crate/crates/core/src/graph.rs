//! The triangulation realized from a ternary tree, and the brute-force
//! statistics computed on it.
//!
//! Vertex ids: `0, 1, 2` are the outermost vertices `O1, O2, O3`; the internal
//! vertex `3 + k` is the center of the sub-RANS corresponding to tree node `k`
//! (preorder). Sub-RANS `S_i` of a RANS is the one not containing corner
//! `O_i`: its corners are those of the parent with corner `i` replaced by the
//! parent's center.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::TernaryTree;

pub type VertexId = usize;

pub const OUTERMOST: [VertexId; 3] = [0, 1, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// `O1`, `O2` or `O3` (index 0, 1, 2).
    Outermost(u8),
    Internal,
}

/// One sub-RANS, identified by its center.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubRans {
    pub center: VertexId,
    pub corners: [VertexId; 3],
    /// Center of the enclosing sub-RANS, `None` at the top level.
    pub parent: Option<VertexId>,
    /// Which child (0, 1, 2 for `S1, S2, S3`) of the parent this is.
    pub slot: u8,
    pub depth: u32,
    pub children: [Option<VertexId>; 3],
}

#[derive(Clone, Debug)]
pub struct RansGraph {
    offsets: Vec<u32>,
    targets: Vec<u32>,
    subrans: Vec<SubRans>,
}

/// Builds the RANS corresponding to `tree`.
pub fn build_rans(tree: &TernaryTree) -> RansGraph {
    let n = tree.order();
    let mut subrans = Vec::with_capacity(n);
    let mut edges: Vec<(u32, u32)> = vec![(0, 1), (0, 2), (1, 2)];
    edges.reserve(3 * n);
    // (node, corners, parent center, slot, depth), popped in preorder.
    let mut stack = Vec::new();
    if let Some(root) = tree.root() {
        stack.push((root, OUTERMOST, None, 0u8, 0u32));
    }
    while let Some((node, corners, parent, slot, depth)) = stack.pop() {
        let center = 3 + node as usize;
        debug_assert_eq!(center, 3 + subrans.len());
        for &c in &corners {
            edges.push((c as u32, center as u32));
        }
        let kids = tree.children(node);
        subrans.push(SubRans {
            center,
            corners,
            parent,
            slot,
            depth,
            children: kids.map(|k| k.map(|k| 3 + k as usize)),
        });
        for i in (0..3).rev() {
            if let Some(k) = kids[i] {
                let mut sub = corners;
                sub[i] = center;
                stack.push((k, sub, Some(center), i as u8, depth + 1));
            }
        }
    }
    RansGraph::from_edges(n + 3, &edges, subrans)
}

impl RansGraph {
    fn from_edges(vertices: usize, edges: &[(u32, u32)], subrans: Vec<SubRans>) -> Self {
        let mut degree = vec![0u32; vertices];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(vertices + 1);
        offsets.push(0u32);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill: Vec<u32> = offsets[..vertices].to_vec();
        let mut targets = vec![0u32; 2 * edges.len()];
        for &(u, v) in edges {
            targets[fill[u as usize] as usize] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize] as usize] = u;
            fill[v as usize] += 1;
        }
        Self {
            offsets,
            targets,
            subrans,
        }
    }

    /// Number of internal vertices.
    pub fn order(&self) -> usize {
        self.subrans.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.order() + 3
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn role(&self, v: VertexId) -> Role {
        if v < 3 {
            Role::Outermost(v as u8)
        } else {
            Role::Internal
        }
    }

    /// Center of the whole RANS, `None` when empty.
    pub fn center(&self) -> Option<VertexId> {
        (self.order() > 0).then_some(3)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let (a, b) = (self.offsets[v] as usize, self.offsets[v + 1] as usize);
        self.targets[a..b].iter().map(|&t| t as usize)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    /// Each undirected edge once, with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.neighbors(u).filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// The sub-RANS whose center is the internal vertex `center`.
    pub fn subrans(&self, center: VertexId) -> &SubRans {
        &self.subrans[center - 3]
    }

    pub fn all_subrans(&self) -> &[SubRans] {
        &self.subrans
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::NoSuchVertex(v))
        }
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != UNREACHED)
    }

    /// Shortest-path distances from `source` to every vertex.
    pub fn bfs_distances(&self, source: VertexId) -> Vec<u32> {
        let mut bfs = Bfs::new(self.vertex_count());
        bfs.run(self, &[source]);
        bfs.dist
    }

    /// Distances to the nearest vertex of `sources`.
    pub fn bfs_from_set(&self, sources: &[VertexId]) -> Vec<u32> {
        let mut bfs = Bfs::new(self.vertex_count());
        bfs.run(self, sources);
        bfs.dist
    }

    /// Recursive labeling: the outermost vertices start at `(0,1,1)`,
    /// `(0,0,1)` or `(0,0,0)` for variants 1, 2, 3, and each center gets one
    /// plus the minimum label of its triangle.
    pub fn delta_labeling(&self, variant: u8) -> Result<Vec<u32>> {
        let start = match variant {
            1 => [0, 1, 1],
            2 => [0, 0, 1],
            3 => [0, 0, 0],
            v => return Err(Error::InvalidVariant(v)),
        };
        let mut labels = vec![0u32; self.vertex_count()];
        labels[..3].copy_from_slice(&start);
        // Preorder: corners are always labeled before the center.
        for s in &self.subrans {
            labels[s.center] = 1 + s.corners.iter().map(|&c| labels[c]).min().unwrap();
        }
        Ok(labels)
    }

    /// Sum of the labels of the internal vertices.
    pub fn delta_sum(&self, variant: u8) -> Result<u64> {
        let labels = self.delta_labeling(variant)?;
        Ok(labels[3..].iter().map(|&l| l as u64).sum())
    }

    pub fn distance_profile(&self, source: VertexId) -> Result<DistanceProfile> {
        self.check_vertex(source)?;
        let dist = self.bfs_distances(source);
        let mut counts = vec![0u64; 1];
        for &d in &dist[3..] {
            let d = d as usize;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        Ok(DistanceProfile {
            source,
            source_role: self.role(source),
            order: self.order(),
            counts,
        })
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let mut histogram = Vec::new();
        for v in 0..self.vertex_count() {
            let d = self.degree(v);
            if histogram.len() <= d {
                histogram.resize(d + 1, 0u64);
            }
            histogram[d] += 1;
        }
        DegreeStats {
            histogram,
            center_degree: self.center().map(|c| self.degree(c)),
        }
    }

    /// Degrees of the internal vertices. The degree of an internal vertex is
    /// the center degree of the sub-RANS it is the center of.
    pub fn internal_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        (3..self.vertex_count()).map(|v| self.degree(v))
    }

    /// Internal vertices at equal distance from `O1` and `O2`.
    pub fn equidistant_count(&self) -> u64 {
        let d1 = self.bfs_distances(0);
        let d2 = self.bfs_distances(1);
        (3..self.vertex_count()).filter(|&v| d1[v] == d2[v]).count() as u64
    }

    /// True when `ancestor` is a proper ancestor of internal vertex `v` in the
    /// sub-RANS containment tree.
    fn is_proper_ancestor(&self, ancestor: VertexId, v: VertexId) -> bool {
        let target_depth = self.subrans(ancestor).depth;
        let mut cur = v;
        while self.subrans(cur).depth > target_depth {
            cur = self.subrans(cur).parent.unwrap();
        }
        cur == ancestor && v != ancestor
    }

    /// Lowest common ancestor of two internal vertices, together with the
    /// children of it on the way to `v` and `w` (when distinct from it).
    fn meet(&self, v: VertexId, w: VertexId) -> (VertexId, Option<VertexId>, Option<VertexId>) {
        let (mut a, mut b) = (v, w);
        let (mut below_a, mut below_b) = (None, None);
        while self.subrans(a).depth > self.subrans(b).depth {
            below_a = Some(a);
            a = self.subrans(a).parent.unwrap();
        }
        while self.subrans(b).depth > self.subrans(a).depth {
            below_b = Some(b);
            b = self.subrans(b).parent.unwrap();
        }
        while a != b {
            below_a = Some(a);
            below_b = Some(b);
            a = self.subrans(a).parent.unwrap();
            b = self.subrans(b).parent.unwrap();
        }
        (a, below_a, below_b)
    }

    /// Structural part of the classification: everything except the f-edge
    /// decision, which needs distances.
    fn classify_structure(&self, v: VertexId, w: VertexId) -> Result<Structure> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        if v == w {
            return Err(Error::SameVertex(v));
        }
        match (v < 3, w < 3) {
            (true, true) => return Ok(Structure::OutermostPair),
            (true, false) | (false, true) => return Ok(Structure::Intra),
            _ => {}
        }
        if self.is_proper_ancestor(v, w) || self.is_proper_ancestor(w, v) {
            return Ok(Structure::Intra);
        }
        let (top, sv, sw) = self.meet(v, w);
        let (sv, sw) = (sv.unwrap(), sw.unwrap());
        let (i, j) = (self.subrans(sv).slot as usize, self.subrans(sw).slot as usize);
        let k = 3 - i - j;
        Ok(Structure::Inter(InterPair {
            subrans: top,
            children: [sv, sw],
            frontier: [top, self.subrans(top).corners[k]],
        }))
    }

    /// Classifies a pair of distinct vertices.
    pub fn classify_pair(&self, v: VertexId, w: VertexId) -> Result<PairClass> {
        match self.classify_structure(v, w)? {
            Structure::OutermostPair => Ok(PairClass::OutermostPair),
            Structure::Intra => Ok(PairClass::Intra),
            Structure::Inter(pair) => {
                let dv = self.bfs_distances(v);
                let dw = self.bfs_distances(w);
                Ok(pair.with_distances(&dv, &dw))
            }
        }
    }

    /// Total distance over all pairs except the three outermost pairs, split
    /// by pair class. Runs one BFS per vertex.
    pub fn total_distance_census(&self) -> DistanceCensus {
        let nv = self.vertex_count();
        let mut bfs = Bfs::new(nv);
        let all: Vec<Vec<u32>> = (0..nv)
            .map(|s| {
                bfs.run(self, &[s]);
                bfs.dist.clone()
            })
            .collect();
        let mut census = DistanceCensus::default();
        for v in 0..nv {
            for w in (v + 1).max(3)..nv {
                let d = all[v][w] as u64;
                census.grand_total += d;
                match self.classify_structure(v, w).expect("valid pair") {
                    Structure::OutermostPair => unreachable!(),
                    Structure::Intra => {
                        census.intra_pairs += 1;
                        census.intra_total += d;
                    }
                    Structure::Inter(pair) => {
                        census.inter_pairs += 1;
                        census.inter_total += d;
                        let [f1, f2] = pair.frontier;
                        let lower = (all[v][f1].min(all[v][f2]) + all[w][f1].min(all[w][f2])) as u64;
                        let fedge = matches!(pair.with_distances(&all[v], &all[w]), PairClass::InterFedge(_));
                        census.inter_lower_bound += lower;
                        census.fedge_count += fedge as u64;
                        if d < lower + fedge as u64 {
                            census.frontier_shortcuts += 1;
                        }
                    }
                }
            }
        }
        census
    }

    /// Sum of distances over the pairs of `C(R)` only, without classifying.
    pub fn pairwise_distance_total(&self) -> u64 {
        let nv = self.vertex_count();
        let mut bfs = Bfs::new(nv);
        let mut ordered = 0u64;
        for s in 0..nv {
            bfs.run(self, &[s]);
            ordered += bfs.dist.iter().map(|&d| d as u64).sum::<u64>();
        }
        // Remove the six ordered outermost pairs (distance 1 each).
        (ordered - 6) / 2
    }

    /// `n(n-1)/2 + 3n`.
    pub fn pair_count(&self) -> u64 {
        let n = self.order() as u64;
        n * n.saturating_sub(1) / 2 + 3 * n
    }

    /// Mean distance over `C(R)`; `None` for the empty RANS.
    pub fn mean_pairwise_distance(&self) -> Option<f64> {
        (self.order() > 0).then(|| self.pairwise_distance_total() as f64 / self.pair_count() as f64)
    }

    pub fn export(&self) -> GraphExport {
        GraphExport {
            order: self.order(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            outermost: OUTERMOST,
            center: self.center(),
        }
    }
}

pub const UNREACHED: u32 = u32::MAX;

/// Reusable BFS buffers.
#[derive(Clone, Debug)]
pub struct Bfs {
    pub dist: Vec<u32>,
    queue: VecDeque<u32>,
}

impl Bfs {
    pub fn new(vertices: usize) -> Self {
        Self {
            dist: vec![UNREACHED; vertices],
            queue: VecDeque::with_capacity(vertices),
        }
    }

    pub fn run(&mut self, g: &RansGraph, sources: &[VertexId]) {
        self.dist.fill(UNREACHED);
        self.queue.clear();
        for &s in sources {
            self.dist[s] = 0;
            self.queue.push_back(s as u32);
        }
        while let Some(x) = self.queue.pop_front() {
            let x = x as usize;
            let next = self.dist[x] + 1;
            let (a, b) = (g.offsets[x] as usize, g.offsets[x + 1] as usize);
            for &y in &g.targets[a..b] {
                let slot = &mut self.dist[y as usize];
                if *slot == UNREACHED {
                    *slot = next;
                    self.queue.push_back(y);
                }
            }
        }
    }
}

enum Structure {
    OutermostPair,
    Intra,
    Inter(InterPair),
}

/// Location of an inter pair: the smallest sub-RANS containing both
/// endpoints as internal vertices, its two children holding them, and the
/// two vertices those children share.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InterPair {
    pub subrans: VertexId,
    pub children: [VertexId; 2],
    pub frontier: [VertexId; 2],
}

impl InterPair {
    /// `dv`, `dw` are BFS distance vectors from the two endpoints.
    fn with_distances(self, dv: &[u32], dw: &[u32]) -> PairClass {
        let [f1, f2] = self.frontier;
        let (a1, a2) = (dv[f1], dv[f2]);
        let (b1, b2) = (dw[f1], dw[f2]);
        let crossing = a1 != a2 && b1 != b2 && ((a1 < a2) != (b1 < b2));
        if crossing {
            PairClass::InterFedge(self)
        } else {
            PairClass::InterNoFedge(self)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairClass {
    /// Both vertices outermost; not part of `C(R)`.
    OutermostPair,
    /// One endpoint is a corner of a sub-RANS containing the other as an
    /// internal vertex.
    Intra,
    /// Shortest paths can avoid the frontier edge.
    InterNoFedge(InterPair),
    /// The endpoints are strictly closer to different frontier vertices, so
    /// every shortest path uses the frontier edge.
    InterFedge(InterPair),
}

impl PairClass {
    pub fn is_inter(&self) -> bool {
        matches!(self, Self::InterNoFedge(_) | Self::InterFedge(_))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceCensus {
    pub intra_pairs: u64,
    pub inter_pairs: u64,
    pub intra_total: u64,
    pub inter_total: u64,
    /// Sum over inter pairs of the two endpoint-to-frontier distances.
    pub inter_lower_bound: u64,
    pub fedge_count: u64,
    pub grand_total: u64,
    /// Inter pairs joined by a path that avoids both frontier vertices and
    /// is shorter than any path through them, so that `inter_total` falls
    /// below [`Self::frontier_model_inter`]. None exist below order 7.
    pub frontier_shortcuts: u64,
}

impl DistanceCensus {
    pub fn is_consistent(&self) -> bool {
        self.grand_total == self.intra_total + self.inter_total
    }

    /// Inter total under the assumption that shortest inter paths pass
    /// through the frontier: lower bound plus one per f-edge pair.
    pub fn frontier_model_inter(&self) -> u64 {
        self.inter_lower_bound + self.fedge_count
    }

    pub fn frontier_model_holds(&self) -> bool {
        self.inter_total == self.frontier_model_inter()
    }

    pub fn pairs(&self) -> u64 {
        self.intra_pairs + self.inter_pairs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub source: VertexId,
    pub source_role: Role,
    pub order: usize,
    /// `counts[i]`: internal vertices at distance `i` from the source.
    pub counts: Vec<u64>,
}

impl DistanceProfile {
    pub fn max_distance(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    pub fn mean(&self) -> Option<f64> {
        let total: u64 = self.counts.iter().sum();
        let weighted: u64 = self.counts.iter().enumerate().map(|(i, &c)| i as u64 * c).sum();
        (total > 0).then(|| weighted as f64 / total as f64)
    }

    /// `(i / sqrt(n), count[i] * sqrt(n) / n)` for every distance `i >= 1`.
    pub fn normalized(&self) -> Vec<(f64, f64)> {
        let n = self.order as f64;
        let root = n.sqrt();
        (1..=self.max_distance())
            .map(|i| (i as f64 / root, self.counts[i] as f64 * root / n))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    /// `histogram[k]`: vertices of degree `k`, all vertices included.
    pub histogram: Vec<u64>,
    /// Degree of the top-level center; `None` for the empty RANS.
    pub center_degree: Option<usize>,
}

/// JSON graph export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub order: usize,
    pub edges: Vec<[VertexId; 2]>,
    pub outermost: [VertexId; 3],
    pub center: Option<VertexId>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_trees;

    fn graph(word: &str) -> RansGraph {
        build_rans(&word.parse().unwrap())
    }

    fn all_graphs(n: usize) -> Vec<RansGraph> {
        enumerate_trees(n, 8).unwrap().map(|t| build_rans(&t)).collect()
    }

    #[test]
    fn empty_and_k4() {
        let empty = graph("L");
        assert_eq!(empty.order(), 0);
        assert_eq!(empty.edge_count(), 3);
        assert_eq!(empty.center(), None);
        assert_eq!(empty.degree_stats().center_degree, None);
        assert_eq!(empty.total_distance_census(), DistanceCensus::default());

        let k4 = graph("NLLL");
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.bfs_distances(0), vec![0, 1, 1, 1]);
        assert_eq!(k4.degree_stats().center_degree, Some(3));
        assert_eq!(k4.delta_labeling(1).unwrap()[3], 1);
        assert_eq!(k4.delta_sum(3).unwrap(), 1);
        assert_eq!(k4.equidistant_count(), 1);
        assert_eq!(k4.classify_pair(0, 1).unwrap(), PairClass::OutermostPair);
        assert_eq!(k4.classify_pair(0, 3).unwrap(), PairClass::Intra);
        assert_eq!(k4.total_distance_census().grand_total, 3);
        assert_eq!(k4.distance_profile(0).unwrap().counts, vec![0, 1]);
    }

    #[test]
    fn insertion_in_first_subrans() {
        // Second vertex inside S1, whose corners are (center, O2, O3).
        let g = graph("NNLLLLL");
        assert_eq!(g.subrans(4).corners, [3, 1, 2]);
        assert_eq!(g.bfs_distances(0)[4], 2);
        assert_eq!(g.delta_sum(1).unwrap(), 3);
        assert_eq!(g.classify_pair(3, 4).unwrap(), PairClass::Intra);
        assert!(matches!(g.delta_labeling(4), Err(Error::InvalidVariant(4))));
        assert!(matches!(g.classify_pair(3, 3), Err(Error::SameVertex(3))));
        assert!(matches!(g.classify_pair(3, 9), Err(Error::NoSuchVertex(9))));
    }

    #[test]
    fn order_two_sums() {
        let gs = all_graphs(2);
        let sum = |f: &dyn Fn(&RansGraph) -> u64| gs.iter().map(f).sum::<u64>();
        assert_eq!(sum(&|g| g.delta_sum(1).unwrap()), 7);
        assert_eq!(sum(&|g| g.delta_sum(2).unwrap()), 6);
        assert_eq!(sum(&|g| g.delta_sum(3).unwrap()), 6);
        assert_eq!(sum(&|g| g.equidistant_count()), 4);
        assert_eq!(sum(&|g| g.total_distance_census().grand_total), 24);
        assert_eq!(sum(&|g| g.distance_profile(0).unwrap().counts[1]), 5);
        assert_eq!(sum(&|g| g.distance_profile(0).unwrap().counts.get(2).copied().unwrap_or(0)), 1);
        assert!(gs.iter().all(|g| g.degree_stats().center_degree == Some(4)));
    }

    #[test]
    fn order_three_sums() {
        let gs = all_graphs(3);
        let d1: u64 = gs.iter().map(|g| g.delta_sum(1).unwrap()).sum();
        assert_eq!(d1, 46);
        let mut counts = [0u64; 3];
        for g in &gs {
            for (i, c) in g.distance_profile(0).unwrap().counts.iter().enumerate() {
                counts[i] += c;
            }
        }
        assert_eq!(counts, [0, 26, 10]);
    }

    #[test]
    fn structural_invariants_up_to_order_six() {
        for n in 0..=6 {
            for g in all_graphs(n) {
                assert_eq!(g.edge_count(), 3 + 3 * n);
                assert!(g.is_connected());
                for s in g.all_subrans() {
                    let mut nb: Vec<_> = s.corners.to_vec();
                    nb.sort_unstable();
                    assert!(nb.iter().all(|&c| g.neighbors(s.center).any(|x| x == c)));
                }
                let d: Vec<_> = OUTERMOST.iter().map(|&o| g.bfs_distances(o)).collect();
                assert_eq!((d[0][1], d[0][2], d[1][2]), (1, 1, 1));
                for x in 0..g.vertex_count() {
                    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                        assert!(d[i][x].abs_diff(d[j][x]) <= 1);
                    }
                }
            }
        }
    }

    #[test]
    fn labelings_are_distances_to_outermost_sets() {
        for n in 0..=6 {
            for g in all_graphs(n) {
                let sets: [&[VertexId]; 3] = [&[0], &[0, 1], &[0, 1, 2]];
                for (k, set) in sets.iter().enumerate() {
                    let labels = g.delta_labeling(k as u8 + 1).unwrap();
                    let dist = g.bfs_from_set(set);
                    assert_eq!(labels[3..], dist[3..]);
                }
            }
        }
    }

    #[test]
    fn shortcut_around_the_frontier() {
        // 6 and 9 sit in different children of the root; the frontier is
        // {3, 1} but 6-2-0-9 avoids it.
        let g = graph("NNNLNLLLLLLLNLNLLNLLLL");
        assert_eq!(g.bfs_distances(6)[9], 3);
        let PairClass::InterNoFedge(p) = g.classify_pair(6, 9).unwrap() else {
            panic!("inter pair expected")
        };
        assert_eq!(p.frontier, [3, 1]);
        let c = g.total_distance_census();
        assert!(c.is_consistent());
        assert_eq!(c.frontier_shortcuts, 1);
        assert_eq!(c.inter_total + 1, c.frontier_model_inter());
    }

    #[test]
    fn census_identities_up_to_order_six() {
        for n in 0..=6 {
            for g in all_graphs(n) {
                let c = g.total_distance_census();
                assert!(c.is_consistent(), "{c:?}");
                assert!(c.frontier_model_holds(), "{c:?}");
                assert_eq!(c.frontier_shortcuts, 0);
                assert_eq!(c.pairs(), g.pair_count());
                assert_eq!(c.grand_total, g.pairwise_distance_total());
            }
        }
    }

    #[test]
    fn classification_agrees_with_single_pair_api() {
        for g in all_graphs(4) {
            for v in 0..g.vertex_count() {
                for w in (v + 1).max(3)..g.vertex_count() {
                    let class = g.classify_pair(v, w).unwrap();
                    assert_ne!(class, PairClass::OutermostPair);
                    let dv = g.bfs_distances(v);
                    if let PairClass::InterFedge(p) | PairClass::InterNoFedge(p) = class {
                        // Inter endpoints are internal and not nested.
                        assert!(v >= 3);
                        let [f1, f2] = p.frontier;
                        let lb = dv[f1].min(dv[f2]) + g.bfs_distances(w)[f1].min(g.bfs_distances(w)[f2]);
                        let extra = matches!(class, PairClass::InterFedge(_)) as u32;
                        assert_eq!(dv[w], lb + extra);
                    }
                }
            }
        }
    }

    #[test]
    fn export_shape() {
        let e = graph("NLLL").export();
        assert_eq!(e.order, 1);
        assert_eq!(e.edges.len(), 6);
        assert_eq!(e.center, Some(3));
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.starts_with("{\"order\":1,\"edges\":[[0,1]"), "{json}");
    }
}
