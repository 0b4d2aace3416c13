//! Rooted plane ternary trees.
//!
//! A tree of order `n` has `n` internal nodes, each with exactly three ordered
//! children, and `2n + 1` leaves. Sibling order matters: the three children of
//! a node are the three sub-RANS `S1, S2, S3` of the corresponding
//! triangulation, and no symmetric shapes are identified.
//!
//! Trees are stored as an arena of internal nodes numbered in preorder, so two
//! trees are equal exactly when their shapes are equal. Nothing here recurses
//! on the tree shape; degenerate trees of order `10^5` are fine.
//!
//! The textual form is the preorder word over `{N, L}`: `N` for an internal
//! node, `L` for a leaf. A word of order `n` has `3n + 1` symbols.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

pub type NodeId = u32;

/// Default cap on exhaustive enumeration. `T_8 = 43 263`.
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TernaryTree {
    /// `children[id]` for every internal node, in preorder; node 0 is the root.
    children: Vec<[Option<NodeId>; 3]>,
}

impl TernaryTree {
    /// The empty tree (a single leaf).
    pub fn leaf() -> Self {
        Self::default()
    }

    /// Number of internal nodes.
    pub fn order(&self) -> usize {
        self.children.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        2 * self.order() + 1
    }

    pub fn root(&self) -> Option<NodeId> {
        (!self.is_leaf()).then_some(0)
    }

    pub fn children(&self, node: NodeId) -> [Option<NodeId>; 3] {
        self.children[node as usize]
    }

    /// Number of internal nodes in the subtree rooted at each node.
    pub fn subtree_orders(&self) -> Vec<usize> {
        let mut sizes = vec![1usize; self.order()];
        // Preorder ids: every child has a larger id than its parent.
        for id in (0..self.order()).rev() {
            let s: usize = self.children[id]
                .iter()
                .flatten()
                .map(|&c| sizes[c as usize])
                .sum();
            sizes[id] += s;
        }
        sizes
    }

    /// Orders of the three sub-trees of the root, or `None` for a leaf.
    pub fn root_split(&self) -> Option<[usize; 3]> {
        let root = self.root()?;
        let sizes = self.subtree_orders();
        Some(self.children(root).map(|c| c.map_or(0, |c| sizes[c as usize])))
    }

    /// Preorder word, `N` for internal nodes and `L` for leaves.
    pub fn encode(&self) -> String {
        let mut out = String::with_capacity(3 * self.order() + 1);
        let mut stack = vec![self.root()];
        while let Some(slot) = stack.pop() {
            match slot {
                None => out.push('L'),
                Some(id) => {
                    out.push('N');
                    let [a, b, c] = self.children(id);
                    stack.extend([c, b, a]);
                }
            }
        }
        out
    }

    /// Parses a preorder word. Errors carry the offending symbol offset.
    pub fn decode(word: &str) -> Result<Self> {
        enum Slot {
            Root,
            Child(NodeId, usize),
        }
        let mut children: Vec<[Option<NodeId>; 3]> = Vec::new();
        let mut pending = vec![Slot::Root];
        for (offset, symbol) in word.bytes().enumerate() {
            let slot = pending.pop().ok_or(Error::Parse {
                offset,
                reason: "symbols after the tree is complete",
            })?;
            match symbol {
                b'N' => {
                    let id = children.len() as NodeId;
                    children.push([None; 3]);
                    if let Slot::Child(parent, k) = slot {
                        children[parent as usize][k] = Some(id);
                    }
                    pending.extend([2, 1, 0].map(|k| Slot::Child(id, k)));
                }
                b'L' => {}
                _ => {
                    return Err(Error::Parse {
                        offset,
                        reason: "expected 'N' or 'L'",
                    })
                }
            }
        }
        if !pending.is_empty() {
            return Err(Error::Parse {
                offset: word.len(),
                reason: "word ends before the tree is complete",
            });
        }
        Ok(Self { children })
    }

    fn from_balanced_symbols(symbols: &[bool]) -> Self {
        let word: String = symbols.iter().map(|&n| if n { 'N' } else { 'L' }).collect();
        Self::decode(&word).expect("balanced symbol sequence")
    }
}

impl fmt::Display for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryTree({})", self.encode())
    }
}

impl FromStr for TernaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::decode(s.trim())
    }
}

/// Memoized `T_n`, grown on demand from the coefficient recurrence of
/// `T(z) = 1 + z T(z)^3`.
#[derive(Clone, Debug)]
pub struct TreeCountTable {
    counts: Vec<BigUint>,
    /// `squares[m] = sum_{a+b=m} T_a T_b`.
    squares: Vec<BigUint>,
}

impl Default for TreeCountTable {
    fn default() -> Self {
        Self::new()
    }
}

impl TreeCountTable {
    pub fn new() -> Self {
        Self {
            counts: vec![BigUint::one()],
            squares: vec![BigUint::one()],
        }
    }

    pub fn up_to(n: usize) -> Self {
        let mut table = Self::new();
        table.ensure(n);
        table
    }

    pub fn ensure(&mut self, n: usize) {
        while self.counts.len() <= n {
            let m = self.counts.len();
            // T_m = sum_{a} T_a * squares[m-1-a]
            let next = (0..m).fold(BigUint::zero(), |acc, a| {
                acc + &self.counts[a] * &self.squares[m - 1 - a]
            });
            self.counts.push(next);
            let sq = (0..=m).fold(BigUint::zero(), |acc, a| {
                acc + &self.counts[a] * &self.counts[m - a]
            });
            self.squares.push(sq);
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `T_n`; panics if the table has not been grown to `n`.
    pub fn get(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }

    /// `sum_{a+b=m} T_a T_b`.
    pub fn square(&self, m: usize) -> &BigUint {
        &self.squares[m]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }
}

/// Number of ternary trees of order `n`.
pub fn count_trees(n: usize) -> BigUint {
    TreeCountTable::up_to(n).get(n).clone()
}

/// `binom(3n, n) / (2n + 1)`, computed independently of the recurrence.
pub fn closed_form_count(n: usize) -> BigUint {
    let mut binom = BigUint::one();
    for k in 0..n {
        binom = binom * BigUint::from(3 * n - k) / BigUint::from(k + 1);
    }
    binom / BigUint::from(2 * n + 1)
}

/// Streams every tree of order `n` exactly once, in lexicographic order of
/// their words with `N < L`. Refuses orders above `cap`.
pub fn enumerate_trees(n: usize, cap: usize) -> Result<TreeEnumerator> {
    if n > cap {
        return Err(Error::EnumerationCap { order: n, cap });
    }
    Ok(TreeEnumerator::new(n))
}

#[derive(Debug, Clone)]
pub struct TreeEnumerator {
    order: usize,
    /// Current word, `true` for `N`.
    word: Vec<bool>,
    done: bool,
}

impl TreeEnumerator {
    fn new(order: usize) -> Self {
        let mut word = vec![true; order];
        word.resize(3 * order + 1, false);
        Self {
            order,
            word,
            done: false,
        }
    }

    /// Moves to the next valid word; returns false when exhausted.
    fn advance(&mut self) -> bool {
        // need[i] = open slots before symbol i; a valid word keeps need >= 1
        // until the last symbol closes the final slot.
        let mut need = Vec::with_capacity(self.word.len());
        let mut open = 1i64;
        for &s in &self.word {
            need.push(open);
            open += if s { 2 } else { -1 };
        }
        let pivot = (0..self.word.len())
            .rev()
            .find(|&i| self.word[i] && need[i] >= 2);
        let Some(i) = pivot else {
            return false;
        };
        self.word[i] = false;
        let used = self.word[..i].iter().filter(|&&s| s).count();
        let mut remaining = self.order - used;
        for s in &mut self.word[i + 1..] {
            *s = remaining > 0;
            remaining = remaining.saturating_sub(1);
        }
        true
    }
}

impl Iterator for TreeEnumerator {
    type Item = TernaryTree;

    fn next(&mut self) -> Option<TernaryTree> {
        if self.done {
            return None;
        }
        let tree = TernaryTree::from_balanced_symbols(&self.word);
        self.done = !self.advance();
        Some(tree)
    }
}

/// How [`TreeSampler`] draws a uniform tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SamplingStrategy {
    /// Choose the root split `(a, b, c)` with probability
    /// `T_a T_b T_c / T_n`, then recurse. Quadratic in `n`.
    RecursiveSplit,
    /// Shuffle `n` internal and `2n + 1` leaf symbols and rotate the word to
    /// the unique valid conjugate (cycle lemma). Linear in `n`.
    #[default]
    CycleLemma,
}

impl FromStr for SamplingStrategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "recursive" | "recursive-split" => Ok(Self::RecursiveSplit),
            "cycle" | "cycle-lemma" | "ballot" => Ok(Self::CycleLemma),
            other => Err(format!("unknown sampling strategy '{other}'")),
        }
    }
}

/// Uniform sampler over trees of a given order.
#[derive(Clone, Debug, Default)]
pub struct TreeSampler {
    strategy: SamplingStrategy,
    table: TreeCountTable,
}

impl TreeSampler {
    pub fn new(strategy: SamplingStrategy) -> Self {
        Self {
            strategy,
            table: TreeCountTable::new(),
        }
    }

    pub fn strategy(&self) -> SamplingStrategy {
        self.strategy
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, n: usize, rng: &mut R) -> TernaryTree {
        match self.strategy {
            SamplingStrategy::CycleLemma => sample_cycle_lemma(n, rng),
            SamplingStrategy::RecursiveSplit => {
                self.table.ensure(n);
                sample_recursive_split(n, &self.table, rng)
            }
        }
    }
}

/// Uniform tree of order `n` drawn with `strategy`.
pub fn sample_tree<R: Rng + ?Sized>(n: usize, strategy: SamplingStrategy, rng: &mut R) -> TernaryTree {
    TreeSampler::new(strategy).sample(n, rng)
}

/// Cycle-lemma sampler, linear in `n`.
pub fn sample_cycle_lemma<R: Rng + ?Sized>(n: usize, rng: &mut R) -> TernaryTree {
    let mut symbols = vec![true; n];
    symbols.resize(3 * n + 1, false);
    symbols.shuffle(rng);
    // Weights +2 for N and -1 for L sum to -1. Starting right after the first
    // position of minimal prefix sum yields the only conjugate in which every
    // proper prefix stays non-negative.
    let mut sum = 0i64;
    let mut min = i64::MAX;
    let mut at = 0;
    for (i, &s) in symbols.iter().enumerate() {
        sum += if s { 2 } else { -1 };
        if sum < min {
            min = sum;
            at = i;
        }
    }
    let len = symbols.len();
    symbols.rotate_left((at + 1) % len);
    TernaryTree::from_balanced_symbols(&symbols)
}

/// Recursive-splitting sampler. `table` must cover order `n`.
pub fn sample_recursive_split<R: Rng + ?Sized>(
    n: usize,
    table: &TreeCountTable,
    rng: &mut R,
) -> TernaryTree {
    // Build the word in preorder; each pending entry is the order of a
    // subtree still to be drawn.
    let mut word = Vec::with_capacity(3 * n + 1);
    let mut pending = vec![n];
    while let Some(m) = pending.pop() {
        if m == 0 {
            word.push(false);
            continue;
        }
        word.push(true);
        let rest = m - 1;
        // First child order a with weight T_a * sum_{b+c=rest-a} T_b T_c.
        let mut r = rng.gen_biguint_below(table.get(m));
        let mut a = 0;
        loop {
            let w = table.get(a) * table.square(rest - a);
            if r < w {
                break;
            }
            r -= w;
            a += 1;
        }
        // Then b with weight T_b T_{rest-a-b}.
        let left = rest - a;
        let mut r = rng.gen_biguint_below(table.square(left));
        let mut b = 0;
        loop {
            let w = table.get(b) * table.get(left - b);
            if r < w {
                break;
            }
            r -= w;
            b += 1;
        }
        pending.extend([left - b, b, a]);
    }
    TernaryTree::from_balanced_symbols(&word)
}
