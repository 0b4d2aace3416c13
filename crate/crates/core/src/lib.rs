//! Distances in random Apollonian network structures (RANS).
//!
//! A RANS is a recursive triangulation of a triangle. It is either empty, or
//! a triangle split in three by a center vertex joined to the three corners,
//! with each of the three smaller triangles again a RANS. RANS of order `n`
//! are in bijection with rooted plane ternary trees with `n` internal nodes.
//!
//! The crate is organised in layers that check each other:
//!
//! * [`tree`]: counting, enumerating, encoding and uniformly sampling ternary
//!   trees.
//! * [`graph`]: the explicit triangulation built from a tree, with BFS-based
//!   distance, labeling, degree and pair-classification statistics. On small
//!   orders this is the brute-force oracle for every generating function.
//! * [`series`]: exact truncated power series over the rationals, the
//!   univariate distance generating functions, the marked multivariate
//!   series, and evaluation of the closed forms near the dominant
//!   singularity.
//! * [`census`] and [`verify`]: exhaustive aggregation over all trees of an
//!   order and the oracle-versus-series identity checks.
//! * [`asymptotics`]: leading-order coefficient laws and convergence reports.
//!
//! ```
//! use rans::series::gf;
//! use rans::tree::count_trees;
//!
//! let t = gf::series_t(6);
//! assert_eq!(t.coeff(4).unwrap(), &gf::int(55));
//! assert_eq!(count_trees(6), 1428u32.into());
//! ```

pub mod asymptotics;
pub mod census;
pub mod error;
pub mod graph;
pub mod montecarlo;
pub mod report;
pub mod rng;
pub mod series;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
