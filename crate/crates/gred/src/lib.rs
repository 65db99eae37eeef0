//! Graph reductions over GF(2).
//!
//! Simple graphs with loops (equivalently, signed graphs: a `+` vertex is a
//! looped vertex) are reduced by three combinatorial rules — the positive
//! rule `gpr`, the double rule `gdr`, and the negative rule `gnr` — and, more
//! generally, by the reduction `Γ_W` that removes any reducible vertex set
//! `W` in one move. Everything is driven by the adjacency matrix over GF(2):
//! reducibility is an image-containment condition in block form, the reduced
//! adjacency is a Schur-style complement, and the negative-rule count of any
//! strategy equals the nullity of the removed set.
//!
//! The crate exposes:
//!
//! * [`gf2`] — dense bit matrices: rank, solving, inversion, nullspaces.
//! * [`graph`] — labeled graphs with loops, subset ranks, legal strings.
//! * [`reduction`] — the rules, general reductions, and strategies.
//! * [`poset`] — reducibility and pivotal posets, graph reconstruction.
//! * [`pivot`] — matrix and graph pivots, pair-classes, retrographs, and
//!   reverse reductions.
//! * [`parallel`] — parallel applicability, exact parallel complexity, and
//!   random-ensemble censuses.

pub mod error;
pub mod gf2;
pub mod graph;
pub mod parallel;
pub mod pivot;
pub mod poset;
pub mod reduction;

pub use error::{Error, Result};
pub use gf2::{solve_right, BitMatrix};
pub use graph::{vertex_set, Graph, Sign, VertexSet};
pub use parallel::{CensusReport, EdgeDistribution, ParallelStep};
pub use pivot::PairClass;
pub use poset::ReducibilityPoset;
pub use reduction::{Rule, Strategy};
