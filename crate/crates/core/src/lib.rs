//! Exact tools for revlex-initial 0/1-polytopes.
//!
//! A set `X` of 0/1-vectors is *revlex-initial* if it is an initial segment
//! of the reverse-lexicographic order on `{0,1}^d`. Under the identification
//! of a 0/1-vector `x` with the number `sum_i x_i * 2^i`, the revlex order is
//! the order on `{0, 1, ..., 2^d - 1}`, so the revlex-initial set with `n`
//! elements is simply the set of binary representations of `0, ..., n-1`.
//! `P(n)` is its convex hull.
//!
//! The crate constructs these polytopes, optimizes linear functions over
//! them, produces full and minimal facet descriptions, builds their graphs,
//! counts edges in closed form, and certifies lower bounds on the edge
//! expansion of the graphs via explicit multi-commodity flows. Pyramids over
//! revlex-initial polytopes give vertex/dimension pairs `(d, n)` with few
//! facets, few edges, and certified expansion; those constructions
//! live in [`bounds`]. Everything is computed in exact (big) integer and
//! rational arithmetic; no floating point is used anywhere.
//!
//! Independent brute-force checks (vertex enumeration from an inequality
//! system, facet verification by affine rank, graph construction from
//! smallest faces, exact edge expansion) live in [`oracle`].
//!
//! ```
//! use revlex01::polytope::RevlexPolytope;
//! use revlex01::{facets, graph};
//!
//! let p = RevlexPolytope::from_vertex_count(7).unwrap();
//! assert_eq!(p.dim(), 3);
//! assert_eq!(facets::facet_count(&p).unwrap(), 7);
//! assert_eq!(graph::edge_count_formula(&p), 12);
//! ```

#![warn(rust_2018_idioms)]
#![forbid(unsafe_code)]

pub mod bits;
pub mod bounds;
pub mod expansion;
pub mod facets;
pub mod graph;
pub mod oracle;
pub mod polytope;
pub mod rat;
pub mod verify;

/// Largest supported ambient dimension.
///
/// Vertices are identified with `u64` knapsack numbers `sum x_i 2^i`; keeping
/// `d <= 62` leaves headroom so that `n = 2^d` and small sums around it never
/// overflow.
pub const MAX_DIM: usize = 62;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Two bit vectors were expected to have the same length.
    #[error("bit vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    /// A dimension outside `1..=MAX_DIM` was requested.
    #[error("dimension {0} is outside the supported range 1..={MAX_DIM}")]
    DimensionOutOfRange(usize),
    /// An index does not fit in the given number of bits.
    #[error("index {n} does not fit in {d} bits")]
    IndexOutOfRange { n: u64, d: usize },
    /// The all-zero spec vector defines the empty vertex set.
    #[error("the all-zero spec vector does not define a polytope")]
    ZeroSpecVector,
    /// A vertex count outside the representable range was requested.
    #[error("vertex count {0} is not in the supported range")]
    BadVertexCount(u64),
    /// A point that is not a vertex of the polytope was passed in.
    #[error("point {0} is not a vertex of the polytope")]
    NotAVertex(String),
    /// A coefficient vector has the wrong length.
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadCoefficientCount { got: usize, expected: usize },
    /// An operation that needs a full-dimensional polytope got a degenerate one.
    #[error("polytope with n={n} is not full-dimensional in ambient dimension {d}")]
    NotFullDimensional { n: u64, d: usize },
    /// A size cap protecting against runaway enumeration was exceeded.
    #[error("{what}: size {requested} exceeds the cap {cap}")]
    CapExceeded {
        /// Operation that refused to run.
        what: &'static str,
        /// Maximum supported size.
        cap: u64,
        /// Requested size.
        requested: u64,
    },
    /// Inadmissible parameters for a pyramid construction.
    #[error("no pyramid with dimension {d} and {n} vertices: need d+1 <= n <= 2^d")]
    InadmissiblePyramid {
        /// Requested dimension.
        d: usize,
        /// Requested vertex count.
        n: u64,
    },
    /// Flows are defined on at least two vertices.
    #[error("flow construction needs at least 2 vertices, got {0}")]
    FlowTooSmall(u64),
    /// Text that should denote a bit vector, rational, or similar failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
    /// A verification check found a real discrepancy.
    #[error("check failed: {0}")]
    CheckFailed(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
