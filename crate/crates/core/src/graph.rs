//! Graphs of revlex-initial 0/1-polytopes.
//!
//! Within a block, edges are the cube edges of the block's cube face. Across
//! blocks, a vertex `x` in block `q` is adjacent to a patch of vertices in
//! each shallower block `p < q`: those that copy `x` below `s_q`, carry ones
//! on the one-positions strictly between the blocks, and are free on the
//! remaining positions between `s_q` and `s_p`. The patch comes in two
//! halves, one with a zero at `s_q` (always adjacent) and one with a one at
//! `s_q` (adjacent iff the highest position below `s_q` where `x` differs
//! from the spec vector is not a one-position). [`edge_count_formula`] counts
//! all of this in closed form, without building the graph.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::bits::BitVector01;
use crate::polytope::RevlexPolytope;
use crate::{Error, Result};

/// Default cap on the number of vertices a graph may be materialized for.
pub const DEFAULT_VERTEX_CAP: u64 = 1 << 20;

/// Adjacency lists of a polytope graph; vertices are knapsack numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeGraph {
    adjacency: Vec<Vec<u64>>,
}

impl PolytopeGraph {
    /// Builds a graph from undirected edges over vertices `0..n`.
    ///
    /// Adjacency rows come out sorted and deduplicated.
    pub fn from_edges(n: u64, edges: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut adjacency = vec![Vec::new(); n as usize];
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n, "bad edge ({}, {})", u, v);
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for row in &mut adjacency {
            row.sort_unstable();
            row.dedup();
        }
        PolytopeGraph { adjacency }
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> u64 {
        self.adjacency.len() as u64
    }

    /// Sorted neighbors of vertex `m`.
    pub fn neighbors_of(&self, m: u64) -> &[u64] {
        &self.adjacency[m as usize]
    }

    /// Degree of vertex `m`.
    pub fn degree(&self, m: u64) -> usize {
        self.adjacency[m as usize].len()
    }

    /// True if `{u, v}` is an edge.
    pub fn has_edge(&self, u: u64, v: u64) -> bool {
        u != v
            && (u as usize) < self.adjacency.len()
            && self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> u128 {
        let twice: u128 = self.adjacency.iter().map(|row| row.len() as u128).sum();
        twice / 2
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for (u, row) in self.adjacency.iter().enumerate() {
            let u = u as u64;
            for &v in row {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// The cross-block neighbors of a base vertex toward one shallower block.
///
/// `base` lies in block `q`; the patch describes its neighbors in block
/// `p < q`. The two halves (`a_vertices`, `b_vertices`) each have size
/// `2^delta` where `delta = (p + s_p) - (q + s_q)`; the `b` half is present
/// only if the base passes the high-difference test.
#[derive(Clone, Debug)]
pub struct NeighborPatch {
    /// Shallower block number.
    pub p: usize,
    /// Block number of the base vertex.
    pub q: usize,
    /// Index of the base vertex.
    pub base: u64,
    a_root: u64,
    free: Vec<usize>,
    b_applies: bool,
    s_q: usize,
}

impl NeighborPatch {
    /// Number of free positions; each half of the patch has `2^delta` vertices.
    pub fn delta(&self) -> usize {
        self.free.len()
    }

    /// True if the `b` half (one at `s_q`) is adjacent to the base.
    pub fn b_applies(&self) -> bool {
        self.b_applies
    }

    fn expand(&self, root: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(1 << self.free.len());
        out.push(root);
        for &i in &self.free {
            for k in 0..out.len() {
                out.push(out[k] | (1 << i));
            }
        }
        out
    }

    /// Neighbors of the base with a zero at `s_q`.
    pub fn a_vertices(&self) -> Vec<u64> {
        self.expand(self.a_root)
    }

    /// Neighbors of the base with a one at `s_q`, empty if the half does not
    /// apply.
    pub fn b_vertices(&self) -> Vec<u64> {
        if self.b_applies {
            self.expand(self.a_root | (1 << self.s_q))
        } else {
            Vec::new()
        }
    }
}

/// True if the low bits of `x` (below `s_q`) pass the one-at-`s_q` adjacency
/// test: the highest position below `s_q` where `x` differs from the spec
/// vector is not a one-position of the spec vector.
fn b_half_applies(p: &RevlexPolytope, x_index: u64, s_q: usize) -> bool {
    let low_mask = (1u64 << s_q) - 1;
    let diff = (x_index ^ p.spec_vector().to_index()) & low_mask;
    if diff == 0 {
        return true;
    }
    let top = 63 - diff.leading_zeros() as usize;
    !p.spec_vector().get(top)
}

/// The cross-block patches of a base vertex, one per shallower block.
pub fn patches(p: &RevlexPolytope, x: BitVector01) -> Result<Vec<NeighborPatch>> {
    let q = p.block_of(x)?;
    let sig = p.signature();
    let s_q = sig.s(q);
    let x_index = x.to_index();
    let low = x_index & ((1u64 << s_q) - 1);
    let b_applies = b_half_applies(p, x_index, s_q);
    let mut out = Vec::with_capacity(q - 1);
    for pp in 1..q {
        let s_p = sig.s(pp);
        // Ones on the one-positions strictly between the blocks.
        let mut root = low;
        for r in pp + 1..q {
            root |= 1 << sig.s(r);
        }
        // Suffix of block pp: ones above s_p as in the spec vector.
        root += p.blocks()[pp - 1].first_vertex;
        // Free positions: non-signature positions strictly between s_q and s_p.
        let free: Vec<usize> = (s_q + 1..s_p).filter(|&i| !p.spec_vector().get(i)).collect();
        out.push(NeighborPatch { p: pp, q, base: x_index, a_root: root, free, b_applies, s_q });
    }
    Ok(out)
}

/// Sorted neighbor indices of a vertex.
///
/// Combines the cube edges of the vertex's block, the patches where it is
/// the base, and the mirrored edges where the vertex plays the patch role
/// for a base in a deeper block.
pub fn neighbors(p: &RevlexPolytope, x: BitVector01) -> Result<Vec<u64>> {
    let q = p.block_of(x)?;
    let sig = p.signature();
    let s_q = sig.s(q);
    let x_index = x.to_index();
    let mut out = Vec::new();

    // Cube edges within the block.
    for i in 0..s_q {
        out.push(x_index ^ (1 << i));
    }

    // Patches of x toward shallower blocks.
    for patch in patches(p, x)? {
        out.extend(patch.a_vertices());
        out.extend(patch.b_vertices());
    }

    // Mirrored edges: x in the patch of a base vertex y in a deeper block q2.
    // Given q2, the base is unique: copy x below s_{q2}, zero at s_{q2},
    // block-q2 suffix above. x must carry ones on the one-positions strictly
    // between the blocks; its bit at s_{q2} selects the patch half.
    let w = sig.weight();
    let mut between_ok = true;
    for q2 in q + 1..=w {
        if q2 > q + 1 && !x.get(sig.s(q2 - 1)) {
            between_ok = false;
        }
        if !between_ok {
            break;
        }
        let s_q2 = sig.s(q2);
        let y = p.blocks()[q2 - 1].first_vertex + (x_index & ((1 << s_q2) - 1));
        if !x.get(s_q2) {
            out.push(y);
        } else if b_half_applies(p, x_index, s_q2) {
            out.push(y);
        }
    }

    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Materializes the whole graph, refusing above the given vertex cap.
///
/// Edges are generated once from the deeper endpoint of each pair and
/// symmetrized by a final sort/dedup pass.
pub fn build_graph_capped(p: &RevlexPolytope, cap: u64) -> Result<PolytopeGraph> {
    if p.n() > cap {
        return Err(Error::CapExceeded { what: "build_graph", cap, requested: p.n() });
    }
    let mut edges: Vec<(u64, u64)> = Vec::new();
    for x in p.vertices() {
        let x_index = x.to_index();
        let q = p.block_of(x).expect("vertex of the polytope");
        let s_q = p.signature().s(q);
        // Each cube edge once: flip up.
        for i in 0..s_q {
            if !x.get(i) {
                edges.push((x_index, x_index | (1 << i)));
            }
        }
        // Each cross edge once: from the deeper base.
        for patch in patches(p, x).expect("vertex of the polytope") {
            for z in patch.a_vertices() {
                edges.push((x_index, z));
            }
            for z in patch.b_vertices() {
                edges.push((x_index, z));
            }
        }
    }
    Ok(PolytopeGraph::from_edges(p.n(), edges))
}

/// Materializes the whole graph under the default vertex cap.
pub fn build_graph(p: &RevlexPolytope) -> Result<PolytopeGraph> {
    build_graph_capped(p, DEFAULT_VERTEX_CAP)
}

/// Number of edges, in closed form.
///
/// Cube edges contribute `s_p * 2^{s_p - 1}` per block. A pair of blocks
/// `p < q` contributes `2 * 2^{p + s_p - q}` minus `2^{delta_pq}` for each
/// base in block `q` that fails the one-at-`s_q` test; the failing bases are
/// counted by the one-positions below `s_q`.
pub fn edge_count_formula(p: &RevlexPolytope) -> u128 {
    let sig = p.signature();
    let w = sig.weight();
    let mut total: u128 = 0;
    for q in 1..=w {
        let s_q = sig.s(q) as u32;
        if s_q > 0 {
            total += s_q as u128 * (1u128 << (s_q - 1));
        }
    }
    for pq in 1..=w {
        for q in pq + 1..=w {
            let (s_p, s_q) = (sig.s(pq) as i64, sig.s(q) as i64);
            let delta = (pq as i64 + s_p) - (q as i64 + s_q);
            debug_assert!(delta >= 0);
            let tail: u128 = (q + 1..=w).map(|r| 1u128 << sig.s(r)).sum();
            let full = 2 * (1u128 << (pq as i64 + s_p - q as i64));
            total += full - tail * (1u128 << delta);
        }
    }
    total
}

/// Average degree `2|E| / n` as an exact rational.
pub fn average_degree(p: &RevlexPolytope) -> BigRational {
    let twice_e = BigInt::from(2u8) * BigInt::from(edge_count_formula(p));
    BigRational::new(twice_e, BigInt::from(p.n()))
}
