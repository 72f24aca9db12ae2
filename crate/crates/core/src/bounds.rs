//! Iterated pyramids over revlex-initial polytopes.
//!
//! For a target dimension `d` and vertex count `n` with `d+1 <= n <= 2^d`,
//! the `(d - d~)`-fold pyramid over the revlex-initial polytope with
//! `n~ = n - (d - d~)` vertices has dimension `d`, `n` vertices, and few
//! facets, where `d~` is the smallest `k` with `n - (d - k) <= 2^k`. Each
//! pyramid step adds one apex adjacent to everything built so far, so the
//! facet count grows by one per step, the edge count stays quadratic only in
//! the apex layers, and the expansion certificate carries over: apex arcs
//! ship one unit per incident pair, so `phi_max` never grows beyond its base
//! value (or 1).
//!
//! This yields, for every admissible `(d, n)`, a `d`-polytope with `n`
//! vertices whose facet count is at most `3d` and at most `d + 2 log2(n) + 2`
//! ([`facet_bound_holds`]), with at most `(d + 4) n` edges and edge
//! expansion at least 1. (The base polytope keeps its average degree below
//! `d~ + 4`; apex layers can push the pyramid's average past `d + 4`.)

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::expansion::{self, ExpansionCertificate, FlowAssignment};
use crate::graph::{self, PolytopeGraph};
use crate::polytope::RevlexPolytope;
use crate::{facets, Error, Result, MAX_DIM};

/// Vertex-count cap for materializing pyramid flows (apex arcs are
/// quadratic in `n`). Certificates avoid materialization and are not capped.
pub const PYRAMID_FLOW_CAP: u64 = 1 << 10;

/// Whether a `d`-dimensional polytope with `n` vertices is constructible.
pub fn admissible(d: usize, n: u64) -> bool {
    d >= 1 && d <= MAX_DIM && n >= d as u64 + 1 && n <= 1u64 << d
}

/// Base dimension `d~` and base vertex count `n~` for the pyramid
/// construction: the smallest `k` such that `n - (d - k)` vertices fit in
/// the `k`-cube.
pub fn pyramid_params(d: usize, n: u64) -> Result<(usize, u64)> {
    if !admissible(d, n) {
        return Err(Error::InadmissiblePyramid { d, n });
    }
    let apexes_at = |k: usize| (d - k) as u64;
    let k = (0..=d)
        .find(|&k| n - apexes_at(k) <= 1u64 << k)
        .expect("k = d always fits");
    Ok((k, n - apexes_at(k)))
}

/// An iterated pyramid over a revlex-initial base polytope.
///
/// Vertices are numbered `0..n`: the base vertices first, then the apexes in
/// the order they are stacked. Every apex is adjacent to all vertices below
/// it.
#[derive(Clone, Debug)]
pub struct PyramidPolytope {
    d: usize,
    n: u64,
    base_dim: usize,
    base: Option<RevlexPolytope>,
}

impl PyramidPolytope {
    /// Builds the pyramid for dimension `d` and vertex count `n`.
    pub fn new(d: usize, n: u64) -> Result<Self> {
        let (base_dim, base_n) = pyramid_params(d, n)?;
        let base = if base_n >= 2 { Some(RevlexPolytope::from_vertex_count(base_n)?) } else { None };
        Ok(PyramidPolytope { d, n, base_dim, base })
    }

    /// Dimension of the pyramid.
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Total number of vertices.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Dimension of the base polytope.
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Number of base vertices `n~`.
    pub fn base_vertex_count(&self) -> u64 {
        self.n - self.apex_count() as u64
    }

    /// Number of stacked apexes `d - d~`.
    pub fn apex_count(&self) -> usize {
        self.d - self.base_dim
    }

    /// The base polytope; `None` when the base is a single point.
    pub fn base(&self) -> Option<&RevlexPolytope> {
        self.base.as_ref()
    }

    /// True when the base is the whole `d~`-cube.
    pub fn base_is_cube(&self) -> bool {
        self.base_vertex_count() == 1u64 << self.base_dim
    }

    /// Number of facets: `d + 1` over a point, `2 d~ + (d - d~)` over a
    /// cube, and the base facet count plus one per apex otherwise.
    pub fn facet_count(&self) -> u64 {
        let apexes = self.apex_count() as u64;
        if self.base_dim == 0 {
            self.d as u64 + 1
        } else if self.base_is_cube() {
            2 * self.base_dim as u64 + apexes
        } else {
            let base = self.base.as_ref().expect("non-point base");
            facets::facet_count(base).expect("base is full-dimensional") + apexes
        }
    }

    /// Number of edges: apex `a` contributes one edge per vertex below it.
    pub fn edge_count(&self) -> u128 {
        let base_edges = self.base.as_ref().map_or(0, graph::edge_count_formula);
        let first = self.base_vertex_count() as u128;
        let count = self.apex_count() as u128;
        base_edges + count * (2 * first + count - 1) / 2
    }

    /// Average vertex degree `2 E / n`.
    pub fn average_degree(&self) -> BigRational {
        let e = BigInt::from(self.edge_count());
        BigRational::new(2 * e, BigInt::from(self.n))
    }

    /// A 0/1 realization of vertex `i` in the ambient space `R^d`: base
    /// vertices keep their coordinates (padded with zeros), and the `j`-th
    /// apex is the unit vector at coordinate `base_dim + j`.
    pub fn vertex_coordinate(&self, i: u64) -> Result<crate::bits::BitVector01> {
        if i >= self.n {
            return Err(Error::NotAVertex(i.to_string()));
        }
        let first_apex = self.base_vertex_count();
        let index =
            if i < first_apex { i } else { 1u64 << (self.base_dim + (i - first_apex) as usize) };
        crate::bits::BitVector01::from_index(index, self.d)
    }

    /// The pyramid graph: the base graph plus all apex edges.
    pub fn graph(&self) -> Result<PolytopeGraph> {
        let mut edges = match &self.base {
            Some(base) => graph::build_graph(base)?.edges(),
            None => Vec::new(),
        };
        for a in self.base_vertex_count()..self.n {
            for x in 0..a {
                edges.push((x, a));
            }
        }
        Ok(PolytopeGraph::from_edges(self.n, edges))
    }

    /// The aggregated flow: the base flow plus one unit on every apex arc.
    /// Materializes the quadratic apex arcs, hence capped.
    pub fn flow(&self) -> Result<FlowAssignment> {
        if self.n > PYRAMID_FLOW_CAP {
            return Err(Error::CapExceeded {
                what: "pyramid flow materialization",
                cap: PYRAMID_FLOW_CAP,
                requested: self.n,
            });
        }
        let mut arcs: BTreeMap<(u64, u64), BigRational> = match &self.base {
            Some(base) => FlowAssignment::build(base.n())?.arc_flows().clone(),
            None => BTreeMap::new(),
        };
        for a in self.base_vertex_count()..self.n {
            for x in 0..a {
                arcs.insert((x, a), BigRational::one());
                arcs.insert((a, x), BigRational::one());
            }
        }
        Ok(FlowAssignment::from_parts(self.n, arcs))
    }

    /// Certifies `h(G) >= n / (2 * phi_max)` with
    /// `phi_max = max(base phi_max, 1)`, without materializing apex arcs.
    pub fn expansion_certificate(&self) -> Result<ExpansionCertificate> {
        let phi_max = match &self.base {
            Some(base) => {
                let base_phi = expansion::phi_max_recursion(base.n())?;
                if self.apex_count() > 0 {
                    base_phi.max(BigRational::one())
                } else {
                    base_phi
                }
            }
            None => BigRational::one(),
        };
        let n = BigRational::from_integer(BigInt::from(self.n));
        let lower_bound = &n / (BigRational::from_integer(BigInt::from(2u8)) * &phi_max);
        Ok(ExpansionCertificate { n: self.n, phi_max, lower_bound, audited: false })
    }
}

/// Exact check of the two facet-count bounds: `f <= 3d` and
/// `f <= d + 2 log2(n) + 2`, the latter as `2^(f - d) <= 4 n^2`.
pub fn facet_bound_holds(d: usize, n: u64, facet_count: u64) -> bool {
    let f = facet_count;
    let d = d as u64;
    if f > 3 * d {
        return false;
    }
    // f >= d for every pyramid, but stay total.
    let excess = f.saturating_sub(d);
    if excess > 126 {
        return false;
    }
    let lhs: u128 = 1u128 << excess;
    let rhs: u128 = 4 * (n as u128) * (n as u128);
    lhs <= rhs
}

/// Column order of [`SweepRow::csv_line`]. Rationals are split into reduced
/// numerator and denominator columns so the file stays exact.
pub const SWEEP_CSV_HEADER: &str =
    "n,dim,d_tilde,n_tilde,num_facets,num_edges,avg_degree_num,avg_degree_den,expansion_lb_num,expansion_lb_den";

/// One row of a dimension sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: u64,
    pub dim: usize,
    pub d_tilde: usize,
    pub n_tilde: u64,
    pub num_facets: u64,
    pub num_edges: u128,
    pub avg_degree: BigRational,
    pub expansion_lb: BigRational,
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.dim,
            self.d_tilde,
            self.n_tilde,
            self.num_facets,
            self.num_edges,
            self.avg_degree.numer(),
            self.avg_degree.denom(),
            self.expansion_lb.numer(),
            self.expansion_lb.denom()
        )
    }
}

/// Pyramid statistics for every admissible vertex count at ambient
/// dimension `d`, in increasing order of `n`.
pub fn sweep(d: usize) -> Result<Vec<SweepRow>> {
    if d < 1 || d > 16 {
        return Err(Error::CapExceeded { what: "sweep dimension", cap: 16, requested: d as u64 });
    }
    let ns: Vec<u64> = (d as u64 + 1..=1u64 << d).collect();
    let rows: Vec<Result<SweepRow>> = ns
        .par_iter()
        .map(|&n| {
            let p = PyramidPolytope::new(d, n)?;
            let cert = p.expansion_certificate()?;
            Ok(SweepRow {
                n,
                dim: d,
                d_tilde: p.base_dim(),
                n_tilde: p.base_vertex_count(),
                num_facets: p.facet_count(),
                num_edges: p.edge_count(),
                avg_degree: p.average_degree(),
                expansion_lb: cert.lower_bound,
            })
        })
        .collect();
    rows.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_expansion;
    use crate::rat::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn params_examples() {
        assert_eq!(pyramid_params(5, 7).unwrap(), (2, 4));
        assert_eq!(pyramid_params(13, 6145).unwrap(), (13, 6145));
        assert_eq!(pyramid_params(4, 5).unwrap(), (0, 1));
        assert_eq!(pyramid_params(3, 8).unwrap(), (3, 8));
        assert_eq!(pyramid_params(10, 1000).unwrap(), (10, 1000));
    }

    #[test]
    fn base_dimension_is_never_one() {
        for d in 1..=10usize {
            for n in d as u64 + 1..=1u64 << d {
                let (bd, bn) = pyramid_params(d, n).unwrap();
                assert_ne!(bd, 1, "d={}, n={}", d, n);
                assert!(bn >= 1 && bn <= 1u64 << bd);
                if bd > 0 {
                    // Minimality: one dimension less does not fit.
                    assert!(bn - 1 > 1u64 << (bd - 1));
                }
            }
        }
    }

    #[test]
    fn inadmissible_parameters() {
        assert!(matches!(pyramid_params(3, 3), Err(Error::InadmissiblePyramid { .. })));
        assert!(matches!(pyramid_params(3, 9), Err(Error::InadmissiblePyramid { .. })));
        assert!(pyramid_params(0, 1).is_err());
        assert!(pyramid_params(63, 64).is_err());
        assert!(PyramidPolytope::new(2, 8).is_err());
    }

    #[test]
    fn facet_counts() {
        assert_eq!(PyramidPolytope::new(5, 7).unwrap().facet_count(), 7);
        assert_eq!(PyramidPolytope::new(13, 6145).unwrap().facet_count(), 37);
        for d in 1..=8usize {
            let simplex = PyramidPolytope::new(d, d as u64 + 1).unwrap();
            assert_eq!(simplex.facet_count(), d as u64 + 1, "simplex d={}", d);
            let cube = PyramidPolytope::new(d, 1 << d).unwrap();
            assert_eq!(cube.facet_count(), 2 * d as u64, "cube d={}", d);
        }
    }

    #[test]
    fn edges_match_the_graph() {
        for (d, n) in [(5usize, 7u64), (4, 9), (3, 4), (6, 40), (7, 9), (5, 32)] {
            let p = PyramidPolytope::new(d, n).unwrap();
            let g = p.graph().unwrap();
            assert_eq!(p.edge_count(), g.edge_count(), "d={}, n={}", d, n);
        }
        assert_eq!(PyramidPolytope::new(5, 7).unwrap().edge_count(), 19);
    }

    #[test]
    fn simplices_are_complete_graphs() {
        for d in 1..=8usize {
            let p = PyramidPolytope::new(d, d as u64 + 1).unwrap();
            let n = d as u128 + 1;
            assert_eq!(p.edge_count(), n * (n - 1) / 2);
            assert_eq!(p.average_degree(), BigRational::from_integer(BigInt::from(d)));
        }
    }

    #[test]
    fn expansion_certificates() {
        let p = PyramidPolytope::new(5, 7).unwrap();
        let cert = p.expansion_certificate().unwrap();
        assert_eq!(cert.phi_max, q("2"));
        assert_eq!(cert.lower_bound, q("7/4"));

        let simplex = PyramidPolytope::new(3, 4).unwrap();
        let cert = simplex.expansion_certificate().unwrap();
        assert_eq!(cert.phi_max, q("1"));
        assert_eq!(cert.lower_bound, q("2"));
    }

    #[test]
    fn materialized_flow_agrees_with_certificate() {
        for (d, n) in [(5usize, 7u64), (4, 9), (3, 8), (6, 22), (7, 8)] {
            let p = PyramidPolytope::new(d, n).unwrap();
            let flow = p.flow().unwrap();
            let cert = p.expansion_certificate().unwrap();
            assert_eq!(flow.phi_max(), &cert.phi_max, "d={}, n={}", d, n);
            assert_eq!(flow.lower_bound(), cert.lower_bound);
            flow.check_support(&p.graph().unwrap()).unwrap();
        }
    }

    #[test]
    fn certificates_hold_against_brute_force() {
        for (d, n) in [(3usize, 4u64), (3, 6), (4, 9), (4, 12), (5, 18), (6, 20)] {
            let p = PyramidPolytope::new(d, n).unwrap();
            let g = p.graph().unwrap();
            let (h, _) = brute_expansion(&g).unwrap();
            let cert = p.expansion_certificate().unwrap();
            assert!(cert.lower_bound <= h, "d={}, n={}: {} > {}", d, n, cert.lower_bound, h);
            assert!(cert.lower_bound >= q("1"));
        }
    }

    #[test]
    fn facet_bounds_hold_everywhere_small() {
        for d in 1..=10usize {
            for n in d as u64 + 1..=1u64 << d {
                let p = PyramidPolytope::new(d, n).unwrap();
                assert!(facet_bound_holds(d, n, p.facet_count()), "d={}, n={}", d, n);
            }
        }
        // The bound check itself can fail.
        assert!(!facet_bound_holds(10, 11, 31));
        assert!(!facet_bound_holds(10, 11, 29));
        assert!(facet_bound_holds(10, 11, 18));
    }

    #[test]
    fn flow_materialization_cap() {
        let p = PyramidPolytope::new(11, 1 << 11).unwrap();
        assert!(matches!(p.flow(), Err(Error::CapExceeded { .. })));
        assert!(p.expansion_certificate().is_ok());
    }
}
