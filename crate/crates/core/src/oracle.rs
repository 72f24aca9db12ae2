//! Independent brute-force oracles.
//!
//! Everything in this module recomputes its answer from first principles —
//! exhaustive enumeration and exact rational linear algebra — without touching
//! the closed-form routines it is used to check. The oracles are deliberately
//! slow and capped; they exist so that the fast paths can be validated on
//! every instance small enough to afford it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bits::BitVector01;
use crate::facets::{full_description, LinearInequality};
use crate::graph::PolytopeGraph;
use crate::polytope::RevlexPolytope;
use crate::{Error, Result};

/// Dimension cap for vertex enumeration from an inequality description.
pub const H_ENUM_DIM_CAP: usize = 6;

/// Vertex-count cap for the facet rank oracle.
pub const FACET_RANK_VERTEX_CAP: u64 = 1 << 16;

/// Vertex-count cap for single smallest-face adjacency queries.
pub const FACE_ORACLE_VERTEX_CAP: u64 = 1 << 14;

/// Vertex-count cap for the all-pairs adjacency oracle graph.
pub const FACE_ORACLE_GRAPH_CAP: u64 = 1 << 10;

/// Vertex-count cap for exhaustive edge-expansion computation.
pub const BRUTE_EXPANSION_VERTEX_CAP: u64 = 22;

/// Maximizes `c` over the vertex list by evaluating every vertex.
///
/// Returns the maximum and the first vertex (in vertex-index order)
/// attaining it.
pub fn brute_max(p: &RevlexPolytope, c: &[BigRational]) -> Result<(BigRational, BitVector01)> {
    let d = p.d();
    if c.len() != d {
        return Err(Error::BadCoefficientCount { got: c.len(), expected: d });
    }
    if let Some(scaled) = scale_to_i64(c) {
        let mut best: Option<(i128, u64)> = None;
        for x in 0..p.n() {
            let mut value: i128 = 0;
            let mut bits = x;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                value += scaled.coeffs[i] as i128;
                bits &= bits - 1;
            }
            if best.as_ref().map_or(true, |(b, _)| value > *b) {
                best = Some((value, x));
            }
        }
        let (value, x) = best.expect("polytope has vertices");
        let value = BigRational::new(BigInt::from(value), scaled.denom.clone());
        return Ok((value, BitVector01::from_index(x, d)?));
    }
    let mut best: Option<(BigRational, u64)> = None;
    for x in 0..p.n() {
        let v = BitVector01::from_index(x, d)?;
        let value: BigRational = v.iter().zip(c).filter(|(b, _)| *b).map(|(_, ci)| ci).sum();
        if best.as_ref().map_or(true, |(b, _)| value > *b) {
            best = Some((value, x));
        }
    }
    let (value, x) = best.expect("polytope has vertices");
    Ok((value, BitVector01::from_index(x, d)?))
}

struct ScaledObjective {
    coeffs: Vec<i64>,
    denom: BigInt,
}

/// Clears denominators; succeeds only when the scaled coefficients fit `i64`
/// and any vertex value fits `i128`.
fn scale_to_i64(c: &[BigRational]) -> Option<ScaledObjective> {
    let mut denom = BigInt::one();
    for ci in c {
        denom = denom.lcm(ci.denom());
    }
    let mut coeffs = Vec::with_capacity(c.len());
    for ci in c {
        let scaled = ci.numer() * (&denom / ci.denom());
        coeffs.push(i64::try_from(&scaled).ok()?);
    }
    let magnitude: i128 = coeffs.iter().map(|&a| (a as i128).unsigned_abs() as i128).sum();
    if magnitude > i128::MAX / 2 {
        return None;
    }
    Some(ScaledObjective { coeffs, denom })
}

/// What the rank oracle concluded about one inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetVerdict {
    /// Valid, and the tight vertices affinely span a hyperplane.
    Facet,
    /// Valid, but the tight vertices span less than a hyperplane.
    ValidNotFacet,
    /// Some vertex violates the inequality.
    NotValid,
}

/// Classifies an inequality against the vertex list by exact rank
/// computation over the tight vertices.
pub fn is_facet_by_rank(p: &RevlexPolytope, ineq: &LinearInequality) -> Result<FacetVerdict> {
    let d = p.d();
    if ineq.coeffs.len() != d {
        return Err(Error::BadCoefficientCount { got: ineq.coeffs.len(), expected: d });
    }
    if p.n() > FACET_RANK_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "facet rank oracle",
            cap: FACET_RANK_VERTEX_CAP,
            requested: p.n(),
        });
    }
    let mut tight: Vec<Vec<BigInt>> = Vec::new();
    for v in p.vertices() {
        let lhs = ineq.lhs_at(v);
        if lhs > ineq.rhs {
            return Ok(FacetVerdict::NotValid);
        }
        if lhs == ineq.rhs {
            // Homogenize: affine rank d (a hyperplane's worth of points)
            // becomes linear rank d on rows (x, 1).
            let mut row: Vec<BigInt> = v.iter().map(|b| BigInt::from(u8::from(b))).collect();
            row.push(BigInt::one());
            tight.push(row);
        }
    }
    if integer_rank(tight) == d {
        Ok(FacetVerdict::Facet)
    } else {
        Ok(FacetVerdict::ValidNotFacet)
    }
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            let factor = std::mem::replace(&mut m[r][col], BigInt::zero());
            for c in col + 1..cols {
                let num = &m[r][c] * &m[rank][col] - &m[rank][c] * &factor;
                m[r][c] = num / &prev;
            }
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Enumerates the vertices of the polyhedron cut out by `rows` by solving
/// every `d`-subset of rows as an equality system and keeping the feasible,
/// unique solutions. Requires a bounded, nonempty system to be meaningful.
pub fn h_vertex_enumeration(rows: &[LinearInequality]) -> Result<Vec<Vec<BigRational>>> {
    let d = rows.first().map_or(0, |r| r.coeffs.len());
    if d == 0 || d > H_ENUM_DIM_CAP {
        return Err(Error::CapExceeded {
            what: "vertex enumeration dimension",
            cap: H_ENUM_DIM_CAP as u64,
            requested: d as u64,
        });
    }
    if rows.iter().any(|r| r.coeffs.len() != d) {
        return Err(Error::BadCoefficientCount { got: 0, expected: d });
    }
    if rows.len() < d {
        return Ok(Vec::new());
    }
    let mut found: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let a: Vec<Vec<BigRational>> = subset
            .iter()
            .map(|&r| {
                rows[r]
                    .coeffs
                    .iter()
                    .map(|&c| BigRational::from_integer(BigInt::from(c)))
                    .collect()
            })
            .collect();
        let b: Vec<BigRational> = subset
            .iter()
            .map(|&r| BigRational::from_integer(BigInt::from(rows[r].rhs)))
            .collect();
        if let Some(x) = solve_square(a, b) {
            if rows.iter().all(|r| satisfied_at(r, &x)) {
                found.insert(x);
            }
        }
        if !next_combination(&mut subset, rows.len()) {
            break;
        }
    }
    Ok(found.into_iter().collect())
}

fn satisfied_at(r: &LinearInequality, x: &[BigRational]) -> bool {
    let lhs: BigRational = r
        .coeffs
        .iter()
        .zip(x)
        .map(|(&c, xi)| BigRational::from_integer(BigInt::from(c)) * xi)
        .sum();
    lhs <= BigRational::from_integer(BigInt::from(r.rhs))
}

/// Advances `subset` to the next `k`-combination of `0..m` in lexicographic
/// order; returns false after the last one.
fn next_combination(subset: &mut [usize], m: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] != i + m - k {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Solves `a x = b` exactly; `None` when `a` is singular.
fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let d = b.len();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for r in 0..d {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..d {
                let t = &a[col][c] * &f;
                a[r][c] -= t;
            }
            let t = &b[col] * &f;
            b[r] -= t;
        }
    }
    Some((0..d).map(|i| &b[i] / &a[i][i]).collect())
}

/// Tight-row bitmasks of every vertex against the full description.
fn tightness_masks(p: &RevlexPolytope) -> Vec<u64> {
    let rows = full_description(p);
    debug_assert!(rows.len() <= 64);
    p.vertices()
        .map(|v| {
            let mut mask = 0u64;
            for (i, r) in rows.iter().enumerate() {
                if r.tight_at(v) {
                    mask |= 1 << i;
                }
            }
            mask
        })
        .collect()
}

/// Whether the smallest face containing vertices `x` and `y` is exactly the
/// segment between them, decided from tight-row masks over the full
/// description.
pub fn smallest_face_adjacent(p: &RevlexPolytope, x: u64, y: u64) -> Result<bool> {
    if p.n() > FACE_ORACLE_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "smallest-face oracle",
            cap: FACE_ORACLE_VERTEX_CAP,
            requested: p.n(),
        });
    }
    if x >= p.n() || y >= p.n() {
        return Err(Error::NotAVertex(x.max(y).to_string()));
    }
    if x == y {
        return Ok(false);
    }
    let masks = tightness_masks(p);
    Ok(face_is_segment(&masks, x, y))
}

fn face_is_segment(masks: &[u64], x: u64, y: u64) -> bool {
    let common = masks[x as usize] & masks[y as usize];
    masks.iter().filter(|&&m| m & common == common).count() == 2
}

/// The full vertex-adjacency graph computed from smallest faces alone.
pub fn adjacency_oracle_graph(p: &RevlexPolytope) -> Result<PolytopeGraph> {
    if p.n() > FACE_ORACLE_GRAPH_CAP {
        return Err(Error::CapExceeded {
            what: "adjacency oracle graph",
            cap: FACE_ORACLE_GRAPH_CAP,
            requested: p.n(),
        });
    }
    let n = p.n();
    let masks = tightness_masks(p);
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if face_is_segment(&masks, x, y) {
                edges.push((x, y));
            }
        }
    }
    Ok(PolytopeGraph::from_edges(n, edges))
}

/// Exhaustive edge expansion: the minimum of `cut(S) / |S|` over all vertex
/// sets with `1 <= |S| <= n/2`, together with a minimizing set as a bitmask.
pub fn brute_expansion(g: &PolytopeGraph) -> Result<(BigRational, u64)> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::FlowTooSmall(n));
    }
    if n > BRUTE_EXPANSION_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "exhaustive expansion",
            cap: BRUTE_EXPANSION_VERTEX_CAP,
            requested: n,
        });
    }
    let nu = n as usize;
    let degrees: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    // Gray-code walk over all subsets, maintaining the cut size and |S|
    // incrementally: flipping vertex v changes the cut by
    // deg(v) - 2 * |neighbors of v inside S|.
    let mut in_s = vec![false; nu];
    let mut cut: i64 = 0;
    let mut size: u64 = 0;
    let mut mask: u64 = 0;
    let mut best: Option<(u64, u64, u64)> = None; // (cut, size, mask)
    let total: u64 = 1 << nu;
    for step in 1..total {
        let v = step.trailing_zeros() as usize;
        let inside =
            g.neighbors_of(v as u64).iter().filter(|&&w| in_s[w as usize]).count() as i64;
        if in_s[v] {
            cut -= degrees[v] - 2 * inside;
            size -= 1;
            mask &= !(1 << v);
        } else {
            cut += degrees[v] - 2 * inside;
            size += 1;
            mask |= 1 << v;
        }
        in_s[v] = !in_s[v];
        if size == 0 || 2 * size > n {
            continue;
        }
        let better = match best {
            None => true,
            // cut/size < best_cut/best_size by cross-multiplication
            Some((bc, bs, _)) => (cut as u128) * (bs as u128) < (bc as u128) * (size as u128),
        };
        if better {
            best = Some((cut as u64, size, mask));
        }
    }
    let (cut, size, mask) = best.expect("n >= 2 leaves admissible subsets");
    Ok((BigRational::new(BigInt::from(cut), BigInt::from(size)), mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::certify_expansion;
    use crate::facets::{minimal_description, IneqTag};
    use crate::graph::build_graph;
    use crate::rat::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn qs(parts: &[&str]) -> Vec<BigRational> {
        parts.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn brute_max_known_values() {
        let p = RevlexPolytope::from_vertex_count(7).unwrap();
        let (val, arg) = brute_max(&p, &qs(&["1", "-1", "2"])).unwrap();
        assert_eq!(val, q("3"));
        assert_eq!(arg.to_index(), 5);
        let (val, _) = brute_max(&p, &qs(&["1", "1", "1"])).unwrap();
        assert_eq!(val, q("2"));
        let (val, arg) = brute_max(&p, &qs(&["-1", "-2", "-4"])).unwrap();
        assert_eq!(val, q("0"));
        assert_eq!(arg.to_index(), 0);
    }

    #[test]
    fn brute_max_fractional() {
        let p = RevlexPolytope::from_vertex_count(7).unwrap();
        let (val, _) = brute_max(&p, &qs(&["1/2", "1/3", "1/6"])).unwrap();
        assert_eq!(val, q("5/6"));
    }

    #[test]
    fn brute_max_slow_path_matches_fast() {
        let p = RevlexPolytope::from_vertex_count(13).unwrap();
        let small = qs(&["3", "-2", "5", "1"]);
        let factor = BigRational::from_integer(BigInt::from(u128::MAX));
        let huge: Vec<BigRational> = small.iter().map(|c| c * &factor).collect();
        assert!(scale_to_i64(&huge).is_none());
        let (v1, a1) = brute_max(&p, &small).unwrap();
        let (v2, a2) = brute_max(&p, &huge).unwrap();
        assert_eq!(v2, v1 * &factor);
        assert_eq!(a1, a2);
    }

    #[test]
    fn rank_of_simple_matrices() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        assert_eq!(integer_rank(m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(integer_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(integer_rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(integer_rank(m(&[&[2, 3, 5], &[4, 6, 10], &[1, 1, 1]])), 2);
        assert_eq!(integer_rank(Vec::new()), 0);
    }

    #[test]
    fn rank_is_pivot_order_independent() {
        let rows: Vec<Vec<BigInt>> = vec![
            vec![1.into(), 1.into(), 0.into(), 1.into()],
            vec![0.into(), 1.into(), 1.into(), 1.into()],
            vec![1.into(), 0.into(), 1.into(), 1.into()],
            vec![1.into(), 2.into(), 1.into(), 2.into()],
        ];
        let base = integer_rank(rows.clone());
        assert_eq!(base, 3);
        let mut perm = rows;
        perm.reverse();
        assert_eq!(integer_rank(perm.clone()), base);
        perm.swap(0, 2);
        assert_eq!(integer_rank(perm), base);
    }

    #[test]
    fn facet_verdicts_on_small_polytopes() {
        let p = RevlexPolytope::from_vertex_count(7).unwrap();
        for row in minimal_description(&p).unwrap() {
            assert_eq!(is_facet_by_rank(&p, &row).unwrap(), FacetVerdict::Facet, "{}", row);
        }
        let p6 = RevlexPolytope::from_vertex_count(6).unwrap();
        let dropped: Vec<_> = full_description(&p6)
            .into_iter()
            .filter(|r| matches!(r.tag, IneqTag::UpperBound(i) if i == 1 || i == 2))
            .collect();
        assert_eq!(dropped.len(), 2);
        for row in dropped {
            assert_eq!(is_facet_by_rank(&p6, &row).unwrap(), FacetVerdict::ValidNotFacet);
        }
        let slack =
            LinearInequality { coeffs: vec![1, 1, 1], rhs: 5, tag: IneqTag::FullSupport };
        assert_eq!(is_facet_by_rank(&p6, &slack).unwrap(), FacetVerdict::ValidNotFacet);
        let wrong =
            LinearInequality { coeffs: vec![-1, 0, 0], rhs: -1, tag: IneqTag::LowerBound(0) };
        assert_eq!(is_facet_by_rank(&p6, &wrong).unwrap(), FacetVerdict::NotValid);
    }

    #[test]
    fn vertex_enumeration_recovers_vertices() {
        for n in [3u64, 5, 6, 7, 8, 12, 19] {
            let p = RevlexPolytope::from_vertex_count(n).unwrap();
            let mut expected: Vec<Vec<BigRational>> = p
                .vertices()
                .map(|v| {
                    v.iter()
                        .map(|b| BigRational::from_integer(BigInt::from(u8::from(b))))
                        .collect()
                })
                .collect();
            expected.sort();
            let rows = full_description(&p);
            assert_eq!(h_vertex_enumeration(&rows).unwrap(), expected, "full, n={}", n);
            if let Ok(min_rows) = minimal_description(&p) {
                assert_eq!(h_vertex_enumeration(&min_rows).unwrap(), expected, "minimal, n={}", n);
            }
        }
    }

    #[test]
    fn vertex_enumeration_dimension_cap() {
        let p = RevlexPolytope::from_vertex_count(200).unwrap();
        assert!(matches!(
            h_vertex_enumeration(&full_description(&p)),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn combinations_cover_everything() {
        let mut subset = vec![0usize, 1, 2];
        let mut count = 1;
        while next_combination(&mut subset, 6) {
            count += 1;
        }
        assert_eq!(count, 20);
    }

    #[test]
    fn smallest_face_matches_graph() {
        for n in [2u64, 3, 4, 6, 7, 12, 24, 64] {
            let p = RevlexPolytope::from_vertex_count(n).unwrap();
            let g = build_graph(&p).unwrap();
            let oracle = adjacency_oracle_graph(&p).unwrap();
            assert_eq!(g, oracle, "n={}", n);
        }
    }

    #[test]
    fn single_pair_queries() {
        let p = RevlexPolytope::from_vertex_count(7).unwrap();
        assert!(smallest_face_adjacent(&p, 0, 1).unwrap());
        assert!(smallest_face_adjacent(&p, 2, 6).unwrap());
        assert!(!smallest_face_adjacent(&p, 0, 3).unwrap());
        assert!(!smallest_face_adjacent(&p, 1, 1).unwrap());
        assert!(smallest_face_adjacent(&p, 0, 7).is_err());
    }

    #[test]
    fn brute_expansion_of_cubes_is_one() {
        for d in 1..=4u32 {
            let p = RevlexPolytope::from_vertex_count(1 << d).unwrap();
            let g = build_graph(&p).unwrap();
            let (h, witness) = brute_expansion(&g).unwrap();
            assert_eq!(h, q("1"), "d={}", d);
            assert_eq!(witness.count_ones() as u64, (1u64 << d) / 2);
        }
    }

    #[test]
    fn brute_expansion_of_triangle() {
        let p = RevlexPolytope::from_vertex_count(3).unwrap();
        let g = build_graph(&p).unwrap();
        let (h, witness) = brute_expansion(&g).unwrap();
        assert_eq!(h, q("2"));
        assert_eq!(witness.count_ones(), 1);
    }

    #[test]
    fn certificates_never_exceed_brute_force() {
        for n in 2..=14u64 {
            let p = RevlexPolytope::from_vertex_count(n).unwrap();
            let g = build_graph(&p).unwrap();
            let (h, _) = brute_expansion(&g).unwrap();
            let cert = certify_expansion(n, false).unwrap();
            assert!(cert.lower_bound <= h, "n={}: {} > {}", n, cert.lower_bound, h);
        }
    }

    #[test]
    fn oracle_caps() {
        let p = RevlexPolytope::from_vertex_count(1 << 11).unwrap();
        assert!(matches!(adjacency_oracle_graph(&p), Err(Error::CapExceeded { .. })));
        let g = PolytopeGraph::from_edges(23, (0..22).map(|i| (i, i + 1)));
        assert!(matches!(brute_expansion(&g), Err(Error::CapExceeded { .. })));
    }
}
