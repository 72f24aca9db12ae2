//! Linear descriptions of revlex-initial 0/1-polytopes.
//!
//! The full description consists of the cube bounds together with one cover
//! inequality per zero-position of the spec vector and a single full-support
//! inequality. For a full-dimensional polytope the minimal description drops
//! a well-understood set of redundant rows, and the number of facets has the
//! closed form `2d + #{zero positions strictly between s_w and s_2} + eps`
//! with `eps` depending on the weight and on `v_{d-2}`.

use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::bits::BitVector01;
use crate::polytope::RevlexPolytope;
use crate::{Error, Result};

/// Which family a row of the description belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IneqTag {
    /// `-x_i <= 0`.
    LowerBound(usize),
    /// `x_i <= 1`.
    UpperBound(usize),
    /// `x_i + sum of x_j over one-positions j > i  <=  #{one-positions > i}`,
    /// for a zero-position `i`.
    Cover(usize),
    /// `sum of x_j over all one-positions <= weight - 1`.
    FullSupport,
}

impl fmt::Display for IneqTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IneqTag::LowerBound(i) => write!(f, "lower-bound({})", i),
            IneqTag::UpperBound(i) => write!(f, "upper-bound({})", i),
            IneqTag::Cover(i) => write!(f, "cover({})", i),
            IneqTag::FullSupport => write!(f, "full-support"),
        }
    }
}

/// An integer inequality `coeffs . x <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInequality {
    /// Coefficient of each coordinate.
    pub coeffs: Vec<i64>,
    /// Right-hand side.
    pub rhs: i64,
    /// Row family.
    pub tag: IneqTag,
}

impl LinearInequality {
    /// Left-hand side value at a 0/1-point.
    pub fn lhs_at(&self, x: BitVector01) -> i64 {
        assert_eq!(x.len(), self.coeffs.len(), "point/inequality length mismatch");
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| x.get(*i))
            .map(|(_, &a)| a)
            .sum()
    }

    /// True if the point satisfies the inequality.
    pub fn satisfied_by(&self, x: BitVector01) -> bool {
        self.lhs_at(x) <= self.rhs
    }

    /// True if the inequality holds with equality at the point.
    pub fn tight_at(&self, x: BitVector01) -> bool {
        self.lhs_at(x) == self.rhs
    }
}

impl fmt::Display for LinearInequality {
    /// Text form: `a_0 a_1 ... a_{d-1} <= b  # tag`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.coeffs {
            write!(f, "{} ", a)?;
        }
        write!(f, "<= {}  # {}", self.rhs, self.tag)
    }
}

impl Serialize for LinearInequality {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LinearInequality", 3)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.serialize_field("tag", &self.tag.to_string())?;
        st.end()
    }
}

fn lower_bound(d: usize, i: usize) -> LinearInequality {
    let mut coeffs = vec![0; d];
    coeffs[i] = -1;
    LinearInequality { coeffs, rhs: 0, tag: IneqTag::LowerBound(i) }
}

fn upper_bound(d: usize, i: usize) -> LinearInequality {
    let mut coeffs = vec![0; d];
    coeffs[i] = 1;
    LinearInequality { coeffs, rhs: 1, tag: IneqTag::UpperBound(i) }
}

fn cover(p: &RevlexPolytope, i: usize) -> LinearInequality {
    let d = p.d();
    let mut coeffs = vec![0; d];
    coeffs[i] = 1;
    let mut count = 0i64;
    for &s in p.signature().ones() {
        if s > i {
            coeffs[s] = 1;
            count += 1;
        }
    }
    LinearInequality { coeffs, rhs: count, tag: IneqTag::Cover(i) }
}

fn full_support(p: &RevlexPolytope) -> LinearInequality {
    let d = p.d();
    let mut coeffs = vec![0; d];
    for &s in p.signature().ones() {
        coeffs[s] = 1;
    }
    LinearInequality {
        coeffs,
        rhs: p.signature().weight() as i64 - 1,
        tag: IneqTag::FullSupport,
    }
}

/// The complete (possibly redundant) linear description: all lower and upper
/// bounds, one cover row per zero-position, and the full-support row, in that
/// order. `2d + #zeros + 1` rows; valid in any ambient dimension.
pub fn full_description(p: &RevlexPolytope) -> Vec<LinearInequality> {
    let d = p.d();
    let mut rows = Vec::with_capacity(2 * d + p.signature().zeros().len() + 1);
    for i in 0..d {
        rows.push(lower_bound(d, i));
    }
    for i in 0..d {
        rows.push(upper_bound(d, i));
    }
    for &i in p.signature().zeros() {
        rows.push(cover(p, i));
    }
    rows.push(full_support(p));
    rows
}

/// Which upper-bound rows are redundant, and the facet-count correction.
///
/// `d1` is the whole signature when the weight is two (those upper bounds
/// follow from the full-support row and the lower bounds); `d2` is
/// `{s_2+1, ..., d-1}` when `s_2 < d-2` (those follow from the cover row at
/// the position and lower bounds). `epsilon` is the correction term in the
/// facet-count formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetClassification {
    /// Positions whose upper bound is dropped because the weight is two.
    pub d1: Vec<usize>,
    /// Positions above `s_2` whose upper bound is dropped.
    pub d2: Vec<usize>,
    /// Correction term: `-1` for weight two, `+1` when `v_{d-2} = 1` with
    /// weight at least three, `0` otherwise.
    pub epsilon: i64,
}

fn require_full_dimensional(p: &RevlexPolytope) -> Result<()> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional { n: p.n(), d: p.d() });
    }
    Ok(())
}

/// Classifies the redundant upper bounds of a full-dimensional polytope.
pub fn classify(p: &RevlexPolytope) -> Result<FacetClassification> {
    require_full_dimensional(p)?;
    let d = p.d();
    let sig = p.signature();
    let w = sig.weight();
    debug_assert!(w >= 2, "full-dimensional implies weight >= 2");
    let s2 = sig.s(2);
    let d1: Vec<usize> = if w == 2 {
        let mut ones = sig.ones().to_vec();
        ones.sort_unstable();
        ones
    } else {
        Vec::new()
    };
    let d2: Vec<usize> = if s2 < d.saturating_sub(2) { (s2 + 1..d).collect() } else { Vec::new() };
    let epsilon = if w == 2 {
        -1
    } else if d >= 2 && p.spec_vector().get(d - 2) {
        1
    } else {
        0
    };
    Ok(FacetClassification { d1, d2, epsilon })
}

/// The irredundant facet description of a full-dimensional polytope.
///
/// Keeps every lower bound, the upper bounds outside `d1 union d2`, the cover
/// rows at zero-positions above the smallest one-position, and the
/// full-support row. Errors on degenerate input; project such a polytope to
/// its own dimension first.
pub fn minimal_description(p: &RevlexPolytope) -> Result<Vec<LinearInequality>> {
    let class = classify(p)?;
    let d = p.d();
    let sig = p.signature();
    let s_w = *sig.ones().last().expect("nonzero spec vector");
    let dropped =
        |i: usize| class.d1.binary_search(&i).is_ok() || class.d2.binary_search(&i).is_ok();
    let mut rows = Vec::new();
    for i in 0..d {
        rows.push(lower_bound(d, i));
    }
    for i in 0..d {
        if !dropped(i) {
            rows.push(upper_bound(d, i));
        }
    }
    for &i in sig.zeros() {
        if i > s_w {
            rows.push(cover(p, i));
        }
    }
    rows.push(full_support(p));
    Ok(rows)
}

/// Number of facets of a full-dimensional polytope, in closed form:
/// `2d + #{zero positions strictly between s_w and s_2} + epsilon`.
/// Always between `2d - 1` and `3d - 2`.
pub fn facet_count(p: &RevlexPolytope) -> Result<u64> {
    let class = classify(p)?;
    let sig = p.signature();
    let s2 = sig.s(2);
    let s_w = *sig.ones().last().expect("nonzero spec vector");
    let middle = sig.zeros().iter().filter(|&&i| i > s_w && i < s2).count() as i64;
    Ok((2 * p.d() as i64 + middle + class.epsilon) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: u64) -> RevlexPolytope {
        RevlexPolytope::from_vertex_count(n).unwrap()
    }

    fn tags(rows: &[LinearInequality]) -> Vec<String> {
        rows.iter().map(|r| r.tag.to_string()).collect()
    }

    #[test]
    fn full_description_row_count() {
        let p = poly(589);
        let rows = full_description(&p);
        assert_eq!(rows.len(), 26); // 2*10 + 5 + 1
        for x in p.vertices() {
            assert!(rows.iter().all(|r| r.satisfied_by(x)));
        }
        // The spec vector itself violates the full-support row.
        let fs = rows.last().unwrap();
        assert!(!fs.satisfied_by(p.spec_vector()));
    }

    #[test]
    fn cover_and_full_support_of_p6() {
        let p = poly(6); // v = (0,1,1)
        let rows = full_description(&p);
        let cover0 = rows.iter().find(|r| r.tag == IneqTag::Cover(0)).unwrap();
        assert_eq!((cover0.coeffs.clone(), cover0.rhs), (vec![1, 1, 1], 2));
        let fs = rows.last().unwrap();
        assert_eq!((fs.coeffs.clone(), fs.rhs), (vec![0, 1, 1], 1));
    }

    #[test]
    fn display_form() {
        let p = poly(6);
        let rows = full_description(&p);
        assert_eq!(rows[0].to_string(), "-1 0 0 <= 0  # lower-bound(0)");
        assert_eq!(rows.last().unwrap().to_string(), "0 1 1 <= 1  # full-support");
    }

    #[test]
    fn minimal_description_examples() {
        // All-ones spec vector in dimension 3: nothing is redundant.
        let p = poly(7);
        let rows = minimal_description(&p).unwrap();
        assert_eq!(rows.len(), 7);
        assert_eq!(
            tags(&rows),
            vec![
                "lower-bound(0)",
                "lower-bound(1)",
                "lower-bound(2)",
                "upper-bound(0)",
                "upper-bound(1)",
                "upper-bound(2)",
                "full-support"
            ]
        );

        // Weight two: both signature upper bounds and the low cover go.
        let p = poly(6);
        let rows = minimal_description(&p).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(
            tags(&rows),
            vec![
                "lower-bound(0)",
                "lower-bound(1)",
                "lower-bound(2)",
                "upper-bound(0)",
                "full-support"
            ]
        );
    }

    #[test]
    fn facet_count_examples() {
        assert_eq!(facet_count(&poly(589)).unwrap(), 23);
        assert_eq!(facet_count(&poly(7)).unwrap(), 7);
        assert_eq!(facet_count(&poly(6)).unwrap(), 5);
        // d = 2: the triangle.
        assert_eq!(facet_count(&poly(3)).unwrap(), 3);
        // Maximizer: v = u_0 + u_{d-2} + u_{d-1}, here n = 2^9 + 2^8 + 1.
        assert_eq!(facet_count(&poly(769)).unwrap(), 28); // 3*10 - 2
    }

    #[test]
    fn degenerate_inputs_are_refused() {
        assert!(minimal_description(&poly(8)).is_err());
        assert!(facet_count(&poly(8)).is_err());
        let p = RevlexPolytope::from_vertex_count_with_dim(7, 5).unwrap();
        assert!(facet_count(&p).is_err());
        // The full description still exists for degenerate polytopes.
        assert_eq!(full_description(&poly(8)).len(), 2 * 4 + 3 + 1);
    }

    #[test]
    fn facet_count_matches_minimal_rows() {
        for d in 2..=10usize {
            for n in (1u64 << (d - 1)) + 1..1u64 << d {
                let p = RevlexPolytope::from_vertex_count(n).unwrap();
                assert_eq!(
                    facet_count(&p).unwrap() as usize,
                    minimal_description(&p).unwrap().len(),
                    "n={}",
                    n
                );
            }
        }
    }

    #[test]
    fn classification_table_vector() {
        let p = poly(589);
        let c = classify(&p).unwrap();
        assert_eq!(c.d1, Vec::<usize>::new());
        assert_eq!(c.d2, vec![7, 8, 9]);
        assert_eq!(c.epsilon, 0);
    }
}
