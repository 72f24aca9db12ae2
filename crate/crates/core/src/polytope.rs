//! Revlex-initial 0/1-polytopes: construction, block structure, and exact
//! linear optimization.
//!
//! For a nonzero spec vector `v in {0,1}^d`, the polytope is the convex hull
//! of all 0/1-vectors that strictly precede `v` in revlex order; these are
//! exactly the binary representations of `0, ..., n-1` where `n` is the
//! knapsack number of `v`. Optimization never enumerates vertices: a linear
//! function is maximized by inspecting the blocks of the vertex set, one
//! cube face per one-position of `v`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::bits::{BitVector01, Signature};
use crate::{Error, Result, MAX_DIM};

/// Number of bits needed to write `n` in binary (`0` for `n = 0`).
fn bit_length(n: u64) -> usize {
    (64 - n.leading_zeros()) as usize
}

/// The convex hull of the first `n` points of the revlex order on `{0,1}^d`.
#[derive(Clone, Debug)]
pub struct RevlexPolytope {
    v: BitVector01,
    n: u64,
    sig: Signature,
    dim: usize,
    blocks: Vec<Block>,
}

/// One block of the vertex set: a cube face of dimension `cube_dim`.
///
/// Block `q` (1-based) consists of the vertices that agree with the spec
/// vector above `s_q`, are zero at `s_q`, and are free below; as knapsack
/// numbers this is the interval starting at `first_vertex` of length
/// `2^cube_dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    /// 1-based block number.
    pub q: usize,
    /// Dimension of the cube face, `s_q`.
    pub cube_dim: usize,
    /// Smallest vertex index in the block.
    pub first_vertex: u64,
}

impl Block {
    /// Number of vertices in the block.
    pub fn vertex_count(self) -> u64 {
        1 << self.cube_dim
    }

    /// True if vertex index `m` lies in this block.
    pub fn contains_index(self, m: u64) -> bool {
        m >= self.first_vertex && m - self.first_vertex < self.vertex_count()
    }
}

impl RevlexPolytope {
    /// The polytope on a given nonzero spec vector.
    pub fn from_spec_vector(v: BitVector01) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroSpecVector);
        }
        let n = v.to_index();
        let sig = v.signature();
        let dim = bit_length(n - 1);
        let mut blocks = Vec::with_capacity(sig.weight());
        let mut first = 0u64;
        for (idx, &s) in sig.ones().iter().enumerate() {
            blocks.push(Block { q: idx + 1, cube_dim: s, first_vertex: first });
            first += 1u64 << s;
        }
        debug_assert_eq!(first, n);
        Ok(RevlexPolytope { v, n, sig, dim, blocks })
    }

    /// The polytope with vertices `0, ..., n-1` in the smallest ambient
    /// dimension, i.e. with the spec vector the plain binary form of `n`.
    pub fn from_vertex_count(n: u64) -> Result<Self> {
        if n == 0 || bit_length(n) > MAX_DIM {
            return Err(Error::BadVertexCount(n));
        }
        Self::from_spec_vector(BitVector01::from_index(n, bit_length(n))?)
    }

    /// Like [`from_vertex_count`](Self::from_vertex_count), but in a caller
    /// supplied ambient dimension `d >= bit_length(n)`.
    pub fn from_vertex_count_with_dim(n: u64, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadVertexCount(n));
        }
        if d < bit_length(n) {
            return Err(Error::IndexOutOfRange { n, d });
        }
        Self::from_spec_vector(BitVector01::from_index(n, d)?)
    }

    /// The spec vector `v`.
    pub fn spec_vector(&self) -> BitVector01 {
        self.v
    }

    /// Number of vertices.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Ambient dimension.
    pub fn d(&self) -> usize {
        self.v.len()
    }

    /// Dimension of the polytope: the smallest `j` with `n <= 2^j`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True if the polytope is full-dimensional in its ambient space.
    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.d()
    }

    /// Signature of the spec vector.
    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// The blocks of the vertex set, in order.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Lazily enumerates the vertices in revlex (= index) order.
    pub fn vertices(&self) -> impl Iterator<Item = BitVector01> + '_ {
        let d = self.d();
        (0..self.n).map(move |m| BitVector01::from_index(m, d).expect("vertex fits ambient"))
    }

    /// True if `x` is a vertex, i.e. a 0/1-point of the right length that
    /// precedes the spec vector in revlex order.
    pub fn contains(&self, x: BitVector01) -> bool {
        x.len() == self.d() && x.to_index() < self.n
    }

    /// 1-based number of the block containing the vertex `x`.
    pub fn block_of(&self, x: BitVector01) -> Result<usize> {
        if !self.contains(x) {
            return Err(Error::NotAVertex(x.to_string()));
        }
        let m = x.to_index();
        let q = self
            .blocks
            .iter()
            .find(|b| b.contains_index(m))
            .expect("blocks partition the vertex set")
            .q;
        Ok(q)
    }

    /// Maximizes `c . x` over the vertex set without enumerating it.
    ///
    /// For each block `q` the best vertex contributes the spec coordinates
    /// above `s_q` plus every positive `c_i` below `s_q`; the overall optimum
    /// is the best block. Returns the value and one optimal vertex: the one
    /// from the smallest optimal block with zeros at all `c_i <= 0`.
    pub fn maximize(&self, c: &[BigRational]) -> Result<(BigRational, BitVector01)> {
        let d = self.d();
        if c.len() != d {
            return Err(Error::BadCoefficientCount { got: c.len(), expected: d });
        }
        // pos_prefix[i] = sum of positive c_j for j < i
        let mut pos_prefix = Vec::with_capacity(d + 1);
        pos_prefix.push(BigRational::zero());
        for ci in c {
            let mut next = pos_prefix.last().unwrap().clone();
            if ci > &BigRational::zero() {
                next += ci;
            }
            pos_prefix.push(next);
        }

        let mut best: Option<(BigRational, usize)> = None;
        let mut sig_prefix = BigRational::zero();
        for (idx, &s_q) in self.sig.ones().iter().enumerate() {
            let value = &sig_prefix + &pos_prefix[s_q];
            match &best {
                Some((b, _)) if *b >= value => {}
                _ => best = Some((value, idx + 1)),
            }
            sig_prefix += &c[s_q];
        }
        let (value, q) = best.expect("spec vector has at least one one-position");

        let mut bits = 0u64;
        for &s_p in &self.sig.ones()[..q - 1] {
            bits |= 1 << s_p;
        }
        let s_q = self.sig.s(q);
        for (i, ci) in c.iter().enumerate().take(s_q) {
            if ci > &BigRational::zero() {
                bits |= 1 << i;
            }
        }
        let argmax = BitVector01::from_index(bits, d)?;
        debug_assert!(self.contains(argmax));
        Ok((value, argmax))
    }
}

impl Serialize for RevlexPolytope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RevlexPolytope", 6)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("d", &self.d())?;
        st.serialize_field("v", &self.v.to_string())?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("signature", self.sig.ones())?;
        let block_dims: Vec<usize> = self.blocks.iter().map(|b| b.cube_dim).collect();
        st.serialize_field("block_dims", &block_dims)?;
        st.end()
    }
}
