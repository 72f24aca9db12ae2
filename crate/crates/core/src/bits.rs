//! 0/1-vectors of fixed length, their signatures, and the revlex order.
//!
//! A vector `x in {0,1}^d` is stored as the knapsack number
//! `sum_i x_i * 2^i` in a `u64`, so `d` is capped at [`MAX_DIM`]. Coordinate
//! `x_0` is the least significant bit; the text form prints `x_0` first, so
//! `(1,0,1,1,0,0,1,0,0,1)` renders as `"1011001001"` and has index 589.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result, MAX_DIM};

/// A 0/1-vector of fixed length `d <= MAX_DIM`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector01 {
    d: usize,
    bits: u64,
}

impl BitVector01 {
    /// Builds the binary representation of `n` as a vector of length `d`.
    ///
    /// Fails if `d` is out of range or `n` needs more than `d` bits.
    pub fn from_index(n: u64, d: usize) -> Result<Self> {
        if d == 0 || d > MAX_DIM {
            return Err(Error::DimensionOutOfRange(d));
        }
        if n >> d != 0 {
            return Err(Error::IndexOutOfRange { n, d });
        }
        Ok(BitVector01 { d, bits: n })
    }

    /// The knapsack number `sum_i x_i * 2^i`.
    pub fn to_index(self) -> u64 {
        self.bits
    }

    /// Length of the vector.
    pub fn len(self) -> usize {
        self.d
    }

    /// True if all coordinates are zero.
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Coordinate `x_i`.
    ///
    /// # Panics
    /// Panics if `i >= len()`.
    pub fn get(self, i: usize) -> bool {
        assert!(i < self.d, "coordinate {} out of range for length {}", i, self.d);
        (self.bits >> i) & 1 == 1
    }

    /// Returns a copy with coordinate `i` flipped.
    pub fn flip(self, i: usize) -> Self {
        assert!(i < self.d, "coordinate {} out of range for length {}", i, self.d);
        BitVector01 { d: self.d, bits: self.bits ^ (1 << i) }
    }

    /// Number of one-coordinates.
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Iterates over the coordinates `x_0, x_1, ..., x_{d-1}`.
    pub fn iter(self) -> impl Iterator<Item = bool> {
        (0..self.d).map(move |i| (self.bits >> i) & 1 == 1)
    }

    /// The same vector zero-extended to length `d >= len()`.
    pub fn zero_extend(self, d: usize) -> Result<Self> {
        if d < self.d {
            return Err(Error::IndexOutOfRange { n: self.bits, d });
        }
        BitVector01::from_index(self.bits, d)
    }

    /// Positions of ones (decreasing) and zeros (increasing).
    pub fn signature(self) -> Signature {
        let ones: Vec<usize> = (0..self.d).rev().filter(|&i| self.get(i)).collect();
        let zeros: Vec<usize> = (0..self.d).filter(|&i| !self.get(i)).collect();
        Signature { d: self.d, ones, zeros }
    }

    /// The strict reverse-lexicographic order.
    ///
    /// `x` precedes `y` iff they differ and `x_i < y_i` at the largest index
    /// `i` where they differ. Errors if the lengths differ.
    pub fn rlex_less(self, other: Self) -> Result<bool> {
        if self.d != other.d {
            return Err(Error::LengthMismatch(self.d, other.d));
        }
        for i in (0..self.d).rev() {
            if self.get(i) != other.get(i) {
                return Ok(other.get(i));
            }
        }
        Ok(false)
    }
}

impl fmt::Display for BitVector01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector01({})", self)
    }
}

impl FromStr for BitVector01 {
    type Err = Error;

    /// Parses the text form: coordinate `x_0` first, characters `0`/`1`.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_DIM {
            return Err(Error::Parse(format!(
                "bit string must have between 1 and {} characters, got {:?}",
                MAX_DIM, s
            )));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '1' => bits |= 1 << i,
                '0' => {}
                other => {
                    return Err(Error::Parse(format!(
                        "invalid character {:?} in bit string {:?}",
                        other, s
                    )))
                }
            }
        }
        BitVector01::from_index(bits, s.len())
    }
}

impl std::ops::BitXor for BitVector01 {
    type Output = BitVector01;

    /// Coordinatewise xor; both operands must have the same length.
    fn bitxor(self, rhs: Self) -> Self {
        assert_eq!(self.d, rhs.d, "xor of bit vectors of different lengths");
        BitVector01 { d: self.d, bits: self.bits ^ rhs.bits }
    }
}

/// One- and zero-positions of a 0/1-vector.
///
/// `ones` lists the one-positions `s_1 > s_2 > ... > s_w` in decreasing
/// order; `zeros` lists the complementary positions in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    d: usize,
    ones: Vec<usize>,
    zeros: Vec<usize>,
}

impl Signature {
    /// Length of the underlying vector.
    pub fn len(&self) -> usize {
        self.d
    }

    /// One-positions, decreasing. `ones()[q-1]` is `s_q`.
    pub fn ones(&self) -> &[usize] {
        &self.ones
    }

    /// Zero-positions, increasing.
    pub fn zeros(&self) -> &[usize] {
        &self.zeros
    }

    /// Number of one-positions.
    pub fn weight(&self) -> usize {
        self.ones.len()
    }

    /// `s_q` for `1 <= q <= weight()`.
    pub fn s(&self, q: usize) -> usize {
        self.ones[q - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector01 {
        s.parse().unwrap()
    }

    #[test]
    fn index_round_trip() {
        let v = BitVector01::from_index(589, 10).unwrap();
        assert_eq!(v.to_string(), "1011001001");
        assert_eq!(v.to_index(), 589);
        assert_eq!(bv("1011001001"), v);
        for n in 0..256 {
            let x = BitVector01::from_index(n, 8).unwrap();
            assert_eq!(x.to_index(), n);
            assert_eq!(x.to_string().parse::<BitVector01>().unwrap(), x);
        }
    }

    #[test]
    fn from_index_ranges() {
        assert!(BitVector01::from_index(0, 0).is_err());
        assert!(BitVector01::from_index(0, 63).is_err());
        assert!(BitVector01::from_index(8, 3).is_err());
        assert!(BitVector01::from_index(7, 3).is_ok());
        assert!(BitVector01::from_index(1 << 61, 62).is_ok());
    }

    #[test]
    fn parse_rejects_junk() {
        assert!("".parse::<BitVector01>().is_err());
        assert!("10x1".parse::<BitVector01>().is_err());
    }

    #[test]
    fn signature_of_table_vector() {
        let sig = bv("1011001001").signature();
        assert_eq!(sig.ones(), &[9, 6, 3, 2, 0]);
        assert_eq!(sig.zeros(), &[1, 4, 5, 7, 8]);
        assert_eq!(sig.weight(), 5);
        assert_eq!(sig.s(1), 9);
        assert_eq!(sig.s(5), 0);
    }

    #[test]
    fn signature_partitions_positions() {
        for d in 1..=8usize {
            for n in 0..1u64 << d {
                let sig = BitVector01::from_index(n, d).unwrap().signature();
                let mut all: Vec<usize> = sig.ones().to_vec();
                all.extend_from_slice(sig.zeros());
                all.sort_unstable();
                assert_eq!(all, (0..d).collect::<Vec<_>>());
                assert!(sig.ones().windows(2).all(|w| w[0] > w[1]));
                assert!(sig.zeros().windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn rlex_examples() {
        // (1,1,0) before (0,0,1): they differ at index 2, where the second is 1.
        assert!(bv("110").rlex_less(bv("001")).unwrap());
        assert!(!bv("001").rlex_less(bv("110")).unwrap());
        // Not a strict order on equal vectors.
        assert!(!bv("101").rlex_less(bv("101")).unwrap());
        // Vertex 588 precedes the spec vector of P(589).
        let v = BitVector01::from_index(589, 10).unwrap();
        let x = BitVector01::from_index(588, 10).unwrap();
        assert!(x.rlex_less(v).unwrap());
        assert!(bv("110").rlex_less(bv("0011").zero_extend(4).unwrap()).is_err());
    }

    #[test]
    fn rlex_is_the_integer_order() {
        // The revlex order must agree with comparison of knapsack numbers.
        for d in 1..=8usize {
            for a in 0..1u64 << d {
                for b in 0..1u64 << d {
                    let x = BitVector01::from_index(a, d).unwrap();
                    let y = BitVector01::from_index(b, d).unwrap();
                    assert_eq!(x.rlex_less(y).unwrap(), a < b, "d={} a={} b={}", d, a, b);
                }
            }
        }
    }

    #[test]
    fn flip_and_xor() {
        let x = bv("1010");
        assert_eq!(x.flip(0), bv("0010"));
        assert_eq!(x ^ bv("1000"), bv("0010"));
        assert_eq!(x.weight(), 2);
    }
}
