//! Fixed-width bit vectors used for Pauli support masks and GF(2) row operations.
//!
//! The backing store is a `SmallVec` with one inline word, so everything up to
//! 64 qubits lives on the stack; larger systems spill to the heap transparently.

use smallvec::{smallvec, SmallVec};

const WORD_BITS: usize = 64;

/// A bit vector of fixed length backed by packed 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: SmallVec<[u64; 1]>,
}

impl BitVec {
    /// An all-zero vector of `len` bits.
    pub fn zeros(len: usize) -> Self {
        let n_words = len.div_ceil(WORD_BITS).max(1);
        BitVec {
            len,
            words: smallvec![0; n_words],
        }
    }

    /// A vector with exactly the listed bits set.
    ///
    /// Panics if an index is out of range; callers validate indices first.
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the overlap `popcount(self & other) mod 2`.
    ///
    /// This is the workhorse behind symplectic inner products and GF(2)
    /// matrix-vector products, so it avoids allocating the intermediate AND.
    pub fn overlap_parity(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(other.words.iter())
            .fold(0u64, |acc, (a, b)| acc ^ (a & b))
            .count_ones()
            & 1
            == 1
    }

    /// Whether the two vectors share any set bit.
    pub fn intersects(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(other.words.iter()).any(|(a, b)| a & b != 0)
    }

    /// In-place XOR; both vectors must have the same length.
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= b;
        }
    }

    /// In-place AND with a mask of the same length.
    pub fn and_assign(&mut self, mask: &BitVec) {
        debug_assert_eq!(self.len, mask.len);
        for (a, b) in self.words.iter_mut().zip(mask.words.iter()) {
            *a &= b;
        }
    }

    /// A copy restricted to the masked positions.
    pub fn and(&self, mask: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.and_assign(mask);
        out
    }

    /// Index of the lowest set bit, if any.
    pub fn lowest_set(&self) -> Option<usize> {
        for (w_idx, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(w_idx * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterate over the indices of set bits in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w_idx, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(w_idx * WORD_BITS + bit)
                }
            })
        })
    }

    /// The vector as a single machine word when it fits in 64 bits.
    pub fn as_u64(&self) -> Option<u64> {
        if self.len <= WORD_BITS {
            Some(self.words[0])
        } else {
            None
        }
    }
}
