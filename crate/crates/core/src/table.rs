//! Bit-packed truth tables.
//!
//! A function on `n` variables is stored as its `2^n` values in lexicographic
//! point order: position `i` holds `f(v_i)`, where `v_i` is the binary
//! expansion of `i` read with `x_1` as the most significant bit and `x_n` as
//! the least significant one. Positions are packed 64 per word, position 0 in
//! the least significant bit of word 0. Tables shorter than a word live in the
//! low `2^n` bits of a single word and the remaining bits are kept clear.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported variable count. `2^30` bits is 128 MiB of table.
pub const MAX_VARS: u32 = 30;

const WORD_BITS: u32 = 64;
const LOG_WORD_BITS: u32 = 6;

#[inline]
pub(crate) fn word_count(n: u32) -> usize {
    if n <= LOG_WORD_BITS {
        1
    } else {
        1usize << (n - LOG_WORD_BITS)
    }
}

/// Mask of the live bits in a single-word table.
#[inline]
pub(crate) fn tail_mask(n: u32) -> u64 {
    if n >= LOG_WORD_BITS {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

fn check_vars(n: u32) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::TooManyVars { n, max: MAX_VARS });
    }
    Ok(())
}

/// Truth table of a Boolean function on `n` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

impl TruthTable {
    /// The constant-zero function.
    pub fn zeros(n: u32) -> Result<Self> {
        check_vars(n)?;
        Ok(Self {
            n,
            words: vec![0; word_count(n)],
        })
    }

    /// The constant-one function.
    pub fn ones(n: u32) -> Result<Self> {
        Ok(Self::zeros(n)?.complement())
    }

    /// Builds a table by evaluating `f` at every point index `0..2^n`.
    pub fn from_fn<F>(n: u32, f: F) -> Result<Self>
    where
        F: Fn(u64) -> bool,
    {
        check_vars(n)?;
        let len = 1u64 << n;
        let words = (0..word_count(n))
            .map(|wi| {
                let base = (wi as u64) << LOG_WORD_BITS;
                let live = (len - base).min(WORD_BITS as u64);
                (0..live).fold(0u64, |acc, b| acc | ((f(base + b) as u64) << b))
            })
            .collect();
        Ok(Self { n, words })
    }

    /// Wraps packed words. Bits beyond `2^n` are cleared.
    pub fn from_words(n: u32, mut words: Vec<u64>) -> Result<Self> {
        check_vars(n)?;
        if words.len() != word_count(n) {
            return Err(Error::NotPowerOfTwo {
                len: words.len() * WORD_BITS as usize,
            });
        }
        words[0] &= tail_mask(n);
        Ok(Self { n, words })
    }

    /// Parses a string of `'0'`/`'1'` characters, position 0 first.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let n = table_vars(bytes.len())?;
        let mut words = vec![0u64; word_count(n)];
        for (pos, &b) in bytes.iter().enumerate() {
            match b {
                b'0' => {}
                b'1' => words[pos >> LOG_WORD_BITS] |= 1u64 << (pos & 63),
                _ => {
                    return Err(Error::InvalidChar {
                        pos,
                        ch: s[pos..].chars().next().unwrap_or('?'),
                    })
                }
            }
        }
        Ok(Self { n, words })
    }

    /// Parses a `0x`-prefixed hex string. Each digit carries four table
    /// positions, the first position in the digit's most significant bit.
    pub fn from_hex(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .ok_or(Error::MissingHexPrefix)?;
        let n = table_vars(digits.len() * 4)?;
        let mut words = vec![0u64; word_count(n)];
        for (d, ch) in digits.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or(Error::InvalidChar { pos: d + 2, ch })? as u64;
            for j in 0..4 {
                let pos = 4 * d + j;
                let bit = (nibble >> (3 - j)) & 1;
                words[pos >> LOG_WORD_BITS] |= bit << (pos & 63);
            }
        }
        Ok(Self { n, words })
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len())
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    /// Hex rendering; `None` when the table is shorter than one digit (n < 2).
    pub fn to_hex(&self) -> Option<String> {
        if self.n < 2 {
            return None;
        }
        let mut out = String::with_capacity(2 + (self.len() / 4) as usize);
        out.push_str("0x");
        for d in 0..self.len() / 4 {
            let nibble = (0..4).fold(0u32, |acc, j| (acc << 1) | self.bit(4 * d + j) as u32);
            out.push(char::from_digit(nibble, 16).unwrap());
        }
        Some(out)
    }

    /// Number of variables.
    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of table positions, `2^n`.
    #[inline]
    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    /// Always false; a table has at least one position.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Value at point index `i`. Panics if `i >= 2^n`.
    #[inline]
    pub fn bit(&self, i: u64) -> bool {
        assert!(i < self.len(), "index {i} out of range for n = {}", self.n);
        (self.words[(i >> LOG_WORD_BITS) as usize] >> (i & 63)) & 1 == 1
    }

    /// Value at a point given as a coordinate vector.
    pub fn eval(&self, x: &PointVector) -> Result<bool> {
        self.check_same(x.n)?;
        Ok(self.bit(x.index()))
    }

    /// Hamming weight: the number of ones.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.n > 0 && self.weight() == self.len() / 2
    }

    /// Hamming distance, `wt(self + other)`.
    pub fn distance(&self, other: &Self) -> Result<u64> {
        self.check_same(other.n)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as u64)
            .sum())
    }

    /// Pointwise sum mod 2.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_same(other.n)?;
        Ok(Self {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Every entry flipped.
    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        words[0] &= tail_mask(self.n);
        Self { n: self.n, words }
    }

    /// Entries in reverse order: position `i` takes position `2^n - 1 - i`.
    pub fn reverse(&self) -> Self {
        let words = if self.n >= LOG_WORD_BITS {
            self.words.iter().rev().map(|w| w.reverse_bits()).collect()
        } else {
            let live = 1u32 << self.n;
            vec![self.words[0].reverse_bits() >> (WORD_BITS - live)]
        };
        Self { n: self.n, words }
    }

    /// Juxtaposition `self || right`, a table on `n + 1` variables whose
    /// first half is `self`.
    pub fn concat(&self, right: &Self) -> Result<Self> {
        self.check_same(right.n)?;
        check_vars(self.n + 1)?;
        let words = if self.n >= LOG_WORD_BITS {
            let mut words = Vec::with_capacity(2 * self.words.len());
            words.extend_from_slice(&self.words);
            words.extend_from_slice(&right.words);
            words
        } else {
            vec![self.words[0] | (right.words[0] << (1u32 << self.n))]
        };
        Ok(Self {
            n: self.n + 1,
            words,
        })
    }

    /// Left and right halves; the inverse of [`concat`](Self::concat).
    pub fn halves(&self) -> Result<(Self, Self)> {
        if self.n == 0 {
            return Err(Error::NoHalves);
        }
        let m = self.n - 1;
        if m >= LOG_WORD_BITS {
            let (l, r) = self.words.split_at(self.words.len() / 2);
            Ok((
                Self {
                    n: m,
                    words: l.to_vec(),
                },
                Self {
                    n: m,
                    words: r.to_vec(),
                },
            ))
        } else {
            let w = self.words[0];
            let mask = tail_mask(m);
            Ok((
                Self {
                    n: m,
                    words: vec![w & mask],
                },
                Self {
                    n: m,
                    words: vec![(w >> (1u32 << m)) & mask],
                },
            ))
        }
    }

    fn check_same(&self, other: u32) -> Result<()> {
        if self.n != other {
            return Err(Error::VarCountMismatch {
                left: self.n,
                right: other,
            });
        }
        Ok(())
    }
}

fn table_vars(len: usize) -> Result<u32> {
    if len == 0 {
        return Err(Error::Empty);
    }
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len });
    }
    let n = len.trailing_zeros();
    check_vars(n)?;
    Ok(n)
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 8 {
            write!(f, "TruthTable(n={}, {})", self.n, self.to_bitstring())
        } else {
            write!(f, "TruthTable(n={}, wt={})", self.n, self.weight())
        }
    }
}

/// Weight of the point `v_i`, i.e. the popcount of `i`.
pub fn point_weight(i: u64, n: u32) -> Result<u32> {
    check_vars(n)?;
    if i >= 1u64 << n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(i.count_ones())
}

/// A point `(x_1, ..., x_n)` of the n-dimensional space over GF(2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PointVector {
    n: u32,
    index: u64,
}

impl PointVector {
    /// The `i`-th point in lexicographic order.
    pub fn from_index(i: u64, n: u32) -> Result<Self> {
        point_weight(i, n)?;
        Ok(Self { n, index: i })
    }

    /// Builds a point from `(x_1, ..., x_n)`.
    pub fn from_coords(coords: &[bool]) -> Result<Self> {
        let n = coords.len() as u32;
        check_vars(n)?;
        let index = coords.iter().fold(0u64, |acc, &c| (acc << 1) | c as u64);
        Ok(Self { n, index })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Lexicographic position of this point.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Coordinate `x_j` for `1 <= j <= n`.
    pub fn coord(&self, j: u32) -> bool {
        assert!((1..=self.n).contains(&j), "coordinate x_{j} out of range");
        (self.index >> (self.n - j)) & 1 == 1
    }

    pub fn coords(&self) -> Vec<bool> {
        (1..=self.n).map(|j| self.coord(j)).collect()
    }

    pub fn weight(&self) -> u32 {
        self.index.count_ones()
    }
}
