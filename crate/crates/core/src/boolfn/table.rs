//! Dense truth tables and their file formats.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::function::BooleanFunction;
use super::point::Point;
use crate::error::{Error, Result};

/// Largest arity a [`TruthTable`] will materialise.
pub const MAX_TABLE_ARITY: usize = 24;

const MAGIC: &[u8] = b"BFTT1\n";

/// All `2^n` values of a function, one bit per point, packed into words.
/// Bit `i` of the table is the value at the point whose index is `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 || arity > MAX_TABLE_ARITY {
        return Err(Error::ArityOutOfRange { arity, max: MAX_TABLE_ARITY });
    }
    Ok(())
}

impl TruthTable {
    /// The constant-0 table.
    pub fn zeros(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        let words = vec![0; (1usize << arity).div_ceil(64)];
        Ok(TruthTable { arity, words })
    }

    /// Table of a function given on `n ≤ 6` as a 64-bit mask (bit `i` = value at index `i`).
    pub fn from_mask(arity: usize, mask: u64) -> Result<Self> {
        if arity > 6 {
            return Err(Error::ArityOutOfRange { arity, max: 6 });
        }
        let mut t = Self::zeros(arity)?;
        let len = 1u32 << arity;
        t.words[0] = if len == 64 { mask } else { mask & ((1u64 << len) - 1) };
        Ok(t)
    }

    pub fn from_ones<I: IntoIterator<Item = u64>>(arity: usize, ones: I) -> Result<Self> {
        let mut t = Self::zeros(arity)?;
        for i in ones {
            if i >= t.len() {
                return Err(Error::PointOutOfRange { index: i, arity });
            }
            t.set(i, true);
        }
        Ok(t)
    }

    pub fn from_function<F: BooleanFunction + ?Sized>(f: &F) -> Result<Self> {
        let arity = f.arity();
        let mut t = Self::zeros(arity)?;
        for i in 0..t.len() {
            if f.eval(Point::from_bits(i, arity)) {
                t.set(i, true);
            }
        }
        Ok(t)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of points, `2^n`.
    pub fn len(&self) -> u64 {
        1 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, index: u64) -> bool {
        self.words[(index >> 6) as usize] >> (index & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: u64, value: bool) {
        let w = &mut self.words[(index >> 6) as usize];
        let b = 1u64 << (index & 63);
        if value {
            *w |= b;
        } else {
            *w &= !b;
        }
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// The low word; the whole table when `n ≤ 6`.
    pub fn mask(&self) -> u64 {
        self.words[0]
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Indices of the 1-inputs in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(((k as u64) << 6) | t)
            })
        })
    }

    /// Number of points on which the two tables differ.
    pub fn hamming(&self, other: &TruthTable) -> Result<u64> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(self.words.iter().zip(&other.words).map(|(a, b)| (a ^ b).count_ones() as u64).sum())
    }

    /// Write the BFTT1 form: magic, decimal arity line, then `ceil(2^n/8)`
    /// bytes with point indices LSB-first inside each byte.
    pub fn write_bftt1<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        writeln!(w, "{}", self.arity)?;
        let nbytes = self.len().div_ceil(8) as usize;
        let bytes: Vec<u8> =
            self.words.iter().flat_map(|w| w.to_le_bytes()).take(nbytes).collect();
        w.write_all(&bytes)?;
        Ok(())
    }

    pub fn read_bftt1<R: BufRead>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 6];
        r.read_exact(&mut magic).map_err(|_| Error::Parse("truncated BFTT1 header".into()))?;
        if magic != MAGIC {
            return Err(Error::Parse("missing BFTT1 magic".into()));
        }
        let mut line = String::new();
        r.read_line(&mut line)?;
        let arity: usize = line
            .trim_end_matches('\n')
            .parse()
            .map_err(|_| Error::Parse(format!("bad arity line {line:?}")))?;
        let mut t = Self::zeros(arity)?;
        let nbytes = t.len().div_ceil(8) as usize;
        let mut bytes = vec![0u8; nbytes];
        r.read_exact(&mut bytes).map_err(|_| Error::Parse("truncated BFTT1 body".into()))?;
        if r.read(&mut [0u8; 1])? != 0 {
            return Err(Error::Parse("trailing bytes after BFTT1 body".into()));
        }
        if t.len() < 8 && bytes[0] >> t.len() != 0 {
            return Err(Error::Parse("padding bits set in BFTT1 body".into()));
        }
        for (k, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            t.words[k] = u64::from_le_bytes(buf);
        }
        Ok(t)
    }

    pub fn to_json(&self) -> TruthTableJson {
        TruthTableJson { n: self.arity, ones: self.ones().collect() }
    }

    pub fn from_json(j: &TruthTableJson) -> Result<Self> {
        Self::from_ones(j.n, j.ones.iter().copied())
    }
}

/// JSON form `{"n": .., "ones": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTableJson {
    pub n: usize,
    pub ones: Vec<u64>,
}

impl BooleanFunction for TruthTable {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, x: Point) -> bool {
        debug_assert_eq!(x.arity(), self.arity);
        self.get(x.bits())
    }
}

impl std::fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.arity <= 6 {
            write!(f, "TruthTable(n={}, {:#x})", self.arity, self.words[0])
        } else {
            write!(f, "TruthTable(n={}, {} ones)", self.arity, self.count_ones())
        }
    }
}
