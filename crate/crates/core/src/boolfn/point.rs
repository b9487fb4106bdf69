use std::fmt;

use crate::error::{Error, Result};

/// Largest arity for which points are packed into a single machine word.
pub const MAX_ARITY: usize = 63;

/// A point of `{0,1}^n`, stored little-endian: coordinate `i` (1-based) is
/// bit `i - 1` of the index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    bits: u64,
    arity: u8,
    weight: u8,
}

#[inline]
pub fn full_mask(arity: usize) -> u64 {
    if arity >= 64 {
        u64::MAX
    } else {
        (1u64 << arity) - 1
    }
}

impl Point {
    pub fn new(bits: u64, arity: usize) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::ArityOutOfRange { arity, max: MAX_ARITY });
        }
        if bits & !full_mask(arity) != 0 {
            return Err(Error::PointOutOfRange { index: bits, arity });
        }
        Ok(Self::from_bits(bits, arity))
    }

    /// Caller guarantees `bits < 2^arity` and `arity <= MAX_ARITY`.
    #[inline]
    pub fn from_bits(bits: u64, arity: usize) -> Self {
        debug_assert!(arity <= MAX_ARITY && bits & !full_mask(arity) == 0);
        Point { bits, arity: arity as u8, weight: bits.count_ones() as u8 }
    }

    pub fn zero(arity: usize) -> Self {
        Self::from_bits(0, arity)
    }

    pub fn ones(arity: usize) -> Self {
        Self::from_bits(full_mask(arity), arity)
    }

    /// Parse a 0/1 string whose first character is coordinate 1.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("bad point string {s:?}"))),
            }
        }
        Self::new(bits, s.chars().count())
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn arity(self) -> usize {
        self.arity as usize
    }

    #[inline]
    pub fn weight(self) -> usize {
        self.weight as usize
    }

    /// Value of coordinate `i` (1-based).
    pub fn coord(self, i: usize) -> bool {
        self.bits >> (i - 1) & 1 == 1
    }

    #[inline]
    pub fn union(self, other: Point) -> Point {
        debug_assert_eq!(self.arity, other.arity);
        Point::from_bits(self.bits | other.bits, self.arity())
    }

    #[inline]
    pub fn intersection(self, other: Point) -> Point {
        debug_assert_eq!(self.arity, other.arity);
        Point::from_bits(self.bits & other.bits, self.arity())
    }

    #[inline]
    pub fn complement(self) -> Point {
        Point::from_bits(!self.bits & full_mask(self.arity()), self.arity())
    }

    /// Coordinatewise `self ≤ other`.
    #[inline]
    pub fn is_below(self, other: Point) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Point) -> bool {
        self.bits & other.bits == 0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.arity() {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_is_little_endian() {
        let p = Point::parse("100").unwrap();
        assert_eq!(p.bits(), 1);
        assert!(p.coord(1));
        assert_eq!(p.to_string(), "100");
        assert_eq!(Point::parse("0011").unwrap().bits(), 0b1100);
        assert!(Point::parse("01x").is_err());
        assert!(Point::new(8, 3).is_err());
        assert!(Point::new(0, 64).is_err());
    }

    proptest! {
        #[test]
        fn weight_and_set_ops(a in any::<u64>(), b in any::<u64>(), n in 1usize..=63) {
            let m = full_mask(n);
            let (x, y) = (Point::from_bits(a & m, n), Point::from_bits(b & m, n));
            prop_assert_eq!(x.weight(), (a & m).count_ones() as usize);
            prop_assert_eq!(x.union(y).bits(), (a | b) & m);
            prop_assert_eq!(x.intersection(y).bits(), a & b & m);
            prop_assert_eq!(x.complement().complement(), x);
            prop_assert_eq!(x.weight() + x.complement().weight(), n);
            prop_assert!(x.intersection(y).is_below(x));
            prop_assert!(x.is_disjoint(x.complement()));
        }
    }
}
