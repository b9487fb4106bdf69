//! Hamming-weight bands, banded downsets and uniform band sampling.

use rand::seq::index;
use rand::Rng;

use super::point::{Point, MAX_ARITY};
use crate::error::{Error, Result};

/// Default cap on the size of an enumerated downset.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 28;

/// Inclusive weight interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Band {
    lo: usize,
    hi: usize,
}

impl Band {
    pub fn new(lo: usize, hi: usize, arity: usize) -> Result<Self> {
        if lo > hi || hi > arity {
            return Err(Error::InvalidBand { lo, hi, arity });
        }
        Ok(Band { lo, hi })
    }

    pub fn full(arity: usize) -> Self {
        Band { lo: 0, hi: arity }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn contains(&self, weight: usize) -> bool {
        self.lo <= weight && weight <= self.hi
    }

    pub fn width(&self) -> usize {
        self.hi - self.lo
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEps(eps))
    }
}

/// Half-width of the middle layers: `sqrt(2n·ln(4/ε))`, or `sqrt(2n·ln(4n/ε))`
/// for the widened band used by the sampling testers.
pub fn band_half_width(n: usize, eps: f64, widened: bool) -> f64 {
    let nf = n as f64;
    let arg = if widened { 4.0 * nf / eps } else { 4.0 / eps };
    (nf * 2.0 * arg.ln()).sqrt()
}

/// The middle layers `[n/2 - T, n/2 + T]`, rounded inward and clamped to `[0, n]`.
pub fn mid_band(n: usize, eps: f64, widened: bool) -> Result<Band> {
    check_eps(eps)?;
    if n == 0 {
        return Err(Error::ArityOutOfRange { arity: 0, max: MAX_ARITY });
    }
    let t = band_half_width(n, eps, widened);
    let half = n as f64 / 2.0;
    let lo = (half - t).ceil().max(0.0) as usize;
    let hi = ((half + t).floor() as usize).min(n);
    Band::new(lo, hi, n)
}

/// `C(n, k)` for `n ≤ 127`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of points `y ≤ x` with `|y|` in the band, given `|x| = k`.
pub fn down_band_size(k: usize, band: Band) -> u128 {
    if k < band.lo {
        return 0;
    }
    (band.lo..=band.hi.min(k)).map(|j| binomial(k, j)).sum()
}

fn set_positions(bits: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    let mut b = bits;
    while b != 0 {
        out.push(b.trailing_zeros() as u8);
        b &= b - 1;
    }
    out
}

#[inline]
fn deposit(mask: u64, positions: &[u8]) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        out |= 1 << positions[m.trailing_zeros() as usize];
        m &= m - 1;
    }
    out
}

/// Iterator over the banded downset of a point, by increasing weight.
#[derive(Debug, Clone)]
pub struct DownBand {
    positions: Vec<u8>,
    arity: usize,
    weight: usize,
    max_weight: usize,
    comb: u64,
    remaining: u128,
}

impl DownBand {
    /// Number of points still to be yielded.
    pub fn remaining(&self) -> u128 {
        self.remaining
    }
}

impl Iterator for DownBand {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if self.remaining == 0 {
            return None;
        }
        let k = self.positions.len();
        let out = Point::from_bits(deposit(self.comb, &self.positions), self.arity);
        self.remaining -= 1;
        if self.remaining > 0 {
            // Gosper's hack; on overflow of the k-bit window, move up one weight.
            let c = self.comb;
            let next = if c == 0 {
                None
            } else {
                let u = c & c.wrapping_neg();
                let v = c + u;
                let n = v + (((v ^ c) / u) >> 2);
                (k == 64 || n < 1u64 << k).then_some(n)
            };
            self.comb = match next {
                Some(n) => n,
                None => {
                    self.weight += 1;
                    debug_assert!(self.weight <= self.max_weight);
                    (1u64 << self.weight) - 1
                }
            };
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

impl ExactSizeIterator for DownBand {}

/// All `y ≤ x` with `|y|` in `band`, each exactly once. Refuses with
/// [`Error::EnumerationCap`] when more than `cap` points would be produced.
pub fn enumerate_down_band(x: Point, band: Band, cap: u64) -> Result<DownBand> {
    let k = x.weight();
    let total = down_band_size(k, band);
    if total > cap as u128 {
        return Err(Error::EnumerationCap { predicted: total, cap });
    }
    let weight = band.lo.min(k);
    Ok(DownBand {
        positions: set_positions(x.bits()),
        arity: x.arity(),
        weight,
        max_weight: band.hi.min(k),
        comb: if weight == 0 { 0 } else { (1u64 << weight) - 1 },
        remaining: total,
    })
}

/// Uniform `j`-subset of `{0..k}` where `j` is drawn with probability
/// proportional to `C(k, j)` over `j ∈ [lo, hi]`. Returns `None` when empty.
fn sample_weighted_subset<R: Rng + ?Sized>(k: usize, lo: usize, hi: usize, rng: &mut R) -> Option<u64> {
    let hi = hi.min(k);
    if lo > hi {
        return None;
    }
    let total: u128 = (lo..=hi).map(|j| binomial(k, j)).sum();
    let mut r = rng.gen_range(0..total);
    let mut j = lo;
    loop {
        let c = binomial(k, j);
        if r < c {
            break;
        }
        r -= c;
        j += 1;
    }
    Some(index::sample(rng, k, j).iter().fold(0u64, |acc, i| acc | 1 << i))
}

/// A point uniform over all `x ∈ {0,1}^n` with `|x|` in the band.
pub fn sample_band_uniform<R: Rng + ?Sized>(n: usize, band: Band, rng: &mut R) -> Point {
    let bits = sample_weighted_subset(n, band.lo, band.hi, rng).expect("band is nonempty on {0..n}");
    Point::from_bits(bits, n)
}

/// A point uniform over the banded downset of `x`, or `None` if it is empty.
pub fn sample_down_band<R: Rng + ?Sized>(x: Point, band: Band, rng: &mut R) -> Option<Point> {
    let positions = set_positions(x.bits());
    let mask = sample_weighted_subset(positions.len(), band.lo, band.hi, rng)?;
    Some(Point::from_bits(deposit(mask, &positions), x.arity()))
}
