//! Violation predicates, banded witness checks and the combinatorics of
//! violating pairs, tuples and triples.

mod certificate;
mod matching;

pub use certificate::{Certificate, IViolatingPair, TripleCertificate, UcViolatingTuple};
pub(crate) use matching::disjointness_graph;
pub use matching::{level_matching, max_disjoint_i_pairs, maximum_matching, DEFAULT_MATCHING_CAP};

use crate::boolfn::{enumerate_down_band, Band, BooleanFunction, Point, TruthTable};
use crate::error::{Error, Result};

fn same_arity<F: BooleanFunction + ?Sized>(f: &F, pts: &[Point]) -> Result<()> {
    for p in pts {
        if p.arity() != f.arity() {
            return Err(Error::ArityMismatch { expected: f.arity(), found: p.arity() });
        }
    }
    Ok(())
}

/// `x ≤ y` with `f(x) = 1` and `f(y) = 0`.
pub fn is_monotone_violation<F: BooleanFunction + ?Sized>(f: &F, x: Point, y: Point) -> Result<bool> {
    same_arity(f, &[x, y])?;
    Ok(x.is_below(y) && f.eval(x) && !f.eval(y))
}

/// `f(x) = f(y) = 1` and `x ∧ y = 0`; the diagonal at `0^n` counts.
pub fn is_i_violation<F: BooleanFunction + ?Sized>(f: &F, x: Point, y: Point) -> Result<bool> {
    same_arity(f, &[x, y])?;
    Ok(x.is_disjoint(y) && f.eval(x) && f.eval(y))
}

/// The triple `(y1, y2, y1 ∨ y2)` if it violates union-closedness.
pub fn is_uc_violation<F: BooleanFunction + ?Sized>(
    f: &F,
    y1: Point,
    y2: Point,
) -> Result<Option<TripleCertificate>> {
    same_arity(f, &[y1, y2])?;
    let z = y1.union(y2);
    Ok((f.eval(y1) && f.eval(y2) && !f.eval(z)).then_some(TripleCertificate { y1, y2, z }))
}

/// Query `x` and every point of its banded downset; report the tuple of all
/// satisfying points below `x` when `f(x) = 0` and their union is `x`.
pub fn witness_check_uc<F: BooleanFunction + ?Sized>(
    f: &F,
    x: Point,
    band: Band,
    cap: u64,
) -> Result<Option<UcViolatingTuple>> {
    same_arity(f, &[x])?;
    let down = enumerate_down_band(x, band, cap)?;
    let fx = f.eval(x);
    let mut members = Vec::new();
    let mut union = 0u64;
    for y in down {
        if f.eval(y) {
            union |= y.bits();
            members.push(y);
        }
    }
    let hit = !fx && !members.is_empty() && union == x.bits();
    Ok(hit.then_some(UcViolatingTuple { members, end: x }))
}

/// Query `x` and every point of the banded downset of `x̄`; report `(y, x)`
/// for the first satisfying `y` when `f(x) = 1`.
pub fn witness_check_int<F: BooleanFunction + ?Sized>(
    f: &F,
    x: Point,
    band: Band,
    cap: u64,
) -> Result<Option<IViolatingPair>> {
    same_arity(f, &[x])?;
    let down = enumerate_down_band(x.complement(), band, cap)?;
    let fx = f.eval(x);
    let mut found = None;
    for y in down {
        if f.eval(y) && found.is_none() {
            found = Some(y);
        }
    }
    Ok(found.filter(|_| fx).map(|y| IViolatingPair { x: y, y: x }))
}

/// Prefix unions of a violating tuple and the first violating triple among
/// consecutive prefixes.
pub fn augment_tuple<F: BooleanFunction + ?Sized>(
    f: &F,
    t: &UcViolatingTuple,
) -> Result<(Vec<Point>, TripleCertificate)> {
    if !t.verify(f) {
        return Err(Error::NotAViolation("tuple is not UC-violating for this function".into()));
    }
    let mut augmented = t.members.clone();
    let mut prefix = t.members[0];
    let mut triple = None;
    for &next in &t.members[1..] {
        let joined = prefix.union(next);
        augmented.push(joined);
        if triple.is_none() && !f.eval(joined) {
            triple = Some(TripleCertificate { y1: prefix, y2: next, z: joined });
        }
        prefix = joined;
    }
    let triple = triple.expect("the last prefix is the end, a 0-input");
    Ok((augmented, triple))
}

/// Symmetric-difference size of the two lower points.
pub fn locality(c: &TripleCertificate) -> usize {
    (c.y1.bits() ^ c.y2.bits()).count_ones() as usize
}

/// Smallest locality of a violating triple of `f`, `None` if `f` is union-closed.
pub fn min_violation_locality(f: &TruthTable, cap: usize) -> Result<Option<usize>> {
    let ones: Vec<u64> = f.ones().collect();
    if ones.len() > cap {
        return Err(Error::ResourceCap(format!("{} 1-inputs exceed the cap of {cap}", ones.len())));
    }
    let mut best: Option<u32> = None;
    for (i, &a) in ones.iter().enumerate() {
        for &b in &ones[i + 1..] {
            let d = (a ^ b).count_ones();
            if best.is_none_or(|m| d < m) && !f.get(a | b) {
                best = Some(d);
            }
        }
    }
    Ok(best.map(|d| d as usize))
}
