//! Instances for the intersecting lower bounds over `n + 2` variables.
//!
//! The last two coordinates select a side: `(.., 0, 0)` and `(.., 1, 1)` are
//! always 0; `(x, 0, 1)` is driven by the term uniquely satisfied by `x_C`
//! and `(x, 1, 0)` by the term uniquely satisfied by `x̄_C`. Within a
//! selected term the value depends on the action weight through one of four
//! region functions.

use rand::Rng;
use serde::Serialize;

use super::split::Split;
use super::talagrand::{sample_talagrand, TalagrandDnf, TermMatch};
use crate::boolfn::{check_eps, full_mask, BooleanFunction, Point, MAX_ARITY};
use crate::error::{Error, Result};
use crate::violations::{level_matching, IViolatingPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntKind {
    Yes,
    No,
    OneSidedNo,
}

/// Position of an action weight relative to `a/2 ± √a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Top,
    Middle,
    Bottom,
}

/// Exact comparison of `w` against `a/2 ± √a` by squaring.
pub fn region(a: usize, w: usize) -> Region {
    let d = 2 * w as i64 - a as i64;
    let four_a = 4 * a as i64;
    if d > 0 && d * d > four_a {
        Region::Top
    } else if d < 0 && d * d > four_a {
        Region::Bottom
    } else {
        Region::Middle
    }
}

/// `g^{(sign, b)}` on an action weight.
fn action_value(plus: bool, b: bool, r: Region) -> bool {
    match (plus, b) {
        (true, false) => false,
        (true, true) => r != Region::Middle,
        (false, false) => r == Region::Top,
        (false, true) => r == Region::Bottom,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectInstance {
    pub kind: IntKind,
    /// Base arity; the function has `n + 2` inputs.
    pub n: usize,
    pub eps: f64,
    pub a: usize,
    pub split: Split,
    /// Absent for the one-sided family.
    pub dnf: Option<TalagrandDnf>,
    pub b: Vec<bool>,
}

/// `a = round(√n/ε)` for the two-sided families, `round(n/100)` for the one-sided one.
pub fn action_size(kind: IntKind, n: usize, eps: f64) -> usize {
    match kind {
        IntKind::Yes | IntKind::No => ((n as f64).sqrt() / eps).round() as usize,
        IntKind::OneSidedNo => (n as f64 / 100.0).round() as usize,
    }
}

pub fn build_int_instance<R: Rng + ?Sized>(kind: IntKind, n: usize, eps: f64, rng: &mut R) -> Result<IntersectInstance> {
    check_eps(eps)?;
    if n == 0 || n + 2 > MAX_ARITY {
        return Err(Error::ArityOutOfRange { arity: n + 2, max: MAX_ARITY });
    }
    let a = action_size(kind, n, eps);
    if a == 0 || a >= n {
        return Err(Error::Degenerate(format!("action set of size {a} out of {n}")));
    }
    let split = Split::sample(n, a, rng);
    let (dnf, b) = match kind {
        IntKind::OneSidedNo => (None, Vec::new()),
        IntKind::Yes | IntKind::No => {
            let dnf = sample_talagrand(n - a, eps, rng)?;
            let b = (0..dnf.len()).map(|_| rng.gen()).collect();
            (Some(dnf), b)
        }
    };
    Ok(IntersectInstance { kind, n, eps, a, split, dnf, b })
}

impl IntersectInstance {
    pub fn arity(&self) -> usize {
        self.n + 2
    }

    fn one_sided_value(&self, x: u64) -> bool {
        // |x| within n/2 ± 10K and |x_A| < n/200 - K, with K² = n·ln(1/ε).
        let k2 = self.n as f64 * (1.0 / self.eps).ln();
        let d = 2.0 * x.count_ones() as f64 - self.n as f64;
        let w = (x & self.split.action).count_ones() as f64;
        let gap = self.n as f64 - 200.0 * w;
        d * d <= 400.0 * k2 && gap > 0.0 && gap * gap > 40_000.0 * k2
    }

    /// Value at base point `x` on side `(0, 1)` (`flipped = false`) or `(1, 0)`.
    pub fn side_value(&self, x: u64, flipped: bool) -> bool {
        let Some(dnf) = &self.dnf else {
            return self.one_sided_value(x);
        };
        let xc = self.split.control_part(x);
        let key = if flipped { !xc & full_mask(self.split.c()) } else { xc };
        let TermMatch::Unique(l) = dnf.unique_term(key) else {
            return false;
        };
        let r = region(self.a, (x & self.split.action).count_ones() as usize);
        let b = self.b[l];
        match self.kind {
            IntKind::Yes => action_value(true, b != flipped, r),
            IntKind::No => action_value(false, b, r),
            IntKind::OneSidedNo => unreachable!(),
        }
    }

    pub fn eval_bits(&self, x: u64) -> bool {
        let base = x & full_mask(self.n);
        match (x >> self.n & 1 == 1, x >> (self.n + 1) & 1 == 1) {
            (false, true) => self.side_value(base, false),
            (true, false) => self.side_value(base, true),
            _ => false,
        }
    }

    pub fn point(&self, base: u64, y1: bool, y2: bool) -> Point {
        Point::from_bits(base | (y1 as u64) << self.n | (y2 as u64) << (self.n + 1), self.arity())
    }
}

impl BooleanFunction for IntersectInstance {
    fn arity(&self) -> usize {
        self.n + 2
    }

    fn eval(&self, x: Point) -> bool {
        self.eval_bits(x.bits())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntNoCount {
    /// Control settings with a unique term whose bit is 1.
    pub good_controls: u64,
    /// Disjoint I-violating pairs built from them.
    pub pairs: u64,
    pub arity: usize,
}

impl IntNoCount {
    /// `pairs / 2^arity`, a lower bound on the distance to intersecting.
    pub fn certified(&self) -> f64 {
        self.pairs as f64 / (1u64 << self.arity) as f64
    }
}

/// Disjoint violating pairs of a no-instance: for each control setting `x_C`
/// that uniquely satisfies a term with bit 1, and each bottom action weight
/// `w`, pair `(x_C, p, 0, 1)` with `(x̄_C, q̄, 1, 0)` along a perfect matching
/// `p ≤ q` of levels `w` and `a - w`. Every pair is checked by evaluation.
pub fn int_no_violations(inst: &IntersectInstance) -> Result<Vec<IViolatingPair>> {
    if inst.arity() > 20 {
        return Err(Error::ResourceCap(format!("arity {} exceeds 20", inst.arity())));
    }
    let (Some(dnf), IntKind::No) = (&inst.dnf, inst.kind) else {
        return Ok(Vec::new());
    };
    let a = inst.a;
    let c = inst.split.c();
    let amask = full_mask(a);
    let matchings: Vec<Vec<(Point, Point)>> = (0..a)
        .filter(|&w| 2 * w < a && region(a, w) == Region::Bottom)
        .map(|w| level_matching(a, w))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for xc in 0..1u64 << c {
        let TermMatch::Unique(l) = dnf.unique_term(xc) else { continue };
        if !inst.b[l] {
            continue;
        }
        let xc_bar = !xc & full_mask(c);
        for m in &matchings {
            for (p, q) in m {
                let u = inst.point(inst.split.join(xc, p.bits()), false, true);
                let v = inst.point(inst.split.join(xc_bar, !q.bits() & amask), true, false);
                let pair = IViolatingPair { x: u, y: v };
                if !pair.verify(inst) {
                    return Err(Error::NotAViolation(format!("constructed pair {u} / {v}")));
                }
                out.push(pair);
            }
        }
    }
    Ok(out)
}

pub fn count_int_no_violations(inst: &IntersectInstance) -> Result<IntNoCount> {
    let pairs = int_no_violations(inst)?;
    let good_controls = match (&inst.dnf, inst.kind) {
        (Some(dnf), IntKind::No) => (0..1u64 << inst.split.c())
            .filter(|&xc| matches!(dnf.unique_term(xc), TermMatch::Unique(l) if inst.b[l]))
            .count() as u64,
        _ => 0,
    };
    Ok(IntNoCount { good_controls, pairs: pairs.len() as u64, arity: inst.arity() })
}
