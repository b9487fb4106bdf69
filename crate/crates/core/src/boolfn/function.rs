use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::band::{mid_band, Band};
use super::point::Point;
use crate::error::Result;

/// Query access to `f: {0,1}^n -> {0,1}`.
///
/// Implementations must be pure: the same point always yields the same value,
/// and evaluation may happen concurrently from several threads.
pub trait BooleanFunction: Send + Sync {
    fn arity(&self) -> usize;

    fn eval(&self, x: Point) -> bool;
}

impl<T: BooleanFunction + ?Sized> BooleanFunction for &T {
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn eval(&self, x: Point) -> bool {
        (**self).eval(x)
    }
}

impl<T: BooleanFunction + ?Sized> BooleanFunction for Box<T> {
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn eval(&self, x: Point) -> bool {
        (**self).eval(x)
    }
}

impl<T: BooleanFunction + ?Sized> BooleanFunction for Arc<T> {
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn eval(&self, x: Point) -> bool {
        (**self).eval(x)
    }
}

/// A function given by a closure over point indices.
pub struct FromFn<F> {
    arity: usize,
    f: F,
}

pub fn from_fn<F>(arity: usize, f: F) -> FromFn<F>
where
    F: Fn(u64) -> bool + Send + Sync,
{
    FromFn { arity, f }
}

impl<F: Fn(u64) -> bool + Send + Sync> BooleanFunction for FromFn<F> {
    fn arity(&self) -> usize {
        self.arity
    }
    fn eval(&self, x: Point) -> bool {
        (self.f)(x.bits())
    }
}

/// Named functions available from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Const(bool),
    /// `x ↦ x_k`, coordinate `k` is 1-based.
    Dictator(usize),
    /// `x ↦ 1{2|x| > n}`.
    Majority,
}

#[derive(Debug, Clone, Copy)]
pub struct BuiltinFn {
    pub kind: Builtin,
    pub arity: usize,
}

impl BooleanFunction for BuiltinFn {
    fn arity(&self) -> usize {
        self.arity
    }
    fn eval(&self, x: Point) -> bool {
        match self.kind {
            Builtin::Const(v) => v,
            Builtin::Dictator(k) => x.coord(k),
            Builtin::Majority => 2 * x.weight() > self.arity,
        }
    }
}

/// Counts evaluations of the wrapped function.
pub struct QueryCounter<F> {
    inner: F,
    count: AtomicU64,
}

impl<F: BooleanFunction> QueryCounter<F> {
    pub fn new(inner: F) -> Self {
        QueryCounter { inner, count: AtomicU64::new(0) }
    }

    pub fn count(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F: BooleanFunction> BooleanFunction for QueryCounter<F> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }
    fn eval(&self, x: Point) -> bool {
        self.count.fetch_add(1, Ordering::Relaxed);
        self.inner.eval(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncMode {
    /// 0 below the band, 1 above.
    UnionClosed,
    /// 0 on both sides.
    Intersecting,
}

/// `f` restricted to the middle layers, with fixed values outside.
pub struct Truncated<F> {
    inner: F,
    band: Band,
    mode: TruncMode,
}

impl<F> Truncated<F> {
    pub fn band(&self) -> Band {
        self.band
    }
}

impl<F: BooleanFunction> BooleanFunction for Truncated<F> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }
    fn eval(&self, x: Point) -> bool {
        let w = x.weight();
        if w < self.band.lo() {
            false
        } else if w > self.band.hi() {
            self.mode == TruncMode::UnionClosed
        } else {
            self.inner.eval(x)
        }
    }
}

/// Truncation that preserves union-closedness.
pub fn truncate_uc<F: BooleanFunction>(f: F, eps: f64) -> Result<Truncated<F>> {
    let band = mid_band(f.arity(), eps, false)?;
    Ok(Truncated { inner: f, band, mode: TruncMode::UnionClosed })
}

/// Truncation that preserves intersectingness.
pub fn truncate_int<F: BooleanFunction>(f: F, eps: f64) -> Result<Truncated<F>> {
    let band = mid_band(f.arity(), eps, false)?;
    Ok(Truncated { inner: f, band, mode: TruncMode::Intersecting })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::TruthTable;
    use crate::distance::{is_intersecting, is_union_closed};
    use proptest::prelude::*;

    fn const_fn(n: usize, v: bool) -> BuiltinFn {
        BuiltinFn { kind: Builtin::Const(v), arity: n }
    }

    #[test]
    fn truncation_at_extremes() {
        let f = truncate_uc(const_fn(20, true), 0.5).unwrap();
        assert_eq!((f.band().lo(), f.band().hi()), (1, 19));
        assert!(!f.eval(Point::zero(20)));
        assert!(f.eval(Point::ones(20)));

        let g = truncate_int(const_fn(20, true), 0.5).unwrap();
        assert!(!g.eval(Point::zero(20)));
        assert!(!g.eval(Point::ones(20)));
    }

    #[test]
    fn whole_cube_band_is_identity() {
        let f = truncate_uc(const_fn(4, false), 0.5).unwrap();
        assert_eq!((f.band().lo(), f.band().hi()), (0, 4));
        assert!(!f.eval(Point::ones(4)));
        let d = BuiltinFn { kind: Builtin::Dictator(2), arity: 4 };
        let g = truncate_int(d, 0.5).unwrap();
        for i in 0..16 {
            let x = Point::from_bits(i, 4);
            assert_eq!(g.eval(x), d.eval(x));
        }
    }

    #[test]
    fn truncation_preserves_the_properties() {
        for n in [12usize, 16, 20] {
            let maj = BuiltinFn { kind: Builtin::Majority, arity: n };
            let t = TruthTable::from_function(&truncate_uc(maj, 0.9).unwrap()).unwrap();
            assert!(is_union_closed(&t));
            let dict = BuiltinFn { kind: Builtin::Dictator(1), arity: n };
            let t = TruthTable::from_function(&truncate_int(dict, 0.9).unwrap()).unwrap();
            assert!(is_intersecting(&t));
        }
    }

    #[test]
    fn counter_counts_each_eval() {
        let c = QueryCounter::new(const_fn(3, true));
        for i in 0..8 {
            assert!(c.eval(Point::from_bits(i, 3)));
        }
        assert_eq!(c.count(), 8);
    }

    proptest! {
        #[test]
        fn counter_is_transparent(mask in any::<u64>(), pts in prop::collection::vec(0u64..64, 0..50)) {
            let f = from_fn(6, move |x| mask >> x & 1 == 1);
            let c = QueryCounter::new(&f);
            for (k, &p) in pts.iter().enumerate() {
                let x = Point::from_bits(p, 6);
                prop_assert_eq!(c.eval(x), f.eval(x));
                prop_assert_eq!(c.count(), k as u64 + 1);
            }
        }

        #[test]
        fn truncation_is_idempotent(mask in any::<u64>(), eps in 0.05f64..0.95, uc in any::<bool>()) {
            let f = from_fn(6, move |x| mask >> x & 1 == 1);
            let trunc = |g: &dyn BooleanFunction| -> Vec<bool> {
                (0..64).map(|i| g.eval(Point::from_bits(i, 6))).collect()
            };
            if uc {
                let once = truncate_uc(&f, eps).unwrap();
                let twice = truncate_uc(&once, eps).unwrap();
                prop_assert_eq!(trunc(&once), trunc(&twice));
            } else {
                let once = truncate_int(&f, eps).unwrap();
                let twice = truncate_int(&once, eps).unwrap();
                prop_assert_eq!(trunc(&once), trunc(&twice));
            }
        }
    }
}
