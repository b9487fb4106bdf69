//! Random monotone DNFs with many long terms.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boolfn::{full_mask, BooleanFunction, Point, MAX_ARITY};
use crate::error::{Error, Result};
use crate::rng;
use crate::stats::{wilson, Estimate};

/// Refuse to sample more terms than this.
pub const MAX_TERMS: u64 = 1 << 20;

/// Which terms a point satisfies, as far as uniqueness is concerned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermMatch {
    None,
    Unique(usize),
    Many,
}

/// An ordered list of monotone terms over `n` variables. Terms are stored as
/// bit masks; repeated draws of a variable collapse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TalagrandDnf {
    pub n: usize,
    pub term_size: usize,
    pub terms: Vec<u64>,
}

/// `(term_size, L)` = `(round(√n/ε), floor(0.1·2^{√n/ε}))`.
pub fn talagrand_params(n: usize, eps: f64) -> Result<(usize, u64)> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidEps(eps));
    }
    if n == 0 || n > MAX_ARITY {
        return Err(Error::ArityOutOfRange { arity: n, max: MAX_ARITY });
    }
    let width = (n as f64).sqrt() / eps;
    let term_size = width.round() as usize;
    let l = (0.1 * width.exp2()).floor();
    if term_size == 0 || l < 1.0 {
        return Err(Error::Degenerate(format!(
            "n={n}, eps={eps}: term size {term_size}, {l} terms"
        )));
    }
    if l > MAX_TERMS as f64 {
        return Err(Error::ResourceCap(format!("{l:.3e} terms exceed the cap of {MAX_TERMS}")));
    }
    Ok((term_size, l as u64))
}

/// Draw each of the `L` terms as `term_size` independent uniform variables.
pub fn sample_talagrand<R: Rng + ?Sized>(n: usize, eps: f64, rng: &mut R) -> Result<TalagrandDnf> {
    let (term_size, l) = talagrand_params(n, eps)?;
    let terms = (0..l)
        .map(|_| (0..term_size).fold(0u64, |t, _| t | 1 << rng.gen_range(0..n)))
        .collect();
    Ok(TalagrandDnf { n, term_size, terms })
}

impl TalagrandDnf {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `S_T(x)`: indices of the terms contained in `x`.
    pub fn satisfied(&self, x: u64) -> Vec<usize> {
        self.terms.iter().enumerate().filter(|&(_, &t)| t & !x == 0).map(|(i, _)| i).collect()
    }

    pub fn unique_term(&self, x: u64) -> TermMatch {
        let mut found = TermMatch::None;
        for (i, &t) in self.terms.iter().enumerate() {
            if t & !x == 0 {
                if found != TermMatch::None {
                    return TermMatch::Many;
                }
                found = TermMatch::Unique(i);
            }
        }
        found
    }

    pub fn eval_bits(&self, x: u64) -> bool {
        self.terms.iter().any(|&t| t & !x == 0)
    }
}

impl BooleanFunction for TalagrandDnf {
    fn arity(&self) -> usize {
        self.n
    }

    fn eval(&self, x: Point) -> bool {
        self.eval_bits(x.bits())
    }
}

/// Weights `[ceil(n/2), max(ceil(n/2), floor(n/2 + 0.05·ε·√n))]`.
pub fn unique_sat_window(n: usize, eps: f64) -> (usize, usize) {
    let lo = n.div_ceil(2);
    let hi = (n as f64 / 2.0 + 0.05 * eps * (n as f64).sqrt()).floor() as usize;
    (lo, hi.max(lo).min(n))
}

#[derive(Debug, Clone, Serialize)]
pub struct UniqueSatEstimate {
    pub n: usize,
    pub eps: f64,
    pub trials: u64,
    pub window: (usize, usize),
    /// `(weight, estimate)` per weight of the window.
    pub per_weight: Vec<(usize, Estimate<f64>)>,
    pub pooled: Estimate<f64>,
}

/// Monte Carlo estimate of `Pr_T[|S_T(x)| = 1]` for `x` in the weight window,
/// with Wilson intervals at `confidence`. The distribution of `T` is invariant
/// under permuting coordinates, so one `x` per weight (its lowest coordinates
/// set) represents its whole weight class. Trial `t` uses stream `[t]`.
pub fn unique_sat_probability(n: usize, eps: f64, trials: u64, seed: u64, confidence: f64) -> Result<UniqueSatEstimate> {
    if trials < 1000 {
        return Err(Error::Degenerate(format!("{trials} trials, need at least 1000")));
    }
    talagrand_params(n, eps)?;
    let window = unique_sat_window(n, eps);
    let points: Vec<u64> = (window.0..=window.1).map(full_mask).collect();
    let hits = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut r = rng::derived(seed, &[t]);
            let dnf = sample_talagrand(n, eps, &mut r).expect("parameters checked");
            points.iter().map(|&x| matches!(dnf.unique_term(x), TermMatch::Unique(_)) as u64).collect::<Vec<_>>()
        })
        .reduce(|| vec![0; points.len()], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    let per_weight = (window.0..=window.1)
        .zip(&hits)
        .map(|(w, &k)| (w, wilson(k, trials, confidence)))
        .collect();
    let total: u64 = hits.iter().sum();
    let pooled = wilson(total, trials * points.len() as u64, confidence);
    Ok(UniqueSatEstimate { n, eps, trials, window, per_weight, pooled })
}
