//! Monte Carlo estimate of the event that a fixed query set can tell the
//! yes and no distributions apart.

use rayon::prelude::*;
use serde::Serialize;

use super::intersect::{action_size, region, IntKind, Region};
use super::split::Split;
use super::talagrand::{sample_talagrand, talagrand_params, TermMatch};
use super::union_closed::action_bits;
use crate::boolfn::{check_eps, full_mask, MAX_ARITY};
use crate::error::{Error, Result};
use crate::rng;
use crate::stats::{proportion_sd, wilson, Estimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BadKind {
    /// Same unique term, one point in the top region and one in the bottom.
    Int,
    /// Same unique term, antipodal action parts.
    Uc,
}

#[derive(Debug, Clone, Serialize)]
pub struct BadEventParams {
    /// Query points over the base arity `n`.
    pub queries: Vec<u64>,
    pub kind: BadKind,
    pub trials: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BadEventEstimate {
    pub n: usize,
    pub eps: f64,
    pub kind: BadKind,
    pub queries: usize,
    pub estimate: Estimate<f64>,
    pub sd: f64,
    /// `q²·2^{-0.25·n^{1/4}/√ε}`.
    pub bound: f64,
}

impl BadEventEstimate {
    pub fn within_bound(&self, sigmas: f64) -> bool {
        self.estimate.mean <= self.bound + sigmas * self.sd
    }
}

pub fn bad_event_bound(n: usize, eps: f64, queries: usize) -> f64 {
    let q = queries as f64;
    q * q * (-0.25 * (n as f64).powf(0.25) / eps.sqrt()).exp2()
}

fn is_bad(kind: BadKind, split: &Split, terms: &[TermMatch], queries: &[u64]) -> bool {
    let a = split.a();
    for i in 0..queries.len() {
        let TermMatch::Unique(li) = terms[i] else { continue };
        for j in i + 1..queries.len() {
            if terms[j] != TermMatch::Unique(li) {
                continue;
            }
            let (x, y) = (queries[i], queries[j]);
            let hit = match kind {
                BadKind::Int => {
                    let rx = region(a, (x & split.action).count_ones() as usize);
                    let ry = region(a, (y & split.action).count_ones() as usize);
                    matches!((rx, ry), (Region::Top, Region::Bottom) | (Region::Bottom, Region::Top))
                }
                BadKind::Uc => (x ^ y) & split.action == split.action,
            };
            if hit {
                return true;
            }
        }
    }
    false
}

/// Fraction of `trials` fresh draws of `(A, T)` in which some pair of the
/// query set triggers the bad event, with a Wilson interval at `confidence`.
/// Trial `t` draws from stream `[t]`.
pub fn estimate_bad_probability(p: &BadEventParams, n: usize, eps: f64, seed: u64, confidence: f64) -> Result<BadEventEstimate> {
    if p.queries.is_empty() {
        return Err(Error::Degenerate("empty query set".into()));
    }
    if p.trials < 1000 {
        return Err(Error::Degenerate(format!("{} trials, need at least 1000", p.trials)));
    }
    if n == 0 || n > MAX_ARITY {
        return Err(Error::ArityOutOfRange { arity: n, max: MAX_ARITY });
    }
    if let Some(&x) = p.queries.iter().find(|&&x| x & !full_mask(n) != 0) {
        return Err(Error::PointOutOfRange { index: x, arity: n });
    }
    let (a, inner_eps) = match p.kind {
        BadKind::Int => {
            check_eps(eps)?;
            (action_size(IntKind::Yes, n, eps), eps)
        }
        BadKind::Uc => (action_bits(eps)?, 1.0),
    };
    if a == 0 || a >= n {
        return Err(Error::Degenerate(format!("action set of size {a} out of {n}")));
    }
    talagrand_params(n - a, inner_eps)?;
    let hits: u64 = (0..p.trials)
        .into_par_iter()
        .map(|t| {
            let mut r = rng::derived(seed, &[t]);
            let split = Split::sample(n, a, &mut r);
            let dnf = sample_talagrand(n - a, inner_eps, &mut r).expect("parameters checked");
            let terms: Vec<TermMatch> = p.queries.iter().map(|&x| dnf.unique_term(split.control_part(x))).collect();
            is_bad(p.kind, &split, &terms, &p.queries) as u64
        })
        .sum();
    Ok(BadEventEstimate {
        n,
        eps,
        kind: p.kind,
        queries: p.queries.len(),
        estimate: wilson(hits, p.trials, confidence),
        sd: proportion_sd(hits, p.trials),
        bound: bad_event_bound(n, eps, p.queries.len()),
    })
}
