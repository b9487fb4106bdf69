//! The four one-sided testers.
//!
//! `uc_tester` and `int_tester` sample a middle-layer point and scan a whole
//! banded downset per iteration; `uc_triple_tester` and `int_pair_tester` make
//! a constant number of queries per round and run many more rounds.
//! Iteration `i` draws from the stream `rng::derived(seed, &[i])`, so a report
//! depends only on the function and the configuration.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::boolfn::{
    check_eps, mid_band, sample_band_uniform, sample_down_band, Band, BooleanFunction, Point, QueryCounter,
    DEFAULT_ENUM_CAP,
};
use crate::error::Result;
use crate::rng;
use crate::violations::{witness_check_int, witness_check_uc, Certificate, IViolatingPair, TripleCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Uc,
    Int,
    UcTriple,
    IntPair,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Uc, Algorithm::Int, Algorithm::UcTriple, Algorithm::IntPair];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Uc => "uc",
            Algorithm::Int => "int",
            Algorithm::UcTriple => "uc-triple",
            Algorithm::IntPair => "int-pair",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| crate::Error::Parse(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TesterConfig {
    pub eps: f64,
    pub seed: u64,
    /// Overrides the planned number of iterations.
    pub max_iterations: Option<u64>,
    /// Cap on a single banded-downset enumeration.
    pub cap: u64,
    /// Constant `C` in the per-round success bound of the sampling testers.
    pub tau_constant: f64,
}

impl TesterConfig {
    pub fn new(eps: f64, seed: u64) -> Result<Self> {
        check_eps(eps)?;
        Ok(TesterConfig { eps, seed, max_iterations: None, cap: DEFAULT_ENUM_CAP, tau_constant: 1.0 })
    }

    pub fn with_max_iterations(mut self, m: u64) -> Self {
        self.max_iterations = Some(m);
        self
    }

    pub fn with_tau_constant(mut self, c: f64) -> Self {
        self.tau_constant = c;
        self
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TesterReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub eps: f64,
    pub seed: u64,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub queries: u64,
    pub iterations_run: u64,
    pub iterations_planned: u64,
}

impl TesterReport {
    /// Rejecting rounds per round run: 0 or `1/iterations_run`. Pooled over
    /// many runs as `Σ rejects / Σ rounds`, this estimates the per-round
    /// success probability.
    pub fn round_success(&self) -> f64 {
        if self.iterations_run == 0 {
            return 0.0;
        }
        match self.verdict {
            Verdict::Reject => 1.0 / self.iterations_run as f64,
            Verdict::Accept => 0.0,
        }
    }
}

/// Iterations of the downset-scanning testers: `ceil(100/ε)`.
pub fn scan_iterations(eps: f64) -> u64 {
    (100.0 / eps).ceil() as u64
}

/// Per-round success lower bound of the sampling testers,
/// `ε·2^{-C·sqrt(n·ln(n/ε))·log2 n}`.
pub fn tau(n: usize, eps: f64, c: f64) -> f64 {
    let nf = n as f64;
    let exponent = c * (nf * (nf / eps).ln()).max(0.0).sqrt() * nf.log2();
    eps * (-exponent).exp2()
}

/// Rounds of the sampling testers: `ceil(100/τ)`, saturating.
pub fn sampling_rounds(n: usize, eps: f64, c: f64) -> u64 {
    let r = (100.0 / tau(n, eps, c)).ceil();
    if r >= u64::MAX as f64 {
        u64::MAX
    } else {
        r as u64
    }
}

fn planned(cfg: &TesterConfig, default: u64) -> u64 {
    cfg.max_iterations.unwrap_or(default)
}

fn report(
    algorithm: Algorithm,
    n: usize,
    cfg: &TesterConfig,
    certificate: Option<Certificate>,
    queries: u64,
    iterations_run: u64,
    iterations_planned: u64,
) -> TesterReport {
    TesterReport {
        algorithm,
        n,
        eps: cfg.eps,
        seed: cfg.seed,
        verdict: if certificate.is_some() { Verdict::Reject } else { Verdict::Accept },
        certificate,
        queries,
        iterations_run,
        iterations_planned,
    }
}

/// Sample middle-layer points and look for a union-closedness violation
/// ending at each among the banded points below it.
pub fn uc_tester<F: BooleanFunction + ?Sized>(f: &F, cfg: &TesterConfig) -> Result<TesterReport> {
    let n = f.arity();
    let band = mid_band(n, cfg.eps, false)?;
    let total = planned(cfg, scan_iterations(cfg.eps));
    let counted = QueryCounter::new(f);
    for i in 0..total {
        let mut r = rng::derived(cfg.seed, &[i]);
        let x = sample_band_uniform(n, band, &mut r);
        if let Some(t) = witness_check_uc(&counted, x, band, cfg.cap)? {
            let c = Certificate::UcTuple(t);
            return Ok(report(Algorithm::Uc, n, cfg, Some(c), counted.count(), i + 1, total));
        }
    }
    Ok(report(Algorithm::Uc, n, cfg, None, counted.count(), total, total))
}

/// Sample middle-layer 1-inputs and look for a satisfying banded point
/// below the complement.
pub fn int_tester<F: BooleanFunction + ?Sized>(f: &F, cfg: &TesterConfig) -> Result<TesterReport> {
    let n = f.arity();
    let band = mid_band(n, cfg.eps, false)?;
    let total = planned(cfg, scan_iterations(cfg.eps));
    let counted = QueryCounter::new(f);
    for i in 0..total {
        let mut r = rng::derived(cfg.seed, &[i]);
        let x = sample_band_uniform(n, band, &mut r);
        if let Some(p) = witness_check_int(&counted, x, band, cfg.cap)? {
            let c = Certificate::IPair(p);
            return Ok(report(Algorithm::Int, n, cfg, Some(c), counted.count(), i + 1, total));
        }
    }
    Ok(report(Algorithm::Int, n, cfg, None, counted.count(), total, total))
}

/// One round of the triple tester: `x` from the band, `y1`, `y2` from its
/// banded downset, three queries.
pub fn triple_round<F, R>(f: &F, band: Band, rng: &mut R) -> Option<TripleCertificate>
where
    F: BooleanFunction + ?Sized,
    R: Rng + ?Sized,
{
    let n = f.arity();
    let x = sample_band_uniform(n, band, rng);
    let y1 = sample_down_band(x, band, rng).expect("x lies in its own banded downset");
    let y2 = sample_down_band(x, band, rng).expect("x lies in its own banded downset");
    let (fx, f1, f2) = (f.eval(x), f.eval(y1), f.eval(y2));
    (y1.union(y2) == x && !fx && f1 && f2).then_some(TripleCertificate { y1, y2, z: x })
}

/// One round of the pair tester: `x` from the band and `y` from the banded
/// downset of `x̄`, two queries.
pub fn pair_round<F, R>(f: &F, band: Band, rng: &mut R) -> Option<IViolatingPair>
where
    F: BooleanFunction + ?Sized,
    R: Rng + ?Sized,
{
    let n = f.arity();
    let x = sample_band_uniform(n, band, rng);
    // The band is symmetric about n/2, so |x̄| ≥ lo and the downset is nonempty.
    let y: Point = sample_down_band(x.complement(), band, rng).expect("symmetric band");
    let (fx, fy) = (f.eval(x), f.eval(y));
    (fx && fy).then_some(IViolatingPair { x: y, y: x })
}

pub fn uc_triple_tester<F: BooleanFunction + ?Sized>(f: &F, cfg: &TesterConfig) -> Result<TesterReport> {
    let n = f.arity();
    let band = mid_band(n, cfg.eps, true)?;
    let total = planned(cfg, sampling_rounds(n, cfg.eps, cfg.tau_constant));
    let counted = QueryCounter::new(f);
    for i in 0..total {
        let mut r = rng::derived(cfg.seed, &[i]);
        if let Some(t) = triple_round(&counted, band, &mut r) {
            let c = Certificate::Triple(t);
            return Ok(report(Algorithm::UcTriple, n, cfg, Some(c), counted.count(), i + 1, total));
        }
    }
    Ok(report(Algorithm::UcTriple, n, cfg, None, counted.count(), total, total))
}

pub fn int_pair_tester<F: BooleanFunction + ?Sized>(f: &F, cfg: &TesterConfig) -> Result<TesterReport> {
    let n = f.arity();
    let band = mid_band(n, cfg.eps, false)?;
    let total = planned(cfg, sampling_rounds(n, cfg.eps, cfg.tau_constant));
    let counted = QueryCounter::new(f);
    for i in 0..total {
        let mut r = rng::derived(cfg.seed, &[i]);
        if let Some(p) = pair_round(&counted, band, &mut r) {
            let c = Certificate::IPair(p);
            return Ok(report(Algorithm::IntPair, n, cfg, Some(c), counted.count(), i + 1, total));
        }
    }
    Ok(report(Algorithm::IntPair, n, cfg, None, counted.count(), total, total))
}

pub fn run_tester<F: BooleanFunction + ?Sized>(alg: Algorithm, f: &F, cfg: &TesterConfig) -> Result<TesterReport> {
    match alg {
        Algorithm::Uc => uc_tester(f, cfg),
        Algorithm::Int => int_tester(f, cfg),
        Algorithm::UcTriple => uc_triple_tester(f, cfg),
        Algorithm::IntPair => int_pair_tester(f, cfg),
    }
}
