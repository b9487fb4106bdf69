use anyhow::{bail, Result};
use clap::ValueEnum;
use rand::Rng;
use rayon::prelude::*;
use setfam::boolfn::full_mask;
use setfam::hardness::{estimate_bad_probability, unique_sat_probability, BadEventParams, BadKind};
use setfam::rng::{derive_seed, derived};
use setfam::stats::{clopper_pearson, linear_fit};
use setfam::testers::{Algorithm, Verdict};

use super::num;
use super::test::{config, run_one};
use crate::csvout::Table;
use crate::source::Source;
use crate::{Cli, Output, Sweep, SweepArgs};

/// How the query pairs of a bad-event sweep are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairShape {
    /// `x` uniform, `y = x̄`.
    Antipodal,
    /// `x`, `y` independent and uniform.
    Random,
}

pub fn run(cli: &Cli, a: &SweepArgs) -> Result<Output> {
    if a.seeds == 0 {
        bail!("--seeds must be positive");
    }
    match &a.what {
        Sweep::Queries { alg, function, n, eps, max_iterations } => {
            queries(cli, a.seeds, alg, function, n, *eps, *max_iterations)
        }
        Sweep::Rejection { alg, function, n, eps, trials, max_iterations } => {
            rejection(cli, a.seeds, alg, function, *n, eps, *trials, *max_iterations)
        }
        Sweep::UniqueSat { n, eps, trials } => unique_sat(cli, a.seeds, n, *eps, *trials),
        Sweep::BadEvent { n, eps, kind, pairs, trials } => {
            bad_event(cli, a.seeds, n, *eps, (*kind).into(), *pairs, *trials)
        }
    }
}

/// `sqrt(n·ln(1/ε))·ln n`, the exponent scale of the query bound.
pub fn query_scale(n: usize, eps: f64) -> f64 {
    let nf = n as f64;
    (nf * (1.0 / eps).ln()).sqrt() * nf.ln()
}

fn queries(cli: &Cli, seeds: u64, alg: &str, function: &str, ns: &[usize], eps: f64, max_iterations: u64) -> Result<Output> {
    let alg: Algorithm = alg.parse()?;
    if !matches!(alg, Algorithm::Uc | Algorithm::Int) {
        bail!("query sweeps take a scanning tester (uc or int)");
    }
    let sources = ns.iter().map(|&n| Source::parse(function, Some(n))).collect::<Result<Vec<_>>>()?;
    let grid: Vec<(usize, u64)> = (0..ns.len()).flat_map(|i| (0..seeds).map(move |s| (i, s))).collect();
    let runs = grid
        .par_iter()
        .map(|&(i, s)| {
            let seed = derive_seed(cli.seed, &[ns[i] as u64, s]);
            let cfg = config(cli, eps, seed, Some(max_iterations), 1.0)?;
            Ok((i, s, seed, run_one(alg, &sources[i], &cfg)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut means = vec![0.0; ns.len()];
    for (i, _, _, r) in &runs {
        means[*i] += r.queries as f64 / r.iterations_run as f64 / seeds as f64;
    }
    let xs: Vec<f64> = ns.iter().map(|&n| query_scale(n, eps)).collect();
    let ys: Vec<f64> = means.iter().map(|m| m.ln()).collect();
    let (slope, intercept) = if ns.len() >= 2 { linear_fit(&xs, &ys) } else { (f64::NAN, f64::NAN) };
    let fitted: Vec<f64> = xs.iter().map(|x| slope * x + intercept).collect();
    let residual: Vec<f64> = ys.iter().zip(&fitted).map(|(y, f)| (y - f).abs() / y.abs()).collect();
    let max_residual = residual.iter().cloned().fold(0.0, f64::max);

    let mut t = Table::new(
        "sweep-queries",
        &["alg", "fn", "n", "eps", "seed", "queries", "iterations", "queries_per_iteration", "mean_queries_per_iteration", "fitted_ln", "rel_residual"],
    )?;
    t.comment(format!("master-seed={} seeds={seeds} max-iterations={max_iterations}", cli.seed));
    t.comment(format!("fit ln(q) = C*sqrt(n*ln(1/eps))*ln(n) + C0: C={} C0={} max-rel-residual={}", num(slope), num(intercept), num(max_residual)));
    for (i, _, seed, r) in &runs {
        t.row([
            alg.name().to_string(),
            function.to_string(),
            ns[*i].to_string(),
            num(eps),
            seed.to_string(),
            r.queries.to_string(),
            r.iterations_run.to_string(),
            num(r.queries as f64 / r.iterations_run as f64),
            num(means[*i]),
            num(fitted[*i]),
            num(residual[*i]),
        ])?;
    }
    let notes = vec![format!("C={slope:.4} C0={intercept:.4} max relative residual {max_residual:.4}")];
    Ok(Output { data: t.finish()?, notes, code: 0 })
}

#[allow(clippy::too_many_arguments)]
fn rejection(cli: &Cli, seeds: u64, alg: &str, function: &str, n: Option<usize>, epss: &[f64], trials: u64, max_iterations: Option<u64>) -> Result<Output> {
    let alg: Algorithm = alg.parse()?;
    let f = Source::parse(function, n)?;
    let grid: Vec<(usize, u64)> = (0..epss.len()).flat_map(|i| (0..seeds).map(move |s| (i, s))).collect();
    let mut t = Table::new("sweep-rejection", &["alg", "fn", "n", "eps", "seed", "runs", "rejects", "errors", "fraction", "cp95_lo", "cp95_hi"])?;
    t.comment(format!("master-seed={} seeds={seeds} trials={trials}", cli.seed));
    let rows = grid
        .par_iter()
        .map(|&(i, s)| {
            let seed = derive_seed(cli.seed, &[i as u64, s]);
            let (mut rejects, mut errors) = (0u64, 0u64);
            for k in 0..trials {
                let cfg = config(cli, epss[i], derive_seed(seed, &[k]), max_iterations, 1.0)?;
                match run_one(alg, &f, &cfg) {
                    Ok(r) if r.verdict == Verdict::Reject => rejects += 1,
                    Ok(_) => {}
                    Err(_) => errors += 1,
                }
            }
            let done = trials - errors;
            let ci = clopper_pearson(rejects, done.max(1), 0.95);
            Ok(vec![
                alg.name().to_string(),
                function.to_string(),
                setfam::boolfn::BooleanFunction::arity(&f).to_string(),
                num(epss[i]),
                seed.to_string(),
                trials.to_string(),
                rejects.to_string(),
                errors.to_string(),
                num(rejects as f64 / done.max(1) as f64),
                num(ci.lo),
                num(ci.hi),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    for r in rows {
        t.row(r)?;
    }
    Ok(Output { data: t.finish()?, notes: Vec::new(), code: 0 })
}

fn unique_sat(cli: &Cli, seeds: u64, ns: &[usize], eps: f64, trials: u64) -> Result<Output> {
    let mut t = Table::new("sweep-unique-sat", &["n", "eps", "seed", "weight", "trials", "unique", "estimate", "wilson99_lo", "wilson99_hi"])?;
    t.comment(format!("master-seed={} seeds={seeds} trials={trials}", cli.seed));
    let mut min_lo = f64::INFINITY;
    for &n in ns {
        for s in 0..seeds {
            let seed = derive_seed(cli.seed, &[n as u64, s]);
            let e = unique_sat_probability(n, eps, trials, seed, 0.99)?;
            let pooled = ("pooled".to_string(), e.pooled);
            for (w, est) in e.per_weight.iter().map(|(w, est)| (w.to_string(), *est)).chain([pooled]) {
                min_lo = min_lo.min(est.lo);
                t.row([n.to_string(), num(eps), seed.to_string(), w, est.trials.to_string(), est.successes.to_string(), num(est.mean), num(est.lo), num(est.hi)])?;
            }
        }
    }
    Ok(Output { data: t.finish()?, notes: vec![format!("smallest lower bound {min_lo:.5}")], code: 0 })
}

/// The query pair of a bad-event sweep at `(n, seed)`.
pub fn query_pair(n: usize, seed: u64, shape: PairShape) -> [u64; 2] {
    let mut r = derived(seed, &[u64::MAX]);
    let x = r.gen::<u64>() & full_mask(n);
    let y = match shape {
        PairShape::Antipodal => !x & full_mask(n),
        PairShape::Random => r.gen::<u64>() & full_mask(n),
    };
    [x, y]
}

fn bad_event(cli: &Cli, seeds: u64, ns: &[usize], eps: f64, kind: BadKind, shape: PairShape, trials: u64) -> Result<Output> {
    let mut t = Table::new(
        "sweep-bad-event",
        &["n", "eps", "kind", "pairs", "seed", "x", "y", "trials", "bad", "estimate", "sd", "wilson99_hi", "bound", "within_3sd"],
    )?;
    t.comment(format!("master-seed={} seeds={seeds} trials={trials}", cli.seed));
    t.comment("bound = q^2 * 2^(-0.25 * n^(1/4) / sqrt(eps))");
    let kind_name = match kind {
        BadKind::Int => "int",
        BadKind::Uc => "uc",
    };
    let shape_name = match shape {
        PairShape::Antipodal => "antipodal",
        PairShape::Random => "random",
    };
    let mut all_within = true;
    for &n in ns {
        for s in 0..seeds {
            let seed = derive_seed(cli.seed, &[n as u64, s]);
            let [x, y] = query_pair(n, seed, shape);
            let p = BadEventParams { queries: vec![x, y], kind, trials };
            let e = estimate_bad_probability(&p, n, eps, seed, 0.99)?;
            all_within &= e.within_bound(3.0);
            t.row([
                n.to_string(),
                num(eps),
                kind_name.to_string(),
                shape_name.to_string(),
                seed.to_string(),
                x.to_string(),
                y.to_string(),
                trials.to_string(),
                e.estimate.successes.to_string(),
                num(e.estimate.mean),
                num(e.sd),
                num(e.estimate.hi),
                num(e.bound),
                e.within_bound(3.0).to_string(),
            ])?;
        }
    }
    Ok(Output { data: t.finish()?, notes: vec![format!("all within bound + 3 sd: {all_within}")], code: 0 })
}
