//! Binomial confidence intervals and small regression helpers.
//!
//! Everything here is generic over the floating-point type so the estimators
//! can run in `f32` for bulk sweeps or `f64` for acceptance checks.

use num_traits::{Float, FromPrimitive};
use serde::Serialize;
use statrs::distribution::{Beta, ContinuousCDF, Normal};

/// A Monte Carlo proportion with a two-sided confidence interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate<F> {
    pub successes: u64,
    pub trials: u64,
    pub mean: F,
    pub lo: F,
    pub hi: F,
    pub confidence: F,
}

fn cast<F: FromPrimitive>(v: f64) -> F {
    F::from_f64(v).expect("representable")
}

/// Two-sided standard normal quantile, e.g. 2.5758 for `confidence = 0.99`.
pub fn z_quantile(confidence: f64) -> f64 {
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    normal.inverse_cdf(0.5 + confidence / 2.0)
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson<F: Float + FromPrimitive>(successes: u64, trials: u64, confidence: F) -> Estimate<F> {
    assert!(trials > 0, "wilson interval needs at least one trial");
    let n: F = cast(trials as f64);
    let p: F = cast::<F>(successes as f64) / n;
    let z: F = cast(z_quantile(confidence.to_f64().expect("finite")));
    let two: F = cast(2.0);
    let four: F = cast(4.0);
    let z2 = z * z;
    let denom = F::one() + z2 / n;
    let centre = (p + z2 / (two * n)) / denom;
    let half = z * (p * (F::one() - p) / n + z2 / (four * n * n)).sqrt() / denom;
    Estimate {
        successes,
        trials,
        mean: p,
        lo: (centre - half).max(F::zero()),
        hi: (centre + half).min(F::one()),
        confidence,
    }
}

/// Exact (Clopper-Pearson) binomial interval.
pub fn clopper_pearson<F: Float + FromPrimitive>(successes: u64, trials: u64, confidence: F) -> Estimate<F> {
    assert!(trials > 0, "binomial interval needs at least one trial");
    let alpha = 1.0 - confidence.to_f64().expect("finite");
    let k = successes as f64;
    let n = trials as f64;
    let lo = if successes == 0 {
        0.0
    } else {
        Beta::new(k, n - k + 1.0).expect("beta").inverse_cdf(alpha / 2.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        Beta::new(k + 1.0, n - k).expect("beta").inverse_cdf(1.0 - alpha / 2.0)
    };
    Estimate {
        successes,
        trials,
        mean: cast(k / n),
        lo: cast(lo),
        hi: cast(hi),
        confidence,
    }
}

/// Standard error of a sample proportion.
pub fn proportion_sd<F: Float + FromPrimitive>(successes: u64, trials: u64) -> F {
    let n: F = cast(trials as f64);
    let p: F = cast::<F>(successes as f64) / n;
    (p * (F::one() - p) / n).sqrt()
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn linear_fit<F: Float + FromPrimitive>(xs: &[F], ys: &[F]) -> (F, F) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "fit needs two points");
    let n: F = cast(xs.len() as f64);
    let mx = xs.iter().fold(F::zero(), |a, &b| a + b) / n;
    let my = ys.iter().fold(F::zero(), |a, &b| a + b) / n;
    let (sxy, sxx) = xs.iter().zip(ys).fold((F::zero(), F::zero()), |(sxy, sxx), (&x, &y)| {
        (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
    });
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
