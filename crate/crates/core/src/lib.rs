//! Testing intersecting and union-closed set systems.
//!
//! A set system over `[n]` is a Boolean function on `{0,1}^n`. This crate
//! provides the query testers for the two properties, exact distance oracles
//! for small `n`, and the hard instance families used to probe the testers.

pub mod boolfn;
pub mod distance;
pub mod error;
pub mod hardness;
pub mod rng;
pub mod stats;
pub mod testers;
pub mod violations;

pub use error::{Error, Result};

/// Scalar used for probabilities and statistics.
pub type Real = f64;

/// Exact distances and other dyadic fractions.
pub type Fraction = num_rational::Ratio<u64>;

/// Confidence interval over [`Real`].
pub type Estimate = stats::Estimate<Real>;
