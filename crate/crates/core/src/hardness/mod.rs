//! Random DNFs and the hard instance families, with verifiers.

mod bad_event;
mod intersect;
mod split;
mod talagrand;
mod union_closed;

use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bad_event::{bad_event_bound, estimate_bad_probability, BadEventEstimate, BadEventParams, BadKind};
pub use intersect::{
    action_size, build_int_instance, count_int_no_violations, int_no_violations, region, IntKind, IntNoCount,
    IntersectInstance, Region,
};
pub use split::Split;
pub use talagrand::{
    sample_talagrand, talagrand_params, unique_sat_probability, unique_sat_window, TalagrandDnf, TermMatch,
    UniqueSatEstimate, MAX_TERMS,
};
pub use union_closed::{
    action_bits, build_uc_instance, count_uc_no_violations, uc_no_violations, UcInstance, UcKind, UcNoCount,
};

use crate::boolfn::{BooleanFunction, Point};
use crate::error::{Error, Result};
use crate::rng;

/// Format version written into instance specs.
pub const SPEC_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    Talagrand,
    IntYes,
    IntNo,
    IntOneSidedNo,
    UcYes,
    UcNo,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 6] = [
        InstanceKind::Talagrand,
        InstanceKind::IntYes,
        InstanceKind::IntNo,
        InstanceKind::IntOneSidedNo,
        InstanceKind::UcYes,
        InstanceKind::UcNo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Talagrand => "talagrand",
            InstanceKind::IntYes => "int-yes",
            InstanceKind::IntNo => "int-no",
            InstanceKind::IntOneSidedNo => "int-one-sided-no",
            InstanceKind::UcYes => "uc-yes",
            InstanceKind::UcNo => "uc-no",
        }
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InstanceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown instance kind {s:?}")))
    }
}

/// Everything needed to regenerate an instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub n: usize,
    pub eps: f64,
    pub seed: u64,
    #[serde(default = "default_version")]
    pub version: u32,
}

fn default_version() -> u32 {
    SPEC_VERSION
}

impl InstanceSpec {
    pub fn new(kind: InstanceKind, n: usize, eps: f64, seed: u64) -> Self {
        InstanceSpec { kind, n, eps, seed, version: SPEC_VERSION }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: InstanceSpec = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if spec.version != SPEC_VERSION {
            return Err(Error::Parse(format!("unsupported spec version {}", spec.version)));
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Instance {
    Talagrand(TalagrandDnf),
    Int(IntersectInstance),
    Uc(UcInstance),
}

/// Deterministically build the instance described by `spec` from stream 0 of its seed.
pub fn build(spec: &InstanceSpec) -> Result<Instance> {
    let mut r = rng::stream(spec.seed, 0);
    Ok(match spec.kind {
        InstanceKind::Talagrand => Instance::Talagrand(sample_talagrand(spec.n, spec.eps, &mut r)?),
        InstanceKind::IntYes => Instance::Int(build_int_instance(IntKind::Yes, spec.n, spec.eps, &mut r)?),
        InstanceKind::IntNo => Instance::Int(build_int_instance(IntKind::No, spec.n, spec.eps, &mut r)?),
        InstanceKind::IntOneSidedNo => {
            Instance::Int(build_int_instance(IntKind::OneSidedNo, spec.n, spec.eps, &mut r)?)
        }
        InstanceKind::UcYes => Instance::Uc(build_uc_instance(UcKind::Yes, spec.n, spec.eps, &mut r)?),
        InstanceKind::UcNo => Instance::Uc(build_uc_instance(UcKind::No, spec.n, spec.eps, &mut r)?),
    })
}

impl BooleanFunction for Instance {
    fn arity(&self) -> usize {
        match self {
            Instance::Talagrand(t) => t.arity(),
            Instance::Int(i) => i.arity(),
            Instance::Uc(u) => u.arity(),
        }
    }

    fn eval(&self, x: Point) -> bool {
        match self {
            Instance::Talagrand(t) => t.eval(x),
            Instance::Int(i) => i.eval(x),
            Instance::Uc(u) => u.eval(x),
        }
    }
}
