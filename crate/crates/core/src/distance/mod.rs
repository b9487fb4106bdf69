//! Property checks, exact distances and the repair constructions.
//!
//! Distances are exact: a numerator over `2^n`. Minimum distance to an
//! intersecting function equals the minimum vertex cover of the disjointness
//! graph of the 1-inputs (with `0^n` forced in): clearing 1-inputs never
//! creates a disjoint pair and setting new ones never removes one, so some
//! optimal repair clears exactly a cover.

mod closure;
mod cover;

use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::boolfn::{Band, TruthTable, TruthTableJson};
use crate::error::{Error, Result};
use crate::violations::{disjointness_graph, max_disjoint_i_pairs};

pub(crate) use closure::downset_unions;

/// Default cap on the number of 1-inputs for exact intersecting distance.
pub const DEFAULT_COVER_CAP: usize = 1 << 10;
/// Default node budget for the vertex cover search.
pub const DEFAULT_NODE_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    Exhaustive,
    VertexCover,
    MatchingBounds,
}

/// `numerator / 2^n`, optionally with an upper bound when only bounds are known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub numerator: u64,
    pub arity: usize,
    pub method: DistanceMethod,
    /// Upper numerator for [`DistanceMethod::MatchingBounds`].
    pub upper: Option<u64>,
    pub certificate: Option<TruthTable>,
}

impl DistanceResult {
    pub fn denominator(&self) -> u64 {
        1 << self.arity
    }

    /// The value as a reduced fraction.
    pub fn value(&self) -> Ratio<u64> {
        Ratio::new(self.numerator, self.denominator())
    }

    pub fn upper_value(&self) -> Option<Ratio<u64>> {
        self.upper.map(|u| Ratio::new(u, self.denominator()))
    }

    pub fn to_json(&self) -> DistanceJson {
        DistanceJson {
            value: format!("{}/{}", self.numerator, self.denominator()),
            numerator: self.numerator,
            denominator: self.denominator(),
            method: self.method,
            upper: self.upper.map(|u| format!("{}/{}", u, self.denominator())),
            certificate: self.certificate.as_ref().map(TruthTable::to_json),
        }
    }
}

/// Serialised form; `value` keeps the unreduced `k/2^n` spelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceJson {
    pub value: String,
    pub numerator: u64,
    pub denominator: u64,
    pub method: DistanceMethod,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub upper: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<TruthTableJson>,
}

/// No two 1-inputs have a union that is a 0-input.
pub fn is_union_closed(f: &TruthTable) -> bool {
    let u = downset_unions(f, None);
    (1..f.len()).all(|z| f.get(z) || u[z as usize] as u64 != z)
}

/// Every two 1-inputs, a 1-input with itself included, share a coordinate.
pub fn is_intersecting(f: &TruthTable) -> bool {
    let below = closure::has_one_below(f);
    let mask = f.len() - 1;
    f.ones().all(|x| !below.get(!x & mask))
}

/// Exact distance to intersecting, through a minimum vertex cover.
pub fn dist_int_exact(f: &TruthTable) -> Result<DistanceResult> {
    dist_int_exact_with(f, DEFAULT_COVER_CAP, DEFAULT_NODE_CAP)
}

pub fn dist_int_exact_with(f: &TruthTable, cap: usize, node_cap: u64) -> Result<DistanceResult> {
    if f.arity() > 16 {
        return Err(Error::ArityOutOfRange { arity: f.arity(), max: 16 });
    }
    let (ones, adj) = disjointness_graph(f, cap)?;
    let cover = cover::min_vertex_cover(&adj, node_cap)?;
    let mut g = f.clone();
    g.set(0, false);
    for &v in &cover {
        g.set(ones[v], false);
    }
    debug_assert!(is_intersecting(&g));
    Ok(DistanceResult {
        numerator: cover.len() as u64 + f.get(0) as u64,
        arity: f.arity(),
        method: DistanceMethod::VertexCover,
        upper: None,
        certificate: Some(g),
    })
}

/// `|M| ≤ dist·2^n ≤ 2|M|` for a maximum set `M` of disjoint I-violating pairs.
pub fn dist_int_bounds(f: &TruthTable, cap: usize) -> Result<DistanceResult> {
    let (m, _) = max_disjoint_i_pairs(f, cap)?;
    Ok(DistanceResult {
        numerator: m as u64,
        arity: f.arity(),
        method: DistanceMethod::MatchingBounds,
        upper: Some(2 * m as u64),
        certificate: None,
    })
}

fn uc_tables(n: usize) -> &'static [u64] {
    static TABLES: [OnceLock<Vec<u64>>; 5] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    TABLES[n].get_or_init(|| {
        let count = 1u64 << (1u32 << n);
        (0..count)
            .filter(|&m| is_union_closed(&TruthTable::from_mask(n, m).expect("n ≤ 4")))
            .collect()
    })
}

/// All union-closed functions on `n ≤ 4` variables, as masks over the
/// `2^n` points in increasing order.
pub fn union_closed_masks(n: usize) -> Result<&'static [u64]> {
    if n == 0 || n > 4 {
        return Err(Error::ArityOutOfRange { arity: n, max: 4 });
    }
    Ok(uc_tables(n))
}

/// Exact distance to union-closed by scanning every union-closed function.
/// The certificate is the optimal function with the smallest mask.
pub fn dist_uc_exact(f: &TruthTable) -> Result<DistanceResult> {
    let n = f.arity();
    let tables = union_closed_masks(n)?;
    let m = f.mask();
    let (d, g) = tables
        .iter()
        .map(|&g| ((g ^ m).count_ones() as u64, g))
        .min_by_key(|&(d, g)| (d, g))
        .expect("the constant functions are union-closed");
    Ok(DistanceResult {
        numerator: d,
        arity: n,
        method: DistanceMethod::Exhaustive,
        upper: None,
        certificate: Some(TruthTable::from_mask(n, g)?),
    })
}

/// Close the 1-inputs of `f` under unions. Returns the closure and the points
/// switched on, which are exactly the ends of violating tuples.
pub fn repair_uc(f: &TruthTable) -> Result<(TruthTable, Vec<u64>)> {
    if f.arity() > 20 {
        return Err(Error::ArityOutOfRange { arity: f.arity(), max: 20 });
    }
    let flipped = closure::violation_ends(f, None);
    let mut g = f.clone();
    for &z in &flipped {
        g.set(z, true);
    }
    Ok((g, flipped))
}

/// Number of distinct ends of UC-violating tuples, with members restricted
/// to `band` when given.
pub fn end_distinct_tuple_count(f: &TruthTable, band: Option<Band>) -> Result<u64> {
    if f.arity() > 20 {
        return Err(Error::ArityOutOfRange { arity: f.arity(), max: 20 });
    }
    Ok(closure::violation_ends(f, band).len() as u64)
}

/// Size of a maximal family of point-disjoint minimal UC-violating tuples,
/// built greedily over ends in increasing order.
pub fn disjoint_tuple_count_lb(f: &TruthTable) -> Result<u64> {
    if f.arity() > 16 {
        return Err(Error::ArityOutOfRange { arity: f.arity(), max: 16 });
    }
    let mut used = TruthTable::zeros(f.arity())?;
    let mut count = 0;
    let mut pool = Vec::new();
    for z in 1..f.len() {
        if f.get(z) {
            continue;
        }
        pool.clear();
        let mut union = 0u64;
        // Unused 1-inputs below z, by descending submask enumeration.
        let mut s = z;
        loop {
            if s != 0 && f.get(s) && !used.get(s) {
                union |= s;
                pool.push(s);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & z;
        }
        if union != z {
            continue;
        }
        let members = minimal_cover(z, &pool);
        for &y in &members {
            used.set(y, true);
        }
        used.set(z, true);
        count += 1;
    }
    Ok(count)
}

/// A subfamily of `pool` with union `z` from which no member can be dropped.
fn minimal_cover(z: u64, pool: &[u64]) -> Vec<u64> {
    let mut chosen: Vec<u64> = Vec::new();
    let mut covered = 0u64;
    while covered != z {
        let &best = pool
            .iter()
            .max_by_key(|&&y| ((y & !covered).count_ones(), std::cmp::Reverse(y)))
            .expect("pool covers z");
        covered |= best;
        chosen.push(best);
    }
    let mut i = 0;
    while i < chosen.len() {
        let rest = chosen.iter().enumerate().filter(|&(j, _)| j != i).fold(0, |acc, (_, &y)| acc | y);
        if rest == z {
            chosen.remove(i);
        } else {
            i += 1;
        }
    }
    chosen
}

#[cfg(test)]
mod tests;
