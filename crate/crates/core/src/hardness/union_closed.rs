//! Instances for the union-closed lower bound.
//!
//! `a = log2(1/ε)` action coordinates; the control part is driven by a
//! Talagrand DNF over the remaining `c = n - a` coordinates with parameter 1.
//! Inputs satisfying two or more terms are 1, inputs satisfying none are 0.

use rand::Rng;
use serde::Serialize;

use super::split::Split;
use super::talagrand::{sample_talagrand, TalagrandDnf, TermMatch};
use crate::boolfn::{full_mask, BooleanFunction, Point, MAX_ARITY};
use crate::error::{Error, Result};
use crate::violations::TripleCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UcKind {
    Yes,
    No,
}

#[derive(Debug, Clone, Serialize)]
pub struct UcInstance {
    pub kind: UcKind,
    pub n: usize,
    pub eps: f64,
    pub a: usize,
    pub split: Split,
    pub dnf: TalagrandDnf,
    /// `s_ℓ` for yes-instances, `r_ℓ` for no-instances, packed action strings.
    pub strings: Vec<u64>,
    /// `b_ℓ`; empty for yes-instances.
    pub b: Vec<bool>,
}

/// `a` with `ε = 2^{-a}`, rejecting anything that is not an exact power of one half.
pub fn action_bits(eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidEps(eps));
    }
    let a = (1.0 / eps).log2().round();
    if !(1.0..=62.0).contains(&a) || (a as i32).checked_neg().map(|e| 2f64.powi(e)) != Some(eps) {
        return Err(Error::Degenerate(format!("eps {eps} is not a power of 1/2")));
    }
    Ok(a as usize)
}

pub fn build_uc_instance<R: Rng + ?Sized>(kind: UcKind, n: usize, eps: f64, rng: &mut R) -> Result<UcInstance> {
    if n == 0 || n > MAX_ARITY {
        return Err(Error::ArityOutOfRange { arity: n, max: MAX_ARITY });
    }
    let a = action_bits(eps)?;
    if n < a + 4 {
        return Err(Error::Degenerate(format!("need n - a >= 4, got n={n}, a={a}")));
    }
    let split = Split::sample(n, a, rng);
    let dnf = sample_talagrand(n - a, 1.0, rng)?;
    let amask = full_mask(a);
    let mut strings = Vec::with_capacity(dnf.len());
    let mut b = Vec::new();
    for _ in 0..dnf.len() {
        strings.push(rng.gen::<u64>() & amask);
        if kind == UcKind::No {
            b.push(rng.gen());
        }
    }
    Ok(UcInstance { kind, n, eps, a, split, dnf, strings, b })
}

impl UcInstance {
    /// A no-instance string is bad when it is `0^a` or `1^a`.
    pub fn is_good_string(&self, l: usize) -> bool {
        let r = self.strings[l];
        r != 0 && r != full_mask(self.a)
    }

    pub fn eval_bits(&self, x: u64) -> bool {
        match self.dnf.unique_term(self.split.control_part(x)) {
            TermMatch::None => false,
            TermMatch::Many => true,
            TermMatch::Unique(l) => {
                let xa = self.split.action_part(x);
                match self.kind {
                    UcKind::Yes => xa == self.strings[l],
                    UcKind::No => {
                        let r = self.strings[l];
                        self.b[l] && (xa == r || xa == !r & full_mask(self.a))
                    }
                }
            }
        }
    }
}

impl BooleanFunction for UcInstance {
    fn arity(&self) -> usize {
        self.n
    }

    fn eval(&self, x: Point) -> bool {
        self.eval_bits(x.bits())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UcNoCount {
    /// Control settings with a unique term whose bit is 1 and whose string is good.
    pub triples: u64,
    /// Same, but the string is `0^a` or `1^a`; these give no violation.
    pub bad_string_controls: u64,
    /// Terms with `b_ℓ = 1` and a good string.
    pub good_terms: usize,
    /// Terms with `b_ℓ = 1` and a bad string.
    pub bad_terms: usize,
    pub n: usize,
}

impl UcNoCount {
    /// `triples / 2^n`: the triples are point-disjoint and each needs a flip.
    pub fn certified(&self) -> f64 {
        self.triples as f64 / (1u64 << self.n) as f64
    }
}

/// The violating triples `(x_C, r), (x_C, r̄), (x_C, 1^a)` of a no-instance,
/// one per control setting that uniquely satisfies a term with `b = 1` and a
/// good `r`. Each triple is checked by evaluation.
pub fn uc_no_violations(inst: &UcInstance) -> Result<Vec<TripleCertificate>> {
    if inst.n > 20 {
        return Err(Error::ResourceCap(format!("arity {} exceeds 20", inst.n)));
    }
    if inst.kind != UcKind::No {
        return Ok(Vec::new());
    }
    let amask = full_mask(inst.a);
    let mut out = Vec::new();
    for xc in 0..1u64 << inst.split.c() {
        let TermMatch::Unique(l) = inst.dnf.unique_term(xc) else { continue };
        if !inst.b[l] || !inst.is_good_string(l) {
            continue;
        }
        let r = inst.strings[l];
        let pt = |xa: u64| Point::from_bits(inst.split.join(xc, xa), inst.n);
        let t = TripleCertificate { y1: pt(r), y2: pt(!r & amask), z: pt(amask) };
        if !t.verify(inst) {
            return Err(Error::NotAViolation(format!("constructed triple at control {xc}")));
        }
        out.push(t);
    }
    Ok(out)
}

pub fn count_uc_no_violations(inst: &UcInstance) -> Result<UcNoCount> {
    let triples = uc_no_violations(inst)?.len() as u64;
    let mut count = UcNoCount { triples, bad_string_controls: 0, good_terms: 0, bad_terms: 0, n: inst.n };
    if inst.kind != UcKind::No {
        return Ok(count);
    }
    for l in 0..inst.dnf.len() {
        if inst.b[l] {
            if inst.is_good_string(l) {
                count.good_terms += 1;
            } else {
                count.bad_terms += 1;
            }
        }
    }
    for xc in 0..1u64 << inst.split.c() {
        if let TermMatch::Unique(l) = inst.dnf.unique_term(xc) {
            if inst.b[l] && !inst.is_good_string(l) {
                count.bad_string_controls += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::TruthTable;
    use crate::distance::is_union_closed;
    use crate::rng;

    #[test]
    fn eps_must_be_a_power_of_half() {
        assert_eq!(action_bits(0.0625), Ok(4));
        assert_eq!(action_bits(0.5), Ok(1));
        assert!(matches!(action_bits(0.1), Err(Error::Degenerate(_))));
        assert!(matches!(action_bits(1.0), Err(Error::InvalidEps(_))));
        let mut r = rng::stream(0, 0);
        assert!(build_uc_instance(UcKind::Yes, 7, 0.0625, &mut r).is_err());
        assert!(matches!(build_uc_instance(UcKind::Yes, 8, 0.0625, &mut r), Err(Error::Degenerate(_))));
        assert!(build_uc_instance(UcKind::Yes, 16, 0.0625, &mut r).is_ok());
    }

    #[test]
    fn yes_instances_are_union_closed() {
        for seed in 0..10 {
            let inst = build_uc_instance(UcKind::Yes, 16, 0.0625, &mut rng::stream(seed, 0)).unwrap();
            assert_eq!((inst.split.c(), inst.dnf.term_size, inst.dnf.len()), (12, 3, 1));
            assert!(is_union_closed(&TruthTable::from_function(&inst).unwrap()));
        }
    }

    #[test]
    fn distinct_unique_terms_union_to_one() {
        // n=20, ε=1/2: c=19, L=floor(0.1·2^{4.36})=2.
        let mut r = rng::stream(3, 0);
        let mut checked = 0;
        for _ in 0..50 {
            let inst = build_uc_instance(UcKind::Yes, 20, 0.5, &mut r).unwrap();
            assert!(is_union_closed(&TruthTable::from_function(&inst).unwrap()));
            for _ in 0..2000 {
                let x: u64 = r.gen_range(0..1 << 20);
                let y: u64 = r.gen_range(0..1 << 20);
                let (TermMatch::Unique(l1), TermMatch::Unique(l2)) =
                    (inst.dnf.unique_term(inst.split.control_part(x)), inst.dnf.unique_term(inst.split.control_part(y)))
                else {
                    continue;
                };
                if l1 != l2 {
                    assert!(inst.eval_bits(x | y));
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn no_instance_triples() {
        let mut r = rng::stream(5, 0);
        let mut seen_good = false;
        for _ in 0..60 {
            let inst = build_uc_instance(UcKind::No, 16, 0.0625, &mut r).unwrap();
            let triples = uc_no_violations(&inst).unwrap();
            let count = count_uc_no_violations(&inst).unwrap();
            assert_eq!(count.triples, triples.len() as u64);
            let mut pts = std::collections::HashSet::new();
            for t in &triples {
                assert!(pts.insert(t.y1) && pts.insert(t.y2) && pts.insert(t.z));
                assert_eq!(t.y1.union(t.y2), t.z);
            }
            if !inst.b.iter().any(|&b| b) {
                let t = TruthTable::from_function(&inst).unwrap();
                assert_eq!(t.count_ones(), 0);
                assert_eq!(count.triples, 0);
            }
            if count.good_terms > 0 {
                seen_good = true;
                assert!(count.triples > 0);
            }
        }
        assert!(seen_good);
        let yes = build_uc_instance(UcKind::Yes, 16, 0.0625, &mut r).unwrap();
        assert_eq!(count_uc_no_violations(&yes).unwrap().triples, 0);
    }

    #[test]
    fn bad_strings_give_no_triples() {
        let mut inst = build_uc_instance(UcKind::No, 14, 0.25, &mut rng::stream(1, 0)).unwrap();
        for (l, s) in inst.strings.iter_mut().enumerate() {
            *s = if l % 2 == 0 { 0 } else { 3 };
        }
        inst.b.iter_mut().for_each(|b| *b = true);
        let count = count_uc_no_violations(&inst).unwrap();
        assert_eq!(count.triples, 0);
        assert_eq!(count.good_terms, 0);
        assert!(is_union_closed(&TruthTable::from_function(&inst).unwrap()));
    }
}
