use std::fs::File;
use std::io::BufWriter;

use anyhow::Result;
use serde_json::json;
use setfam::distance::{is_intersecting, is_union_closed};
use setfam::hardness::{build, count_int_no_violations, count_uc_no_violations, Instance, InstanceSpec, IntKind, UcKind};
use setfam::boolfn::{BooleanFunction, TruthTable, MAX_TABLE_ARITY};

use crate::{Cli, GenArgs, Output};

const CHECK_ARITY: usize = 20;

pub fn run(cli: &Cli, a: &GenArgs) -> Result<Output> {
    let spec = InstanceSpec::new(a.kind, a.n, a.eps, cli.seed);
    let inst = build(&spec)?;
    let mut notes = Vec::new();
    let mut checks = serde_json::Map::new();
    let arity = inst.arity();
    let table = if arity <= CHECK_ARITY || (a.bftt1.is_some() && arity <= MAX_TABLE_ARITY) {
        Some(TruthTable::from_function(&inst)?)
    } else {
        None
    };
    match (&inst, &table) {
        (Instance::Talagrand(t), _) => {
            notes.push(format!("terms: {}, term size: {}", t.len(), t.term_size));
        }
        (Instance::Int(i), Some(t)) if i.kind != IntKind::OneSidedNo || arity <= CHECK_ARITY => {
            let ok = is_intersecting(t);
            notes.push(format!("intersecting: {ok}"));
            checks.insert("intersecting".into(), json!(ok));
            if i.kind == IntKind::No && arity <= CHECK_ARITY {
                let c = count_int_no_violations(i)?;
                notes.push(format!("disjoint violating pairs: {} (distance >= {})", c.pairs, c.certified()));
                checks.insert("violation_pairs".into(), json!(c.pairs));
            }
        }
        (Instance::Uc(u), Some(t)) => {
            let ok = is_union_closed(t);
            notes.push(format!("union-closed: {ok}"));
            checks.insert("union_closed".into(), json!(ok));
            if u.kind == UcKind::No {
                let c = count_uc_no_violations(u)?;
                notes.push(format!("disjoint violating triples: {} (distance >= {})", c.triples, c.certified()));
                checks.insert("violation_triples".into(), json!(c.triples));
                checks.insert("good_terms".into(), json!(c.good_terms));
                checks.insert("bad_terms".into(), json!(c.bad_terms));
            }
        }
        _ => notes.push(format!("arity {arity}: exhaustive checks skipped")),
    }
    if let Some(path) = &a.bftt1 {
        let Some(t) = &table else {
            anyhow::bail!("arity {arity} is too large for BFTT1 (max {MAX_TABLE_ARITY})");
        };
        t.write_bftt1(BufWriter::new(File::create(path)?))?;
        notes.push(format!("wrote {}", path.display()));
    }
    let doc = json!({
        "setfam": crate::VERSION,
        "spec": spec,
        "arity": arity,
        "checks": checks,
        "instance": inst,
    });
    let mut data = serde_json::to_vec_pretty(&doc)?;
    data.push(b'\n');
    Ok(Output { data, notes, code: 0 })
}
