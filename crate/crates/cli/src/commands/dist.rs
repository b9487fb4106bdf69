use anyhow::{bail, Result};
use setfam::distance::{dist_int_bounds, dist_int_exact_with, dist_uc_exact, DEFAULT_COVER_CAP, DEFAULT_NODE_CAP};

use crate::source::Source;
use crate::{Cli, DistArgs, DistMethod, Output, Prop};

pub fn run(cli: &Cli, a: &DistArgs) -> Result<Output> {
    let table = Source::parse(&a.function, a.n)?.to_table()?;
    let cap = cli.cap.map_or(DEFAULT_COVER_CAP, |c| c as usize);
    let result = match (a.prop, a.method) {
        (Prop::Int, DistMethod::Exact) => dist_int_exact_with(&table, cap, DEFAULT_NODE_CAP)?,
        (Prop::Int, DistMethod::Bounds) => dist_int_bounds(&table, cap)?,
        (Prop::Uc, DistMethod::Exact) => dist_uc_exact(&table)?,
        (Prop::Uc, DistMethod::Bounds) => bail!("no bounds method for union-closed distance"),
    };
    let mut data = serde_json::to_vec(&result.to_json())?;
    data.push(b'\n');
    Ok(Output { data, notes: Vec::new(), code: 0 })
}
