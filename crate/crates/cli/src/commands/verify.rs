use anyhow::{bail, Context, Result};
use setfam::violations::Certificate;

use crate::csvout;
use crate::source::Source;
use crate::{Cli, Output, VerifyArgs};

pub fn run(_cli: &Cli, a: &VerifyArgs) -> Result<Output> {
    let f = Source::parse(&a.function, a.n)?;
    let certs: Vec<(String, Certificate)> = match (&a.cert, &a.csv) {
        (Some(json), _) => vec![("cert".into(), serde_json::from_str(json).context("parsing certificate")?)],
        (None, Some(path)) => {
            let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            let (header, rows) = csvout::read(&bytes)?;
            let Some(col) = header.iter().position(|h| h == "certificate") else {
                bail!("{} has no certificate column", path.display());
            };
            let mut out = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                let cell = row.get(col).unwrap_or("");
                if !cell.is_empty() {
                    let cert = serde_json::from_str(cell).with_context(|| format!("row {}", i + 1))?;
                    out.push((format!("row {}", i + 1), cert));
                }
            }
            out
        }
        (None, None) => bail!("pass --cert or --csv"),
    };
    let mut notes = Vec::new();
    let mut valid = 0;
    for (label, cert) in &certs {
        let ok = cert.arity() == setfam::boolfn::BooleanFunction::arity(&f) && cert.verify(&f);
        valid += ok as usize;
        if !ok {
            notes.push(format!("{label}: invalid"));
        }
    }
    let summary = serde_json::json!({ "certificates": certs.len(), "valid": valid });
    let mut data = serde_json::to_vec(&summary)?;
    data.push(b'\n');
    Ok(Output { data, notes, code: if valid == certs.len() { 0 } else { 1 } })
}
