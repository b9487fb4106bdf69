//! Where a Boolean function comes from on the command line.

use std::fs;
use std::io::BufReader;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use setfam::boolfn::{BooleanFunction, Builtin, BuiltinFn, Point, TruthTable, TruthTableJson, MAX_TABLE_ARITY};
use setfam::hardness::{build, Instance, InstanceSpec};

/// A function named by `--fn`: a builtin, an inline list of 1-inputs, a
/// BFTT1 file, a truth-table JSON file or an instance spec.
#[derive(Debug)]
pub enum Source {
    Builtin(BuiltinFn),
    Table(TruthTable),
    Instance(Box<Instance>, InstanceSpec),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonSource {
    Document { spec: InstanceSpec },
    Spec(InstanceSpec),
    Table(TruthTableJson),
}

fn builtin(name: &str) -> Option<Builtin> {
    match name {
        "const0" => Some(Builtin::Const(false)),
        "const1" => Some(Builtin::Const(true)),
        "majority" => Some(Builtin::Majority),
        _ => name.strip_prefix("dictator-")?.parse().ok().map(Builtin::Dictator),
    }
}

fn parse_ones(list: &str, n: Option<usize>) -> Result<TruthTable> {
    let list = list.trim().trim_start_matches('{').trim_end_matches('}');
    let points = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Point::parse)
        .collect::<setfam::Result<Vec<_>>>()?;
    let arity = match (points.first(), n) {
        (Some(p), _) => p.arity(),
        (None, Some(n)) => n,
        (None, None) => bail!("an empty list of 1-inputs needs --n"),
    };
    if let Some(p) = points.iter().find(|p| p.arity() != arity) {
        bail!("point {p} has arity {}, expected {arity}", p.arity());
    }
    Ok(TruthTable::from_ones(arity, points.iter().map(|p| p.bits()))?)
}

impl Source {
    pub fn parse(spec: &str, n: Option<usize>) -> Result<Self> {
        let source = if let Some(kind) = builtin(spec) {
            let Some(arity) = n else { bail!("--fn {spec} needs --n") };
            if let Builtin::Dictator(k) = kind {
                if k == 0 || k > arity {
                    bail!("dictator coordinate {k} outside 1..={arity}");
                }
            }
            Source::Builtin(BuiltinFn { kind, arity })
        } else if let Some(list) = spec.strip_prefix("ones:") {
            Source::Table(parse_ones(list, n)?)
        } else {
            Self::load(Path::new(spec))?
        };
        if let Some(n) = n {
            if source.arity() != n {
                bail!("--fn {spec} has arity {}, but --n is {n}", source.arity());
            }
        }
        Ok(source)
    }

    fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        if bytes.starts_with(b"BFTT1\n") {
            return Ok(Source::Table(TruthTable::read_bftt1(BufReader::new(&bytes[..]))?));
        }
        let parsed: JsonSource = serde_json::from_slice(&bytes)
            .with_context(|| format!("{} is neither BFTT1 nor a known JSON shape", path.display()))?;
        Ok(match parsed {
            JsonSource::Document { spec } | JsonSource::Spec(spec) => Self::from_spec(spec)?,
            JsonSource::Table(t) => Source::Table(TruthTable::from_json(&t)?),
        })
    }

    pub fn from_spec(spec: InstanceSpec) -> Result<Self> {
        let spec = InstanceSpec::from_json(&spec.to_json())?;
        Ok(Source::Instance(Box::new(build(&spec)?), spec))
    }

    /// Materialise as a truth table.
    pub fn to_table(&self) -> Result<TruthTable> {
        match self {
            Source::Table(t) => Ok(t.clone()),
            _ if self.arity() > MAX_TABLE_ARITY => {
                bail!("arity {} is too large to tabulate (max {MAX_TABLE_ARITY})", self.arity())
            }
            _ => Ok(TruthTable::from_function(self)?),
        }
    }
}

impl BooleanFunction for Source {
    fn arity(&self) -> usize {
        match self {
            Source::Builtin(b) => b.arity(),
            Source::Table(t) => t.arity(),
            Source::Instance(i, _) => i.arity(),
        }
    }

    fn eval(&self, x: Point) -> bool {
        match self {
            Source::Builtin(b) => b.eval(x),
            Source::Table(t) => t.eval(x),
            Source::Instance(i, _) => i.eval(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_and_inline_lists() {
        let d = Source::parse("dictator-2", Some(3)).unwrap();
        assert!(d.eval(Point::parse("010").unwrap()));
        assert!(Source::parse("dictator-4", Some(3)).is_err());
        assert!(Source::parse("majority", None).is_err());
        let t = Source::parse("ones:{01,10}", None).unwrap().to_table().unwrap();
        assert_eq!(t.ones().collect::<Vec<_>>(), vec![1, 2]);
        assert!(Source::parse("ones:{01,100}", None).is_err());
        assert!(Source::parse("ones:{01}", Some(3)).is_err());
        assert_eq!(Source::parse("ones:{}", Some(3)).unwrap().to_table().unwrap().count_ones(), 0);
    }
}
