//! Violation certificates and their JSON form.

use serde::{Deserialize, Serialize};

use crate::boolfn::{BooleanFunction, Point};
use crate::error::{Error, Result};

/// Two 1-inputs with empty intersection. `x == y` only at `0^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IViolatingPair {
    pub x: Point,
    pub y: Point,
}

/// 1-inputs whose union is a 0-input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UcViolatingTuple {
    pub members: Vec<Point>,
    pub end: Point,
}

/// `f(y1) = f(y2) = 1`, `z = y1 ∨ y2` and `f(z) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TripleCertificate {
    pub y1: Point,
    pub y2: Point,
    pub z: Point,
}

impl IViolatingPair {
    pub fn verify<F: BooleanFunction + ?Sized>(&self, f: &F) -> bool {
        self.x.arity() == f.arity()
            && self.y.arity() == f.arity()
            && self.x.is_disjoint(self.y)
            && f.eval(self.x)
            && f.eval(self.y)
    }
}

impl UcViolatingTuple {
    pub fn union(&self) -> Option<Point> {
        let first = *self.members.first()?;
        Some(self.members.iter().fold(first, |acc, &p| acc.union(p)))
    }

    pub fn verify<F: BooleanFunction + ?Sized>(&self, f: &F) -> bool {
        self.union() == Some(self.end)
            && self.end.arity() == f.arity()
            && !f.eval(self.end)
            && self.members.iter().all(|&p| f.eval(p))
    }

    /// No member can be dropped without shrinking the union.
    pub fn is_minimal(&self) -> bool {
        let k = self.members.len();
        (0..k).all(|skip| {
            let rest = self
                .members
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(0u64, |acc, (_, p)| acc | p.bits());
            rest != self.end.bits()
        })
    }
}

impl TripleCertificate {
    pub fn verify<F: BooleanFunction + ?Sized>(&self, f: &F) -> bool {
        self.z.arity() == f.arity()
            && self.y1.union(self.y2) == self.z
            && f.eval(self.y1)
            && f.eval(self.y2)
            && !f.eval(self.z)
    }
}

/// Any of the three violation kinds, as carried by tester reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CertificateRepr", try_from = "CertificateRepr")]
pub enum Certificate {
    IPair(IViolatingPair),
    UcTuple(UcViolatingTuple),
    Triple(TripleCertificate),
}

impl Certificate {
    pub fn verify<F: BooleanFunction + ?Sized>(&self, f: &F) -> bool {
        match self {
            Certificate::IPair(c) => c.verify(f),
            Certificate::UcTuple(c) => c.verify(f),
            Certificate::Triple(c) => c.verify(f),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Certificate::IPair(c) => c.x.arity(),
            Certificate::UcTuple(c) => c.end.arity(),
            Certificate::Triple(c) => c.z.arity(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
enum CertificateRepr {
    IPair { n: usize, x: u64, y: u64 },
    UcTuple { n: usize, members: Vec<u64>, end: u64 },
    Triple { n: usize, y1: u64, y2: u64, z: u64 },
}

impl From<Certificate> for CertificateRepr {
    fn from(c: Certificate) -> Self {
        let n = c.arity();
        match c {
            Certificate::IPair(p) => CertificateRepr::IPair { n, x: p.x.bits(), y: p.y.bits() },
            Certificate::UcTuple(t) => CertificateRepr::UcTuple {
                n,
                members: t.members.iter().map(|p| p.bits()).collect(),
                end: t.end.bits(),
            },
            Certificate::Triple(t) => {
                CertificateRepr::Triple { n, y1: t.y1.bits(), y2: t.y2.bits(), z: t.z.bits() }
            }
        }
    }
}

impl TryFrom<CertificateRepr> for Certificate {
    type Error = Error;

    fn try_from(r: CertificateRepr) -> Result<Self> {
        Ok(match r {
            CertificateRepr::IPair { n, x, y } => {
                Certificate::IPair(IViolatingPair { x: Point::new(x, n)?, y: Point::new(y, n)? })
            }
            CertificateRepr::UcTuple { n, members, end } => Certificate::UcTuple(UcViolatingTuple {
                members: members.into_iter().map(|m| Point::new(m, n)).collect::<Result<_>>()?,
                end: Point::new(end, n)?,
            }),
            CertificateRepr::Triple { n, y1, y2, z } => Certificate::Triple(TripleCertificate {
                y1: Point::new(y1, n)?,
                y2: Point::new(y2, n)?,
                z: Point::new(z, n)?,
            }),
        })
    }
}

