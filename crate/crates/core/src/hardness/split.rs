//! Random partition of the coordinates into action and control variables.

use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use crate::boolfn::full_mask;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Split {
    pub n: usize,
    /// Mask of the action coordinates `A`.
    pub action: u64,
    #[serde(skip)]
    action_pos: Vec<u8>,
    #[serde(skip)]
    control_pos: Vec<u8>,
}

fn positions(mask: u64) -> Vec<u8> {
    (0..64u8).filter(|&i| mask >> i & 1 == 1).collect()
}

fn gather(x: u64, pos: &[u8]) -> u64 {
    pos.iter().enumerate().fold(0, |acc, (j, &p)| acc | (x >> p & 1) << j)
}

fn scatter(local: u64, pos: &[u8]) -> u64 {
    pos.iter().enumerate().fold(0, |acc, (j, &p)| acc | (local >> j & 1) << p)
}

impl Split {
    pub fn new(n: usize, action: u64) -> Self {
        let control = full_mask(n) & !action;
        Split { n, action, action_pos: positions(action), control_pos: positions(control) }
    }

    /// A uniformly random `a`-subset of `[n]` as the action set.
    pub fn sample<R: Rng + ?Sized>(n: usize, a: usize, rng: &mut R) -> Self {
        let action = index::sample(rng, n, a).iter().fold(0u64, |m, i| m | 1 << i);
        Split::new(n, action)
    }

    pub fn a(&self) -> usize {
        self.action_pos.len()
    }

    pub fn c(&self) -> usize {
        self.control_pos.len()
    }

    pub fn control(&self) -> u64 {
        full_mask(self.n) & !self.action
    }

    /// `x_A` packed into the low `a` bits.
    pub fn action_part(&self, x: u64) -> u64 {
        gather(x, &self.action_pos)
    }

    /// `x_C` packed into the low `c` bits.
    pub fn control_part(&self, x: u64) -> u64 {
        gather(x, &self.control_pos)
    }

    /// The point of `{0,1}^n` with the given packed control and action parts.
    pub fn join(&self, control: u64, action: u64) -> u64 {
        scatter(control, &self.control_pos) | scatter(action, &self.action_pos)
    }
}
