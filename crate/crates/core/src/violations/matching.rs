//! Matchings: general-graph maximum matching on the disjointness graph of
//! 1-inputs, and the perfect matchings between complementary weight levels.

use std::collections::{HashMap, VecDeque};

use super::certificate::IViolatingPair;
use crate::boolfn::{binomial, full_mask, Point, TruthTable};
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// Default cap on the number of 1-inputs fed to the matching solver.
pub const DEFAULT_MATCHING_CAP: usize = 1 << 12;

/// Maximum cardinality matching by Edmonds' blossom algorithm, seeded with a
/// greedy matching. Returns `mate[v]`, `usize::MAX` for exposed vertices.
pub fn maximum_matching(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut mate = vec![NONE; n];
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(&u) = adj[v].iter().find(|&&u| mate[u] == NONE && u != v) {
                mate[v] = u;
                mate[u] = v;
            }
        }
    }
    let mut b = Blossom::new(n);
    for root in 0..n {
        if mate[root] == NONE {
            let mut u = b.find_path(adj, &mate, root);
            while u != NONE {
                let pv = b.parent[u];
                let ppv = mate[pv];
                mate[u] = pv;
                mate[pv] = u;
                u = ppv;
            }
        }
    }
    mate
}

struct Blossom {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn new(n: usize) -> Self {
        Blossom {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            lca_mark: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&mut self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        self.lca_mark.fill(false);
        loop {
            a = self.base[a];
            self.lca_mark[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if self.lca_mark[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its exposed far end.
    fn find_path(&mut self, adj: &[Vec<usize>], mate: &[usize], root: usize) -> usize {
        let n = adj.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &adj[v] {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return to;
                    }
                    self.used[mate[to]] = true;
                    self.queue.push_back(mate[to]);
                }
            }
        }
        NONE
    }
}

/// Disjointness graph on the nonzero 1-inputs of `f`: vertex list and adjacency.
pub(crate) fn disjointness_graph(f: &TruthTable, cap: usize) -> Result<(Vec<u64>, Vec<Vec<usize>>)> {
    let ones: Vec<u64> = f.ones().filter(|&x| x != 0).collect();
    if ones.len() > cap {
        return Err(Error::ResourceCap(format!("{} 1-inputs exceed the cap of {cap}", ones.len())));
    }
    let mut adj = vec![Vec::new(); ones.len()];
    for i in 0..ones.len() {
        for j in i + 1..ones.len() {
            if ones[i] & ones[j] == 0 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    Ok((ones, adj))
}

/// A maximum set of point-disjoint I-violating pairs of `f`. A 1-input at
/// `0^n` forms the pair `(0^n, 0^n)` on its own.
pub fn max_disjoint_i_pairs(f: &TruthTable, cap: usize) -> Result<(usize, Vec<IViolatingPair>)> {
    let n = f.arity();
    let (ones, adj) = disjointness_graph(f, cap)?;
    let mate = maximum_matching(&adj);
    let mut pairs = Vec::new();
    if f.get(0) {
        pairs.push(IViolatingPair { x: Point::zero(n), y: Point::zero(n) });
    }
    for (v, &m) in mate.iter().enumerate() {
        if m != NONE && v < m {
            pairs.push(IViolatingPair { x: Point::from_bits(ones[v], n), y: Point::from_bits(ones[m], n) });
        }
    }
    Ok((pairs.len(), pairs))
}

/// Perfect matching between the weight-`w` and weight-`(a-w)` levels of
/// `{0,1}^a` with every pair `(p, q)` satisfying `p ≤ q`. Needs `2w < a`.
pub fn level_matching(a: usize, w: usize) -> Result<Vec<(Point, Point)>> {
    if 2 * w >= a || a > 63 {
        return Err(Error::LevelOutOfRange { a, w });
    }
    let size = binomial(a, w);
    if size > 1 << 16 {
        return Err(Error::ResourceCap(format!("level of {size} points")));
    }
    let full = full_mask(a);
    let lower: Vec<u64> = level(a, w);
    let upper: Vec<u64> = level(a, a - w);
    let index: HashMap<u64, usize> = upper.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    // Each p sits below the C(a-w, a-2w) supersets of weight a-w.
    let adj: Vec<Vec<usize>> = lower
        .iter()
        .map(|&p| {
            let free = full & !p;
            level_in(free, a - 2 * w).into_iter().map(|extra| index[&(p | extra)]).collect()
        })
        .collect();
    let mut match_right = vec![NONE; upper.len()];
    let mut seen = vec![0u32; upper.len()];
    for (round, l) in (0..lower.len()).enumerate() {
        if !kuhn(l, &adj, &mut match_right, &mut seen, round as u32 + 1) {
            unreachable!("containment graph between complementary levels is regular");
        }
    }
    let mut out = vec![(Point::zero(a), Point::zero(a)); lower.len()];
    for (r, &l) in match_right.iter().enumerate() {
        out[l] = (Point::from_bits(lower[l], a), Point::from_bits(upper[r], a));
    }
    Ok(out)
}

fn kuhn(v: usize, adj: &[Vec<usize>], match_right: &mut [usize], seen: &mut [u32], stamp: u32) -> bool {
    for &r in &adj[v] {
        if seen[r] == stamp {
            continue;
        }
        seen[r] = stamp;
        if match_right[r] == NONE || kuhn(match_right[r], adj, match_right, seen, stamp) {
            match_right[r] = v;
            return true;
        }
    }
    false
}

/// All weight-`k` subsets of the low `a` bits, ascending.
fn level(a: usize, k: usize) -> Vec<u64> {
    level_in(full_mask(a), k)
}

/// All weight-`k` submasks of `mask`, ascending.
fn level_in(mask: u64, k: usize) -> Vec<u64> {
    let x = Point::from_bits(mask, 63);
    let band = crate::boolfn::Band::new(k, k, 63).expect("k ≤ |mask|");
    let mut v: Vec<u64> = crate::boolfn::enumerate_down_band(x, band, u64::MAX)
        .expect("no cap")
        .map(|p| p.bits())
        .collect();
    v.sort_unstable();
    v
}
