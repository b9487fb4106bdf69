//! Exact minimum vertex cover by branch and bound.

use crate::error::{Error, Result};

type Bits = Vec<u64>;

fn has(b: &[u64], i: usize) -> bool {
    b[i >> 6] >> (i & 63) & 1 == 1
}

fn clear(b: &mut [u64], i: usize) {
    b[i >> 6] &= !(1 << (i & 63));
}

fn iter(b: &[u64]) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                (k << 6) | t
            })
        })
    })
}

fn degree(adj: &[u64], alive: &[u64]) -> u32 {
    adj.iter().zip(alive).map(|(a, b)| (a & b).count_ones()).sum()
}

struct Search<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    nodes: u64,
    node_cap: u64,
}

impl Search<'_> {
    fn greedy_matching(&self, alive: &[u64]) -> (usize, Vec<usize>) {
        let mut free = alive.to_vec();
        let mut size = 0;
        let mut ends = Vec::new();
        for v in iter(alive) {
            if !has(&free, v) {
                continue;
            }
            let nb = self.adj[v].iter().zip(&free).position(|(a, b)| a & b != 0);
            if let Some(k) = nb {
                let u = (k << 6) | (self.adj[v][k] & free[k]).trailing_zeros() as usize;
                clear(&mut free, v);
                clear(&mut free, u);
                ends.extend([v, u]);
                size += 1;
            }
        }
        (size, ends)
    }

    fn run(&mut self, mut alive: Bits, chosen: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::ResourceCap(format!("vertex cover search exceeded {} nodes", self.node_cap)));
        }
        let base = chosen.len();
        // Drop isolated vertices; a degree-1 vertex is covered by its neighbour.
        loop {
            let mut changed = false;
            for v in iter(&alive.clone()) {
                if !has(&alive, v) {
                    continue;
                }
                match degree(&self.adj[v], &alive) {
                    0 => {
                        clear(&mut alive, v);
                        changed = true;
                    }
                    1 => {
                        let u = iter(&self.adj[v]).find(|&u| has(&alive, u)).expect("degree 1");
                        chosen.push(u);
                        clear(&mut alive, u);
                        clear(&mut alive, v);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        let (lb, _) = self.greedy_matching(&alive);
        if chosen.len() + lb >= self.best.len() {
            chosen.truncate(base);
            return Ok(());
        }
        let pick = iter(&alive).max_by_key(|&v| (degree(&self.adj[v], &alive), std::cmp::Reverse(v)));
        let Some(v) = pick else {
            self.best = chosen.clone();
            chosen.truncate(base);
            return Ok(());
        };

        let mut without_v = alive.clone();
        clear(&mut without_v, v);
        chosen.push(v);
        self.run(without_v, chosen)?;
        chosen.pop();

        let mut rest = alive;
        let nbrs: Vec<usize> = iter(&self.adj[v]).filter(|&u| has(&rest, u)).collect();
        if chosen.len() + nbrs.len() < self.best.len() {
            for &u in &nbrs {
                clear(&mut rest, u);
            }
            clear(&mut rest, v);
            let mark = chosen.len();
            chosen.extend(&nbrs);
            self.run(rest, chosen)?;
            chosen.truncate(mark);
        }
        chosen.truncate(base);
        Ok(())
    }
}

/// A minimum vertex cover of the graph, vertices ascending.
pub(crate) fn min_vertex_cover(adj_lists: &[Vec<usize>], node_cap: u64) -> Result<Vec<usize>> {
    let m = adj_lists.len();
    let words = m.div_ceil(64);
    let adj: Vec<Bits> = adj_lists
        .iter()
        .map(|nb| {
            let mut b = vec![0u64; words];
            for &u in nb {
                b[u >> 6] |= 1 << (u & 63);
            }
            b
        })
        .collect();
    let mut alive = vec![0u64; words];
    for v in 0..m {
        alive[v >> 6] |= 1 << (v & 63);
    }
    let mut s = Search { adj: &adj, best: Vec::new(), nodes: 0, node_cap };
    // Endpoints of a maximal matching form a cover: the starting incumbent.
    s.best = s.greedy_matching(&alive).1;
    s.best.push(usize::MAX);
    let mut chosen = Vec::new();
    s.run(alive, &mut chosen)?;
    let mut best = s.best;
    if best.last() == Some(&usize::MAX) {
        best.pop();
    }
    best.sort_unstable();
    Ok(best)
}
