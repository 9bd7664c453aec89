//! Exact maximum-clique search (branch and bound with greedy-coloring bounds).
//!
//! Loops are ignored: a clique is a set of pairwise adjacent distinct vertices.

use serde::{Deserialize, Serialize};

use super::{Adjacency, BitSet};
use crate::error::{Error, Result};

/// Default number of search nodes before giving up with an error.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSearch {
    /// Largest clique size found (the clique number unless `capped`).
    pub size: usize,
    /// A clique of that size, vertex indices ascending.
    pub clique: Vec<usize>,
    /// Search nodes expanded.
    pub nodes: u64,
    /// True when the search stopped early because `size` reached the cap.
    pub capped: bool,
}

struct Search<'a> {
    neighbors: &'a [BitSet],
    cap: usize,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
}

fn loopless_neighbors(adj: &Adjacency) -> Vec<BitSet> {
    (0..adj.len())
        .map(|i| {
            let mut r = adj.row(i).clone();
            r.remove(i);
            r
        })
        .collect()
}

/// Greedy sequential coloring of `p`: returns vertices in nondecreasing
/// color order together with their colors (1-based).
fn color_sort(neighbors: &[BitSet], p: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(p.count());
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = p.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&neighbors[v]);
            uncolored.remove(v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.best.len() >= self.cap
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let (order, colors) = color_sort(self.neighbors, &p);
        for idx in (0..order.len()).rev() {
            if r.len() + colors[idx] <= self.best.len() || self.done() {
                return Ok(());
            }
            let v = order[idx];
            r.push(v);
            if r.len() >= self.cap {
                self.best = r.clone();
                r.pop();
                return Ok(());
            }
            let mut np = p.clone();
            np.intersect_with(&self.neighbors[v]);
            if np.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, np)?;
            }
            r.pop();
            p.remove(v);
        }
        Ok(())
    }
}

/// Exact clique number of `adj`. With `cap = Some(c)` the search stops as soon
/// as a clique of size `c` is found. Exceeding `budget` search nodes is an
/// error, never an approximate answer.
pub fn max_clique(adj: &Adjacency, cap: Option<usize>, budget: u64) -> Result<CliqueSearch> {
    let neighbors = loopless_neighbors(adj);
    let mut s = Search {
        neighbors: &neighbors,
        cap: cap.unwrap_or(usize::MAX),
        budget,
        nodes: 0,
        best: Vec::new(),
    };
    if !adj.is_empty() {
        s.expand(&mut Vec::new(), BitSet::full(adj.len()))?;
    }
    let mut clique = s.best;
    clique.sort_unstable();
    Ok(CliqueSearch {
        size: clique.len(),
        capped: clique.len() >= s.cap,
        clique,
        nodes: s.nodes,
    })
}

/// Calls `visit` on every clique of exactly `size` vertices (ascending
/// indices, lexicographic order). Returns the number of cliques visited.
/// Fails once more than `budget` partial cliques have been expanded.
pub fn for_each_clique(
    adj: &Adjacency,
    size: usize,
    budget: u64,
    mut visit: impl FnMut(&[usize]),
) -> Result<u64> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        neighbors: &[BitSet],
        size: usize,
        r: &mut Vec<usize>,
        p: &BitSet,
        nodes: &mut u64,
        budget: u64,
        count: &mut u64,
        visit: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        if r.len() == size {
            *count += 1;
            visit(r);
            return Ok(());
        }
        if r.len() + p.count() < size {
            return Ok(());
        }
        for v in p.iter() {
            let mut np = p.clone();
            np.intersect_with(&neighbors[v]);
            // keep only later vertices so each clique is produced once
            for u in np.clone().iter().take_while(|&u| u < v) {
                np.remove(u);
            }
            r.push(v);
            rec(neighbors, size, r, &np, nodes, budget, count, visit)?;
            r.pop();
        }
        Ok(())
    }
    let neighbors = loopless_neighbors(adj);
    let mut nodes = 0;
    let mut count = 0;
    if size == 0 {
        visit(&[]);
        return Ok(1);
    }
    rec(
        &neighbors,
        size,
        &mut Vec::new(),
        &BitSet::full(adj.len()),
        &mut nodes,
        budget,
        &mut count,
        &mut visit,
    )?;
    Ok(count)
}
