//! Exhaustive ground truth for tiny tile counts.
//!
//! Enumerates every connected tile subset containing a fixed origin tile of
//! the tessellation and records the minimal boundary-edge count per size.
//! Tile-transitivity of {p,q} tessellations makes the anchored minimum equal
//! to the global minimum. The tessellation fragment is produced by the spiral
//! simulator: a complete k-layered animal contains every tile within
//! tile-distance k-1 of the origin, so growing n layers covers all subsets of
//! size up to n.
//!
//! Enumeration is the standard duplicate-free scheme: candidates popped at a
//! level stay excluded for the rest of that subtree, so each subset appears
//! exactly once. `dedupe` additionally verifies that claim with a set of
//! canonical sorted tile-id keys.

use std::collections::HashSet;

use crate::context::TessContext;
use crate::error::{Error, Result};
use crate::spiral::SpiralAnimal;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n_max: u32,
    pub node_budget: u64,
    pub dedupe: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            n_max: 8,
            node_budget: std::env::var("HYPER_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
                .unwrap_or(50_000_000),
            dedupe: false,
        }
    }
}

/// Minimal perimeter and number of anchored minimizers per size 1..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeMinimum {
    pub min_perimeter: u64,
    /// Count of origin-anchored minimizers, not free isomorphism classes.
    pub extremal_count: u64,
}

struct Search<'a> {
    adj: &'a [Vec<u32>],
    n_max: usize,
    tile_edges: u64,
    nodes: u64,
    node_budget: u64,
    in_set: Vec<bool>,
    seen: Vec<bool>,
    stack: Vec<u32>,
    perimeter: i64,
    best: Vec<Option<(u64, u64)>>,
    canon: Option<HashSet<Vec<u32>>>,
}

impl Search<'_> {
    fn record(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            let best = self.best[self.n_max].map(|(m, _)| m);
            return Err(Error::Budget {
                needed: self.nodes,
                budget: self.node_budget,
            })
            .map_err(|e| {
                // flag the partial result in the message
                if let Some(m) = best {
                    Error::domain(format!(
                        "node budget exhausted ({e}); best non-exhaustive minimum so far: {m}"
                    ))
                } else {
                    e
                }
            });
        }
        if let Some(set) = &mut self.canon {
            let mut key = self.stack.clone();
            key.sort_unstable();
            if !set.insert(key) {
                return Err(Error::domain(
                    "duplicate subset enumerated; search invariant broken".to_string(),
                ));
            }
        }
        let size = self.stack.len();
        let per = self.perimeter as u64;
        let entry = &mut self.best[size];
        match entry {
            None => *entry = Some((per, 1)),
            Some((min, cnt)) => {
                if per < *min {
                    *entry = Some((per, 1));
                } else if per == *min {
                    *cnt += 1;
                }
            }
        }
        Ok(())
    }

    fn add(&mut self, t: u32) {
        let shared = self.adj[t as usize]
            .iter()
            .filter(|&&v| self.in_set[v as usize])
            .count() as i64;
        self.perimeter += self.tile_edges as i64 - 2 * shared;
        self.in_set[t as usize] = true;
        self.stack.push(t);
    }

    fn remove(&mut self, t: u32) {
        self.in_set[t as usize] = false;
        self.stack.pop();
        let shared = self.adj[t as usize]
            .iter()
            .filter(|&&v| self.in_set[v as usize])
            .count() as i64;
        self.perimeter -= self.tile_edges as i64 - 2 * shared;
    }

    /// Lower bound: even if every remaining tile removed p boundary edges,
    /// a branch at perimeter P cannot beat `target` once
    /// P - p * (n_max - size) >= target.
    fn prunable(&self) -> bool {
        if let Some((incumbent, _)) = self.best[self.n_max] {
            let remaining = (self.n_max - self.stack.len()) as i64;
            self.perimeter - self.tile_edges as i64 * remaining >= incumbent as i64
        } else {
            false
        }
    }

    fn dfs(&mut self, mut untried: Vec<u32>) -> Result<()> {
        let mut popped = Vec::new();
        while let Some(t) = untried.pop() {
            popped.push(t);
            self.add(t);
            self.record()?;
            if self.stack.len() < self.n_max && !self.prunable() {
                let mut added = Vec::new();
                for &v in &self.adj[t as usize] {
                    if !self.seen[v as usize] {
                        self.seen[v as usize] = true;
                        added.push(v);
                    }
                }
                let mut child = untried.clone();
                child.extend_from_slice(&added);
                self.dfs(child)?;
                for &v in &added {
                    self.seen[v as usize] = false;
                }
            }
            self.remove(t);
        }
        Ok(())
    }
}

/// Exact minima for every size 1..=n, by exhaustive anchored enumeration.
pub fn min_perimeters_up_to(
    ctx: &TessContext,
    n: u32,
    cfg: &SearchConfig,
) -> Result<Vec<SizeMinimum>> {
    if n == 0 {
        return Err(Error::domain("size must be at least 1"));
    }
    if n > cfg.n_max {
        return Err(Error::domain(format!(
            "size {n} exceeds configured n_max {}",
            cfg.n_max
        )));
    }
    let mut patch = SpiralAnimal::new(ctx)?;
    patch.grow_layers(n)?;
    let adj = patch.tile_adjacency();
    let n_max = n as usize;
    let mut search = Search {
        adj: &adj,
        n_max,
        tile_edges: ctx.p() as u64,
        nodes: 0,
        node_budget: cfg.node_budget,
        in_set: vec![false; adj.len()],
        seen: vec![false; adj.len()],
        stack: Vec::with_capacity(n_max),
        perimeter: 0,
        best: vec![None; n_max + 1],
        canon: if cfg.dedupe { Some(HashSet::new()) } else { None },
    };
    search.seen[0] = true;
    search.add(0);
    search.record()?;
    if n_max > 1 {
        let mut untried = Vec::new();
        for &v in &adj[0] {
            search.seen[v as usize] = true;
            untried.push(v);
        }
        search.dfs(untried)?;
    }
    search
        .best
        .iter()
        .skip(1)
        .map(|entry| {
            entry
                .map(|(min_perimeter, extremal_count)| SizeMinimum {
                    min_perimeter,
                    extremal_count,
                })
                .ok_or_else(|| Error::domain("size not reached".to_string()))
        })
        .collect()
}

/// Minimal perimeter over all n-tile animals, with the anchored minimizer count.
pub fn min_perimeter_exhaustive(
    ctx: &TessContext,
    n: u32,
    cfg: &SearchConfig,
) -> Result<(u64, u64)> {
    let all = min_perimeters_up_to(ctx, n, cfg)?;
    let last = &all[(n - 1) as usize];
    Ok((last.min_perimeter, last.extremal_count))
}
