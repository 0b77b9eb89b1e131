//! Exact broadcast independence number of small trees.
//!
//! Every optimal independent broadcast is maximal, and a maximal independent
//! broadcast with at least two broadcasting vertices gives each of them one
//! less than the distance to its nearest fellow. So the optimum is the best of
//! the single-vertex broadcasts `f(v) = e(v)` and, over every set `S` of
//! pairwise non-adjacent vertices with `|S| ≥ 2`, the sum of
//! `min(e(v), d(v, S∖v) − 1)`. That assignment is itself an independent
//! broadcast, so the maximum is attained and exact.

use crate::broadcast::Broadcast;
use crate::error::{Error, Result};
use crate::tree::TreeMetrics;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest candidate set the subset search accepts.
    pub budget: usize,
    /// Leave support vertices (neighbours of leaves) out of the candidate set.
    pub prune_support: bool,
    /// Treat leaves hanging from the same vertex as interchangeable and only
    /// try prefixes of each such group.
    pub twin_leaves: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            budget: 26,
            prune_support: true,
            twin_leaves: true,
        }
    }
}

impl OracleOptions {
    pub fn unpruned() -> Self {
        OracleOptions {
            prune_support: false,
            twin_leaves: false,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: u64,
    pub witness: Broadcast,
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// Branches cut by the bound.
    pub pruned: u64,
    pub candidates: usize,
}

struct Search<'a> {
    m: &'a TreeMetrics,
    cand: Vec<usize>,
    /// `suffix_ecc[i]` = sum of eccentricities of candidates `i..`.
    suffix_ecc: Vec<u64>,
    /// For a twin leaf, the position of the previous twin in `cand`.
    prev_twin: Vec<Option<usize>>,
    chosen: Vec<usize>,
    /// Current capped value of each chosen vertex (`d_min − 1`, before the
    /// eccentricity cap).
    nearest: Vec<u32>,
    in_set: Vec<bool>,
    best: u64,
    best_set: Vec<usize>,
    nodes: u64,
    pruned: u64,
}

impl Search<'_> {
    fn value(&self) -> u64 {
        if self.chosen.len() < 2 {
            return 0;
        }
        self.chosen
            .iter()
            .zip(&self.nearest)
            .map(|(&v, &d)| (self.m.eccentricity(v).min(d - 1)) as u64)
            .sum()
    }

    fn dfs(&mut self, i: usize) {
        self.nodes += 1;
        let cur = self.value();
        // The current vertices can only lose value as more are added, and a
        // newcomer is worth at most its eccentricity.
        let optimistic = if self.chosen.len() < 2 {
            self.chosen
                .iter()
                .map(|&v| self.m.eccentricity(v) as u64)
                .sum::<u64>()
                + self.suffix_ecc[i]
        } else {
            cur + self.suffix_ecc[i]
        };
        if optimistic <= self.best {
            self.pruned += 1;
            return;
        }
        if self.chosen.len() >= 2 && cur > self.best {
            self.best = cur;
            self.best_set = self.chosen.clone();
        }
        if i == self.cand.len() {
            return;
        }
        let v = self.cand[i];
        let twin_ok = match self.prev_twin[i] {
            Some(p) => self.in_set[p],
            None => true,
        };
        let compatible = self.chosen.iter().all(|&u| self.m.dist(u, v) >= 2);
        if twin_ok && compatible {
            let saved = self.nearest.clone();
            let mut d_v = u32::MAX;
            for (slot, &u) in self.chosen.iter().enumerate() {
                let d = self.m.dist(u, v);
                d_v = d_v.min(d);
                self.nearest[slot] = self.nearest[slot].min(d);
            }
            self.chosen.push(v);
            self.nearest.push(d_v);
            self.in_set[i] = true;
            self.dfs(i + 1);
            self.in_set[i] = false;
            self.chosen.pop();
            self.nearest = saved;
        }
        self.dfs(i + 1);
    }
}

/// Exact `β_b` by branch and bound over vertex subsets.
pub fn exact_beta_b(m: &TreeMetrics, options: &OracleOptions) -> Result<OracleResult> {
    let t = m.tree();
    let n = t.vertex_count();
    let prune = options.prune_support && n >= 3;
    let mut cand: Vec<usize> = (0..n).filter(|&v| !(prune && t.is_support(v))).collect();
    if cand.len() > options.budget {
        return Err(Error::BudgetExceeded {
            what: "candidate vertices",
            needed: cand.len(),
            budget: options.budget,
        });
    }
    // Decreasing eccentricity; twins stay adjacent because they share it.
    cand.sort_by_key(|&v| (std::cmp::Reverse(m.eccentricity(v)), v));

    let mut prev_twin = vec![None; cand.len()];
    if options.twin_leaves {
        for i in 1..cand.len() {
            let (a, b) = (cand[i - 1], cand[i]);
            if t.is_leaf(a) && t.is_leaf(b) && n >= 3 && t.neighbors(a) == t.neighbors(b) {
                prev_twin[i] = Some(i - 1);
            }
        }
    }

    let mut suffix_ecc = vec![0u64; cand.len() + 1];
    for i in (0..cand.len()).rev() {
        suffix_ecc[i] = suffix_ecc[i + 1] + m.eccentricity(cand[i]) as u64;
    }

    // Best single broadcaster over all vertices, not only candidates.
    let (single_v, single_val) = (0..n)
        .map(|v| (v, m.eccentricity(v) as u64))
        .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });

    let mut s = Search {
        m,
        suffix_ecc,
        prev_twin,
        chosen: Vec::new(),
        nearest: Vec::new(),
        in_set: vec![false; cand.len()],
        best: single_val,
        best_set: Vec::new(),
        nodes: 0,
        pruned: 0,
        cand,
    };
    s.dfs(0);

    let mut witness = Broadcast::zeros(n);
    if s.best_set.is_empty() {
        if n > 0 {
            witness.set(single_v, single_val as u32);
        }
    } else {
        for &v in &s.best_set {
            let d = s
                .best_set
                .iter()
                .filter(|&&u| u != v)
                .map(|&u| m.dist(u, v))
                .min()
                .expect("two or more vertices");
            witness.set(v, m.eccentricity(v).min(d - 1));
        }
    }
    Ok(OracleResult {
        optimum: s.best,
        witness,
        nodes: s.nodes,
        pruned: s.pruned,
        candidates: s.cand.len(),
    })
}

/// Brute force over all assignments `f(v) ∈ 0..=e(v)`, straight from the
/// definition. Only meant for tiny trees.
pub fn naive_beta_b(m: &TreeMetrics, cap: usize) -> Result<u64> {
    let n = m.vertex_count();
    if n > cap {
        return Err(Error::BudgetExceeded {
            what: "vertices",
            needed: n,
            budget: cap,
        });
    }
    let mut values = vec![0u32; n];
    let mut best = 0;
    naive_rec(m, 0, &mut values, 0, &mut best);
    Ok(best)
}

fn naive_rec(m: &TreeMetrics, v: usize, values: &mut [u32], cost: u64, best: &mut u64) {
    if v == values.len() {
        *best = (*best).max(cost);
        return;
    }
    for x in 0..=m.eccentricity(v) {
        if x > 0 {
            let clash = (0..v).any(|u| values[u] > 0 && m.dist(u, v) <= values[u].max(x));
            if clash {
                continue;
            }
        }
        values[v] = x;
        naive_rec(m, v + 1, values, cost + x as u64, best);
    }
    values[v] = 0;
}
