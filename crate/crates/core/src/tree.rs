//! Trees, caterpillars and their metric data.
//!
//! Vertices are dense `usize` indices. Trees built from a [`Caterpillar`] use
//! the spine-first ordering: `v_0 … v_k` occupy indices `0..=k`, followed by
//! the pendant leaves grouped by spine index with ascending leaf number.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite simple tree stored as adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree from an edge list, checking simplicity and connectivity.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if vertex_count == 0 {
            return Err(Error::InvalidTree(
                "a tree needs at least one vertex".into(),
            ));
        }
        if edges.len() != vertex_count - 1 {
            return Err(Error::InvalidTree(format!(
                "{} vertices need {} edges, got {}",
                vertex_count,
                vertex_count - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidTree(format!(
                    "edge ({u}, {v}) is out of range"
                )));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::InvalidTree(format!("duplicate edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = Tree { adj };
        if tree.bfs(0).contains(&u32::MAX) {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        Ok(tree)
    }

    /// The path on `n` vertices, numbered along the path.
    pub fn path(n: usize) -> Tree {
        assert!(n >= 1, "path needs at least one vertex");
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Tree::new(n, &edges).expect("path is a tree")
    }

    /// The star `K_{1,n}` with centre 0 and leaves `1..=n`.
    pub fn star(n: usize) -> Tree {
        let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
        Tree::new(n + 1, &edges).expect("star is a tree")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    /// A vertex adjacent to at least one leaf.
    pub fn is_support(&self, v: usize) -> bool {
        self.adj[v].iter().any(|&u| self.is_leaf(u))
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.adj.len().saturating_sub(1));
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Sorted degree sequence, a cheap isomorphism invariant.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Exact all-pairs distances, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    d: Vec<u32>,
}

impl DistanceTable {
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }
}

/// One BFS per vertex.
pub fn all_pairs_distances(t: &Tree) -> DistanceTable {
    let n = t.vertex_count();
    let mut d = Vec::with_capacity(n * n);
    for u in 0..n {
        d.extend(t.bfs(u));
    }
    DistanceTable { n, d }
}

pub fn eccentricities(t: &Tree) -> Vec<u32> {
    TreeMetrics::new(t.clone()).ecc
}

pub fn diameter(t: &Tree) -> u32 {
    TreeMetrics::new(t.clone()).diameter()
}

pub fn radius(t: &Tree) -> u32 {
    TreeMetrics::new(t.clone()).radius()
}

/// A tree bundled with its distance table and eccentricities, so that the
/// broadcast predicates and the oracle do not recompute them.
#[derive(Debug, Clone)]
pub struct TreeMetrics {
    tree: Tree,
    dist: DistanceTable,
    ecc: Vec<u32>,
}

impl TreeMetrics {
    pub fn new(tree: Tree) -> TreeMetrics {
        let dist = all_pairs_distances(&tree);
        let ecc = (0..tree.vertex_count())
            .map(|u| dist.row(u).iter().copied().max().unwrap_or(0))
            .collect();
        TreeMetrics { tree, dist, ecc }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn vertex_count(&self) -> usize {
        self.tree.vertex_count()
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist.get(u, v)
    }

    pub fn distances(&self) -> &DistanceTable {
        &self.dist
    }

    #[inline]
    pub fn eccentricity(&self, v: usize) -> u32 {
        self.ecc[v]
    }

    pub fn eccentricities(&self) -> &[u32] {
        &self.ecc
    }

    pub fn diameter(&self) -> u32 {
        self.ecc.iter().copied().max().unwrap_or(0)
    }

    pub fn radius(&self) -> u32 {
        self.ecc.iter().copied().min().unwrap_or(0)
    }
}

/// Role of a vertex in a caterpillar-derived tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexRole {
    /// Spine vertex `v_i`.
    Spine(usize),
    /// Pendant leaf `ℓ_i^j`, with `j` counted from 1.
    Leaf(usize, usize),
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexRole::Spine(i) => write!(f, "v{i}"),
            VertexRole::Leaf(i, j) => write!(f, "l{i}_{j}"),
        }
    }
}

impl FromStr for VertexRole {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || format!("not a caterpillar vertex name: {s:?}");
        if let Some(rest) = s.strip_prefix('v') {
            return rest.parse().map(VertexRole::Spine).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix('l') {
            let (i, j) = rest.split_once('_').ok_or_else(bad)?;
            let i = i.parse().map_err(|_| bad())?;
            let j: usize = j.parse().map_err(|_| bad())?;
            if j == 0 {
                return Err(bad());
            }
            return Ok(VertexRole::Leaf(i, j));
        }
        Err(bad())
    }
}

/// A caterpillar of length `k ≥ 1`, given by its pendant counts `λ_0 … λ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Caterpillar {
    lambdas: Vec<u32>,
    /// `offsets[i]` is the dense index of `ℓ_i^1`.
    offsets: Vec<usize>,
}

impl Caterpillar {
    pub fn new(lambdas: Vec<u32>) -> Result<Caterpillar> {
        if lambdas.len() < 2 {
            return Err(Error::InvalidCaterpillar(format!(
                "need at least two spine vertices, got {}",
                lambdas.len()
            )));
        }
        if lambdas[0] == 0 || lambdas[lambdas.len() - 1] == 0 {
            return Err(Error::InvalidCaterpillar(
                "both spine ends must carry at least one leaf".into(),
            ));
        }
        let mut offsets = Vec::with_capacity(lambdas.len());
        let mut next = lambdas.len();
        for &l in &lambdas {
            offsets.push(next);
            next += l as usize;
        }
        Ok(Caterpillar { lambdas, offsets })
    }

    /// Parses `"1,0,2"` style text.
    pub fn parse(text: &str) -> Result<Caterpillar> {
        let lambdas = text
            .split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|_| {
                    Error::InvalidCaterpillar(format!(
                        "{:?} is not a non-negative integer",
                        p.trim()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Caterpillar::new(lambdas)
    }

    pub fn lambdas(&self) -> &[u32] {
        &self.lambdas
    }

    #[inline]
    pub fn lambda(&self, i: usize) -> u32 {
        self.lambdas[i]
    }

    /// Spine length `k` (number of spine edges).
    pub fn length(&self) -> usize {
        self.lambdas.len() - 1
    }

    pub fn diameter(&self) -> u32 {
        self.length() as u32 + 2
    }

    pub fn vertex_count(&self) -> usize {
        self.lambdas.len() + self.lambda_total() as usize
    }

    pub fn lambda_total(&self) -> u32 {
        self.lambdas.iter().sum()
    }

    pub fn is_trunk(&self, i: usize) -> bool {
        self.lambdas[i] == 0
    }

    pub fn reversed(&self) -> Caterpillar {
        let mut l = self.lambdas.clone();
        l.reverse();
        Caterpillar::new(l).expect("reversal preserves validity")
    }

    #[inline]
    pub fn spine_vertex(&self, i: usize) -> usize {
        debug_assert!(i < self.lambdas.len());
        i
    }

    /// Dense index of `ℓ_i^j` (`j ≥ 1`).
    #[inline]
    pub fn leaf_vertex(&self, i: usize, j: usize) -> usize {
        debug_assert!(j >= 1 && j <= self.lambdas[i] as usize);
        self.offsets[i] + j - 1
    }

    pub fn vertex_of(&self, role: VertexRole) -> Option<usize> {
        match role {
            VertexRole::Spine(i) if i < self.lambdas.len() => Some(i),
            VertexRole::Leaf(i, j)
                if i < self.lambdas.len() && j >= 1 && j <= self.lambdas[i] as usize =>
            {
                Some(self.leaf_vertex(i, j))
            }
            _ => None,
        }
    }

    pub fn role(&self, v: usize) -> VertexRole {
        if v < self.lambdas.len() {
            return VertexRole::Spine(v);
        }
        // offsets is non-decreasing; the owning spine index is the last one
        // whose first leaf is at or before v.
        let i = self.offsets.partition_point(|&o| o <= v) - 1;
        VertexRole::Leaf(i, v - self.offsets[i] + 1)
    }

    pub fn to_tree(&self) -> Tree {
        caterpillar_to_tree(self)
    }

    pub fn metrics(&self) -> TreeMetrics {
        TreeMetrics::new(self.to_tree())
    }
}

impl fmt::Display for Caterpillar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CT(")?;
        for (i, l) in self.lambdas.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

pub fn caterpillar_to_tree(ct: &Caterpillar) -> Tree {
    let k = ct.length();
    let mut edges = Vec::with_capacity(ct.vertex_count() - 1);
    for i in 1..=k {
        edges.push((i - 1, i));
    }
    for i in 0..=k {
        for j in 1..=ct.lambda(i) as usize {
            edges.push((i, ct.leaf_vertex(i, j)));
        }
    }
    Tree::new(ct.vertex_count(), &edges).expect("caterpillar is a tree")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpineKind {
    Stem,
    Trunk,
}

/// Stem/trunk classification of the spine with the usual counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineClass {
    pub kinds: Vec<SpineKind>,
    /// `λ(CT)`, the number of leaves.
    pub lambda_total: u32,
    /// `τ(CT)`, the number of trunks.
    pub tau: u32,
    /// Number of spine vertices with exactly one pendant leaf.
    pub n1: u32,
}

pub fn classify_spine(ct: &Caterpillar) -> SpineClass {
    let kinds: Vec<_> = ct
        .lambdas()
        .iter()
        .map(|&l| {
            if l == 0 {
                SpineKind::Trunk
            } else {
                SpineKind::Stem
            }
        })
        .collect();
    SpineClass {
        tau: kinds.iter().filter(|k| **k == SpineKind::Trunk).count() as u32,
        lambda_total: ct.lambda_total(),
        n1: ct.lambdas().iter().filter(|&&l| l == 1).count() as u32,
        kinds,
    }
}

/// First index `i` with `λ_i = λ_{i+1} = 0`, if any.
pub fn first_adjacent_trunks(ct: &Caterpillar) -> Option<usize> {
    ct.lambdas().windows(2).position(|w| w[0] == 0 && w[1] == 0)
}

pub fn has_adjacent_trunks(ct: &Caterpillar) -> bool {
    first_adjacent_trunks(ct).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(l: &[u32]) -> Caterpillar {
        Caterpillar::new(l.to_vec()).unwrap()
    }

    #[test]
    fn ct11_is_p4() {
        let t = ct(&[1, 1]).to_tree();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.edges(), vec![(0, 1), (0, 2), (1, 3)]);
        assert_eq!(t.degree_sequence(), Tree::path(4).degree_sequence());
        let m = TreeMetrics::new(t);
        // l0_1 = 2, l1_1 = 3
        assert_eq!(m.dist(2, 3), 3);
    }

    #[test]
    fn figure_one_counts() {
        let c = ct(&[1, 0, 2, 1, 1, 2, 1, 0, 3]);
        assert_eq!(c.to_tree().vertex_count(), 20);
        assert_eq!(diameter(&c.to_tree()), 10);
        let s = classify_spine(&c);
        assert_eq!((s.lambda_total, s.tau), (11, 2));
        assert!(!has_adjacent_trunks(&c));
    }

    #[test]
    fn rejects_bare_ends() {
        assert!(matches!(
            Caterpillar::new(vec![2, 0]),
            Err(Error::InvalidCaterpillar(_))
        ));
        assert!(Caterpillar::new(vec![3]).is_err());
        assert!(Caterpillar::parse("1,x").is_err());
    }

    #[test]
    fn path_and_star_metrics() {
        let m = TreeMetrics::new(Tree::path(4));
        assert_eq!(m.dist(0, 3), 3);
        let s = TreeMetrics::new(Tree::star(3));
        assert_eq!(s.dist(1, 2), 2);
        assert_eq!(s.eccentricity(0), 1);
        assert_eq!(s.eccentricity(3), 2);
        assert_eq!(s.radius(), 1);
        let single = TreeMetrics::new(Tree::path(1));
        assert_eq!(single.eccentricity(0), 0);
        assert_eq!(single.diameter(), 0);
    }

    #[test]
    fn spine_classification() {
        let s = classify_spine(&ct(&[1, 1]));
        assert_eq!((s.lambda_total, s.tau, s.n1), (2, 0, 2));
        let s = classify_spine(&ct(&[3, 0, 3]));
        assert_eq!((s.lambda_total, s.tau), (6, 1));
        assert_eq!(s.kinds[1], SpineKind::Trunk);
        assert!(has_adjacent_trunks(&ct(&[1, 0, 0, 1])));
        assert!(!has_adjacent_trunks(&ct(&[1, 1])));
    }

    #[test]
    fn roles_round_trip() {
        let c = ct(&[1, 0, 2, 1]);
        for v in 0..c.vertex_count() {
            let role = c.role(v);
            assert_eq!(c.vertex_of(role), Some(v));
            assert_eq!(role.to_string().parse::<VertexRole>().unwrap(), role);
        }
        assert_eq!(c.role(4), VertexRole::Leaf(0, 1));
        assert_eq!(c.role(6), VertexRole::Leaf(2, 2));
        assert_eq!(c.vertex_of(VertexRole::Leaf(1, 1)), None);
    }

    #[test]
    fn tree_validation() {
        assert!(Tree::new(3, &[(0, 1)]).is_err());
        assert!(Tree::new(3, &[(0, 1), (0, 1)]).is_err());
        assert!(Tree::new(4, &[(0, 1), (1, 0), (2, 3)]).is_err());
        assert!(Tree::new(2, &[(1, 1)]).is_err());
        assert!(Tree::new(4, &[(0, 1), (2, 3), (3, 2)]).is_err());
    }
}
