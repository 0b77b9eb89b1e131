//! Broadcasts on trees: validity, independence, domination and maximality.

use crate::error::{Error, Result};
use crate::tree::{Caterpillar, TreeMetrics};

/// A value `f(v) ≥ 0` for every vertex, indexed densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Broadcast {
    values: Vec<u32>,
}

impl Broadcast {
    pub fn zeros(n: usize) -> Broadcast {
        Broadcast { values: vec![0; n] }
    }

    pub fn from_values(values: Vec<u32>) -> Broadcast {
        Broadcast { values }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> u32 {
        self.values[v]
    }

    #[inline]
    pub fn set(&mut self, v: usize, value: u32) {
        self.values[v] = value;
    }

    pub fn cost(&self) -> u64 {
        self.values.iter().map(|&x| x as u64).sum()
    }

    /// `V_f⁺`, in increasing index order.
    pub fn broadcast_vertices(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(v, _)| v)
            .collect()
    }
}

pub fn cost(b: &Broadcast) -> u64 {
    b.cost()
}

fn check_domain(m: &TreeMetrics, b: &Broadcast) -> Result<()> {
    if m.vertex_count() != b.len() {
        return Err(Error::DomainMismatch {
            expected: m.vertex_count(),
            got: b.len(),
        });
    }
    Ok(())
}

/// First vertex whose value exceeds its eccentricity.
fn first_invalid(m: &TreeMetrics, b: &Broadcast) -> Option<usize> {
    (0..b.len()).find(|&v| b.get(v) > m.eccentricity(v))
}

/// First conflicting pair `(u, v)`, `u < v`, in lexicographic order.
fn first_conflict(m: &TreeMetrics, b: &Broadcast) -> Option<(usize, usize)> {
    let active = b.broadcast_vertices();
    for (i, &u) in active.iter().enumerate() {
        for &v in &active[i + 1..] {
            if m.dist(u, v) <= b.get(u).max(b.get(v)) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn is_valid_broadcast(m: &TreeMetrics, b: &Broadcast) -> Result<bool> {
    check_domain(m, b)?;
    Ok(first_invalid(m, b).is_none())
}

fn require_valid(m: &TreeMetrics, b: &Broadcast) -> Result<()> {
    check_domain(m, b)?;
    match first_invalid(m, b) {
        None => Ok(()),
        Some(v) => Err(Error::InvalidBroadcast {
            vertex: v,
            value: b.get(v),
            eccentricity: m.eccentricity(v),
        }),
    }
}

pub fn is_independent(m: &TreeMetrics, b: &Broadcast) -> Result<bool> {
    require_valid(m, b)?;
    Ok(first_conflict(m, b).is_none())
}

pub fn is_dominating(m: &TreeMetrics, b: &Broadcast) -> Result<bool> {
    require_valid(m, b)?;
    let active = b.broadcast_vertices();
    Ok((0..m.vertex_count()).all(|v| active.iter().any(|&u| m.dist(u, v) <= b.get(u))))
}

/// Maximality test for an independent broadcast, following Erwin's
/// characterisation. The empty broadcast on a non-empty tree is never maximal.
pub fn is_maximal_independent(m: &TreeMetrics, b: &Broadcast) -> Result<bool> {
    require_valid(m, b)?;
    if let Some((u, v)) = first_conflict(m, b) {
        return Err(Error::NotIndependent(u, v));
    }
    let active = b.broadcast_vertices();
    match active.len() {
        0 => Ok(false),
        1 => Ok(b.get(active[0]) == m.eccentricity(active[0])),
        _ => {
            if !is_dominating(m, b)? {
                return Ok(false);
            }
            Ok(active.iter().all(|&v| {
                let nearest = active
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| m.dist(u, v))
                    .min()
                    .expect("at least two broadcast vertices");
                b.get(v) == nearest - 1
            }))
        }
    }
}

/// `f*(v_i)`: the value of `v_i` plus the values of its pendant leaves.
pub fn spine_weights(ct: &Caterpillar, b: &Broadcast) -> Result<Vec<u64>> {
    if b.len() != ct.vertex_count() {
        return Err(Error::DomainMismatch {
            expected: ct.vertex_count(),
            got: b.len(),
        });
    }
    Ok((0..=ct.length())
        .map(|i| {
            let leaves: u64 = (1..=ct.lambda(i) as usize)
                .map(|j| b.get(ct.leaf_vertex(i, j)) as u64)
                .sum();
            b.get(i) as u64 + leaves
        })
        .collect())
}

/// Value `k+1` on `ℓ_0^1` and `ℓ_k^1`, zero elsewhere.
pub fn canonical_broadcast(ct: &Caterpillar) -> Broadcast {
    let k = ct.length();
    let mut b = Broadcast::zeros(ct.vertex_count());
    b.set(ct.leaf_vertex(0, 1), k as u32 + 1);
    b.set(ct.leaf_vertex(k, 1), k as u32 + 1);
    b
}

/// Moves the value of the lowest-indexed broadcasting support vertex onto its
/// lowest-indexed pendant leaf, plus one. `None` when every support vertex is
/// silent.
///
/// On `K_2` both vertices are leaves and support vertices at once, and the
/// move would leave the value above the leaf's eccentricity, so nothing is
/// returned there.
pub fn improve_stem_once(m: &TreeMetrics, b: &Broadcast) -> Option<Broadcast> {
    let t = m.tree();
    if t.vertex_count() <= 2 {
        return None;
    }
    for v in 0..t.vertex_count() {
        if b.get(v) == 0 {
            continue;
        }
        let Some(&leaf) = t.neighbors(v).iter().find(|&&u| t.is_leaf(u)) else {
            continue;
        };
        let mut out = b.clone();
        out.set(v, 0);
        out.set(leaf, b.get(v) + 1);
        return Some(out);
    }
    None
}

/// Applies [`improve_stem_once`] until it no longer fires.
pub fn saturate_stems(m: &TreeMetrics, b: &Broadcast) -> Broadcast {
    let mut cur = b.clone();
    while let Some(next) = improve_stem_once(m, &cur) {
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Tree;

    fn ct(l: &[u32]) -> Caterpillar {
        Caterpillar::new(l.to_vec()).unwrap()
    }

    #[test]
    fn cost_basics() {
        assert_eq!(Broadcast::zeros(5).cost(), 0);
        let c = ct(&[2, 0, 3]);
        assert_eq!(canonical_broadcast(&c).cost(), 6);
        assert_eq!(canonical_broadcast(&ct(&[1, 1])).cost(), 4);
    }

    #[test]
    fn validity() {
        let p = TreeMetrics::new(Tree::path(5));
        let mut b = Broadcast::zeros(5);
        b.set(0, 4);
        assert!(is_valid_broadcast(&p, &b).unwrap());
        let s = TreeMetrics::new(Tree::star(3));
        let mut b = Broadcast::zeros(4);
        b.set(0, 2);
        assert!(!is_valid_broadcast(&s, &b).unwrap());
        assert!(matches!(
            is_independent(&s, &b),
            Err(Error::InvalidBroadcast { vertex: 0, .. })
        ));
        assert!(matches!(
            is_valid_broadcast(&s, &Broadcast::zeros(3)),
            Err(Error::DomainMismatch {
                expected: 4,
                got: 3
            })
        ));
    }

    #[test]
    fn independence() {
        let p = TreeMetrics::new(Tree::path(6));
        let mut b = Broadcast::zeros(6);
        b.set(0, 4);
        b.set(5, 4);
        assert!(is_independent(&p, &b).unwrap());
        let mut b = Broadcast::zeros(6);
        b.set(2, 1);
        b.set(3, 1);
        assert!(!is_independent(&p, &b).unwrap());
        let mut b = Broadcast::zeros(6);
        b.set(3, 3);
        assert!(is_independent(&p, &b).unwrap());
    }

    #[test]
    fn domination() {
        let p = TreeMetrics::new(Tree::path(6));
        assert!(!is_dominating(&p, &Broadcast::zeros(6)).unwrap());
        let mut b = Broadcast::zeros(6);
        b.set(2, p.eccentricity(2));
        assert!(is_dominating(&p, &b).unwrap());
    }

    #[test]
    fn maximality() {
        let p = TreeMetrics::new(Tree::path(6));
        let mut single = Broadcast::zeros(6);
        single.set(1, 4);
        assert!(is_maximal_independent(&p, &single).unwrap());
        single.set(1, 3);
        assert!(!is_maximal_independent(&p, &single).unwrap());

        let mut ends = Broadcast::zeros(6);
        ends.set(0, 2);
        ends.set(5, 2);
        assert!(!is_maximal_independent(&p, &ends).unwrap());
        ends.set(0, 4);
        ends.set(5, 4);
        assert!(is_maximal_independent(&p, &ends).unwrap());

        assert!(!is_maximal_independent(&p, &Broadcast::zeros(6)).unwrap());

        let mut clash = Broadcast::zeros(6);
        clash.set(0, 1);
        clash.set(1, 1);
        assert!(matches!(
            is_maximal_independent(&p, &clash),
            Err(Error::NotIndependent(0, 1))
        ));

        let c = ct(&[2, 1, 0, 3]);
        let m = c.metrics();
        assert!(is_maximal_independent(&m, &canonical_broadcast(&c)).unwrap());
    }

    #[test]
    fn stem_weights() {
        let c = ct(&[1, 1]);
        let mut b = Broadcast::zeros(4);
        b.set(2, 1);
        b.set(3, 1);
        assert_eq!(spine_weights(&c, &b).unwrap(), vec![1, 1]);
        assert_eq!(spine_weights(&c, &Broadcast::zeros(4)).unwrap(), vec![0, 0]);
        let c = ct(&[1, 0, 2]);
        let mut b = Broadcast::zeros(c.vertex_count());
        b.set(1, 1);
        assert_eq!(spine_weights(&c, &b).unwrap(), vec![0, 1, 0]);
        assert!(spine_weights(&c, &Broadcast::zeros(2)).is_err());
    }

    #[test]
    fn stem_improvement() {
        let c = ct(&[1, 1]);
        let m = c.metrics();
        let mut b = Broadcast::zeros(4);
        b.set(0, 1);
        let next = improve_stem_once(&m, &b).unwrap();
        assert_eq!(next.get(c.leaf_vertex(0, 1)), 2);
        assert_eq!(next.get(0), 0);
        assert_eq!(next.cost(), 2);
        assert!(is_independent(&m, &next).unwrap());

        let mut leaves_only = Broadcast::zeros(4);
        leaves_only.set(2, 1);
        assert_eq!(improve_stem_once(&m, &leaves_only), None);

        let k2 = TreeMetrics::new(Tree::path(2));
        let mut b = Broadcast::zeros(2);
        b.set(0, 1);
        assert_eq!(improve_stem_once(&k2, &b), None);
    }
}
