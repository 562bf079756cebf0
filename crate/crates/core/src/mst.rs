//! Exact minimum spanning trees over the complete metric graph.
//!
//! Edges are totally ordered by `(length, min endpoint, max endpoint)`. Under
//! that order the MST is unique, so Prim and Kruskal return the same edge set
//! even when lengths tie, and every downstream step is reproducible.

use std::cmp::Ordering;

use crate::data::{Dataset, Metric, Space};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// An undirected weighted edge, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

impl Edge {
    pub fn new(a: usize, b: usize, length: f64) -> Self {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Edge { u, v, length }
    }

    /// Tie-broken ascending order: shorter first, then smaller endpoint pair.
    pub fn order(&self, other: &Edge) -> Ordering {
        key_cmp(self.length, self.u, self.v, other.length, other.u, other.v)
    }

    pub fn other(&self, end: usize) -> usize {
        if end == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[inline]
fn key_cmp(la: f64, ua: usize, va: usize, lb: f64, ub: usize, vb: usize) -> Ordering {
    la.total_cmp(&lb).then(ua.cmp(&ub)).then(va.cmp(&vb))
}

/// `n - 1` edges connecting all `n` nodes without cycles.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree {
    n: usize,
    edges: Vec<Edge>,
    total_weight: f64,
}

impl SpanningTree {
    /// Wraps an edge list after checking it spans all nodes acyclically.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n < 2 || edges.len() != n - 1 {
            return Err(Error::NotATree {
                n,
                expected: n.saturating_sub(1),
                found: edges.len(),
            });
        }
        let mut uf = UnionFind::new(n);
        for e in &edges {
            if e.u >= n || e.v >= n || e.u == e.v || !uf.union(e.u, e.v) {
                return Err(Error::Invariant(format!(
                    "edge ({}, {}) is out of range or closes a cycle",
                    e.u, e.v
                )));
            }
        }
        let total_weight = edges.iter().map(|e| e.length).sum();
        Ok(SpanningTree {
            n,
            edges,
            total_weight,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Edges sorted by the tie-broken ascending order.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut edges = self.edges.clone();
        edges.sort_by(Edge::order);
        edges
    }
}

pub fn total_weight(t: &SpanningTree) -> f64 {
    t.total_weight()
}

/// Dense Prim: O(n²) distance evaluations, O(n) memory, no distance matrix.
pub fn build_mst_prim(ds: &Dataset, metric: Metric) -> Result<SpanningTree> {
    let space = ds.space(metric)?;
    Ok(prim(&space))
}

pub(crate) fn prim(space: &Space<'_>) -> SpanningTree {
    let n = space.len();
    let mut in_tree = vec![false; n];
    let mut best_len = vec![f64::INFINITY; n];
    let mut best_from = vec![usize::MAX; n];
    let mut edges = Vec::with_capacity(n - 1);

    let mut current = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let mut next = usize::MAX;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let d = space.distance(current, v);
            if best_from[v] == usize::MAX || candidate_better(d, current, v, best_len[v], best_from[v])
            {
                best_len[v] = d;
                best_from[v] = current;
            }
            if next == usize::MAX || less_key(v, next, &best_len, &best_from) {
                next = v;
            }
        }
        in_tree[next] = true;
        edges.push(Edge::new(best_from[next], next, best_len[next]));
        current = next;
    }
    SpanningTree::new(n, edges).expect("prim always yields a spanning tree")
}

// whether edge (a, v) of length `d` beats the current best edge (b, v) of length `best`
#[inline]
fn candidate_better(d: f64, a: usize, v: usize, best: f64, b: usize) -> bool {
    let (ua, va) = if a < v { (a, v) } else { (v, a) };
    let (ub, vb) = if b < v { (b, v) } else { (v, b) };
    key_cmp(d, ua, va, best, ub, vb) == Ordering::Less
}

#[inline]
fn less_key(x: usize, y: usize, len: &[f64], from: &[usize]) -> bool {
    let ex = Edge::new(from[x], x, len[x]);
    let ey = Edge::new(from[y], y, len[y]);
    ex.order(&ey) == Ordering::Less
}

/// Kruskal over the fully sorted complete edge list. O(n²) memory; intended
/// as an independent cross-check of [`build_mst_prim`] at modest `n`.
pub fn build_mst_kruskal(ds: &Dataset, metric: Metric) -> Result<SpanningTree> {
    let space = ds.space(metric)?;
    let n = space.len();
    let mut all = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            all.push(Edge::new(u, v, space.distance(u, v)));
        }
    }
    all.sort_by(Edge::order);
    let mut uf = UnionFind::new(n);
    let mut edges = Vec::with_capacity(n - 1);
    for e in all {
        if uf.union(e.u, e.v) {
            edges.push(e);
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    SpanningTree::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn line(xs: &[f64]) -> Dataset {
        Dataset::numeric(xs.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    fn random_2d(rng: &mut impl Rng, n: usize) -> Dataset {
        Dataset::numeric((0..n).map(|_| vec![rng.gen(), rng.gen()]).collect()).unwrap()
    }

    fn pairs(t: &SpanningTree) -> Vec<(usize, usize)> {
        t.sorted_edges().iter().map(|e| (e.u, e.v)).collect()
    }

    #[test]
    fn two_points() {
        let ds = Dataset::numeric(vec![vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        for t in [
            build_mst_prim(&ds, Metric::Euclidean).unwrap(),
            build_mst_kruskal(&ds, Metric::Euclidean).unwrap(),
        ] {
            assert_eq!(t.edges(), &[Edge::new(0, 1, 5.0)]);
            assert_eq!(total_weight(&t), 5.0);
        }
    }

    #[test]
    fn collinear_points() {
        let ds = line(&[0.0, 1.0, 3.0]);
        for t in [
            build_mst_prim(&ds, Metric::Euclidean).unwrap(),
            build_mst_kruskal(&ds, Metric::Euclidean).unwrap(),
        ] {
            assert_eq!(t.sorted_edges(), vec![Edge::new(0, 1, 1.0), Edge::new(1, 2, 2.0)]);
            assert_eq!(t.total_weight(), 3.0);
        }
    }

    #[test]
    fn six_random_points_match_cayley_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let ds = random_2d(&mut rng, 6);
        let sp = ds.space(Metric::Euclidean).unwrap();
        let (best, count) = oracle::exhaustive_min_spanning_weight(6, |a, b| sp.distance(a, b));
        assert_eq!(count, 1296);
        let prim = build_mst_prim(&ds, Metric::Euclidean).unwrap();
        let kruskal = build_mst_kruskal(&ds, Metric::Euclidean).unwrap();
        assert!((prim.total_weight() - best).abs() <= 1e-12 * best);
        assert!((kruskal.total_weight() - best).abs() <= 1e-12 * best);
    }

    #[test]
    fn equal_distances_give_n_minus_one_times_d() {
        let rows: Vec<Vec<String>> = (0..7).map(|i| vec![format!("s{i}"), format!("t{i}")]).collect();
        let ds = Dataset::categorical(&rows).unwrap();
        let t = build_mst_prim(&ds, Metric::Mismatch).unwrap();
        assert_eq!(t.total_weight(), 6.0 * 2.0);
        // every tie resolves towards the smallest pair: a star around node 0
        assert_eq!(pairs(&t), (1..7).map(|v| (0, v)).collect::<Vec<_>>());
        assert_eq!(pairs(&t), pairs(&build_mst_kruskal(&ds, Metric::Mismatch).unwrap()));
    }

    #[test]
    fn prim_and_kruskal_agree_on_fifty_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for _ in 0..20 {
            let ds = random_2d(&mut rng, 50);
            let p = build_mst_prim(&ds, Metric::Euclidean).unwrap();
            let k = build_mst_kruskal(&ds, Metric::Euclidean).unwrap();
            assert!((p.total_weight() - k.total_weight()).abs() <= 1e-9 * k.total_weight());
            assert_eq!(pairs(&p), pairs(&k));
        }
    }

    #[test]
    fn ties_on_integer_grid_are_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|_| vec![rng.gen_range(0..5) as f64, rng.gen_range(0..5) as f64])
            .collect();
        let ds = Dataset::numeric(rows).unwrap();
        let a = build_mst_prim(&ds, Metric::Euclidean).unwrap();
        let b = build_mst_prim(&ds, Metric::Euclidean).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(pairs(&a), pairs(&build_mst_kruskal(&ds, Metric::Euclidean).unwrap()));
    }

    #[test]
    fn wrong_metric_is_rejected() {
        let ds = line(&[0.0, 1.0]);
        assert!(build_mst_prim(&ds, Metric::Mismatch).is_err());
        assert!(build_mst_kruskal(&ds, Metric::Mismatch).is_err());
    }

    #[test]
    fn spanning_tree_rejects_cycles_and_wrong_counts() {
        assert!(SpanningTree::new(3, vec![Edge::new(0, 1, 1.0)]).is_err());
        assert!(SpanningTree::new(3, vec![Edge::new(0, 1, 1.0), Edge::new(1, 0, 1.0)]).is_err());
        assert!(SpanningTree::new(3, vec![Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0)]).is_ok());
    }
}
