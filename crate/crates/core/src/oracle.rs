//! Slow, literal reference implementations used to check the fast paths.
//!
//! Nothing here shares code with the production modules: spanning trees are
//! enumerated from Prüfer sequences or built by reverse deletion, and the
//! cutting rules are replayed over explicit undirected edge sets with
//! components recomputed from scratch after every decision.

use std::cmp::Ordering;
use std::collections::VecDeque;

/// A canonical partition: members sorted, blocks sorted by their first member.
pub type Partition = Vec<Vec<usize>>;

/// Minimum total weight over all `n^(n-2)` labeled trees on `n` nodes, along
/// with the number of trees inspected. Each tree's lengths are summed in
/// ascending order so equal edge multisets give bit-equal totals.
pub fn exhaustive_min_spanning_weight(n: usize, weight: impl Fn(usize, usize) -> f64) -> (f64, usize) {
    assert!(n >= 2, "need at least two nodes");
    if n == 2 {
        return (weight(0, 1), 1);
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut best = f64::INFINITY;
    let mut count = 0;
    loop {
        let mut lengths: Vec<f64> = prufer_edges(n, &seq).iter().map(|&(a, b)| weight(a, b)).collect();
        lengths.sort_by(f64::total_cmp);
        let total: f64 = lengths.iter().sum();
        best = best.min(total);
        count += 1;
        // odometer increment
        let mut k = 0;
        while k < len {
            seq[k] += 1;
            if seq[k] < n {
                break;
            }
            seq[k] = 0;
            k += 1;
        }
        if k == len {
            break;
        }
    }
    (best, count)
}

/// Decodes a Prüfer sequence into the edges of its labeled tree.
pub fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn order(a: &(usize, usize, f64), b: &(usize, usize, f64)) -> Ordering {
    a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1))
}

/// Reverse-delete MST on the complete graph: drop edges from longest to
/// shortest whenever the graph stays connected. Edges come back as
/// `(min, max, length)`.
pub fn reverse_delete_mst(n: usize, weight: impl Fn(usize, usize) -> f64) -> Vec<(usize, usize, f64)> {
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b, weight(a, b)));
        }
    }
    edges.sort_by(|x, y| order(y, x));
    let mut keep = vec![true; edges.len()];
    for k in 0..edges.len() {
        keep[k] = false;
        let live: Vec<(usize, usize)> = edges
            .iter()
            .zip(&keep)
            .filter(|(_, &kept)| kept)
            .map(|(e, _)| (e.0, e.1))
            .collect();
        if components(n, &live).len() != 1 {
            keep[k] = true;
        }
    }
    edges.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect()
}

/// Connected components of an undirected graph, canonically ordered.
pub fn components(n: usize, edges: &[(usize, usize)]) -> Partition {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut block = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    block.push(v);
                    queue.push_back(v);
                }
            }
        }
        block.sort_unstable();
        out.push(block);
    }
    out.sort();
    out
}

/// Groups nodes by an arbitrary per-node key (a root index, a cluster id).
pub fn partition_of_roots<K: Ord + Copy>(key: &[K]) -> Partition {
    let mut groups: std::collections::BTreeMap<K, Vec<usize>> = Default::default();
    for (i, &k) in key.iter().enumerate() {
        groups.entry(k).or_default().push(i);
    }
    let mut out: Partition = groups.into_values().collect();
    out.sort();
    out
}

/// Hop distance from `root` to every node of a tree.
pub fn bfs_depths(n: usize, edges: &[(usize, usize)], root: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut depth = vec![usize::MAX; n];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    depth
}

/// Replays the two cutting rules directly on an undirected tree.
///
/// Edges are visited from longest to shortest (ties: smaller endpoint pair
/// first). An edge is removed only if its component holds labels of more than
/// one category and both resulting halves still hold a label. The walk ends
/// as soon as every component is pure. Returns the final partition and the
/// number of removed edges.
pub fn replay_rules(n: usize, tree: &[(usize, usize, f64)], labels: &[Option<u32>]) -> (Partition, usize) {
    let mut edges: Vec<(usize, usize, f64)> = tree
        .iter()
        .map(|&(a, b, w)| (a.min(b), a.max(b), w))
        .collect();
    edges.sort_by(|x, y| y.2.total_cmp(&x.2).then(x.0.cmp(&y.0)).then(x.1.cmp(&y.1)));

    let mut live: Vec<(usize, usize)> = edges.iter().map(|e| (e.0, e.1)).collect();
    let categories = |block: &[usize]| {
        let mut cats: Vec<u32> = block.iter().filter_map(|&v| labels[v]).collect();
        cats.sort_unstable();
        cats.dedup();
        cats
    };
    let mut cuts = 0;
    for &(a, b, _) in &edges {
        let comps = components(n, &live);
        if comps.iter().all(|c| categories(c).len() <= 1) {
            break;
        }
        let comp = comps.iter().find(|c| c.contains(&a)).unwrap();
        if categories(comp).len() <= 1 {
            continue;
        }
        let without: Vec<(usize, usize)> = live.iter().copied().filter(|&e| e != (a, b)).collect();
        let split = components(n, &without);
        let side_a = split.iter().find(|c| c.contains(&a)).unwrap();
        let side_b = split.iter().find(|c| c.contains(&b)).unwrap();
        let labeled = |s: &[usize]| s.iter().any(|&v| labels[v].is_some());
        if labeled(side_a) && labeled(side_b) {
            live = without;
            cuts += 1;
        }
    }
    (components(n, &live), cuts)
}
