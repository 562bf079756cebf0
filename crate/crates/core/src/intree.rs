//! In-tree orientation of a spanning tree and the forest produced by cutting it.
//!
//! Every node points at its parent; the root points at itself. Cutting the
//! edge above a node turns that node into the root of its own sub-tree, so the
//! forest never needs to know about undirected adjacency again.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::mst::SpanningTree;

/// A spanning tree oriented towards a single root.
#[derive(Debug, Clone, PartialEq)]
pub struct InTree {
    parent: Vec<usize>,
    parent_len: Vec<f64>,
    root: usize,
    // children in ascending index order, stored as offsets into `child_list`
    child_start: Vec<usize>,
    child_list: Vec<usize>,
    // breadth-first order from the root; parents always precede children
    order: Vec<usize>,
    // pre-order interval [enter, exit) of each node's full sub-tree
    enter: Vec<usize>,
    exit: Vec<usize>,
}

/// Orients `tree` so that every node reaches `root` along parent links.
///
/// Nodes are discovered breadth-first with neighbours taken in ascending index
/// order, which fixes the parent of every node deterministically.
pub fn orient(tree: &SpanningTree, root: usize) -> Result<InTree> {
    let n = tree.n_nodes();
    if root >= n {
        return Err(Error::InvalidRoot { index: root, n });
    }
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for e in tree.edges() {
        adj[e.u].push((e.v, e.length));
        adj[e.v].push((e.u, e.length));
    }
    for list in &mut adj {
        list.sort_by_key(|&(v, _)| v);
    }

    let mut parent = vec![usize::MAX; n];
    let mut parent_len = vec![0.0; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([root]);
    parent[root] = root;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &(v, len) in &adj[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                parent_len[v] = len;
                queue.push_back(v);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Invariant("spanning tree is disconnected".into()));
    }

    let mut counts = vec![0usize; n + 1];
    for v in 0..n {
        if v != root {
            counts[parent[v] + 1] += 1;
        }
    }
    for i in 0..n {
        counts[i + 1] += counts[i];
    }
    let child_start = counts.clone();
    let mut child_list = vec![0; n - 1];
    let mut fill = counts;
    for (v, &p) in parent.iter().enumerate() {
        if v != root {
            child_list[fill[p]] = v;
            fill[p] += 1;
        }
    }

    let mut it = InTree {
        parent,
        parent_len,
        root,
        child_start,
        child_list,
        order,
        enter: vec![0; n],
        exit: vec![0; n],
    };
    it.number_preorder();
    Ok(it)
}

impl InTree {
    fn number_preorder(&mut self) {
        let mut clock = 0;
        let mut stack = vec![(self.root, false)];
        while let Some((u, done)) = stack.pop() {
            if done {
                self.exit[u] = clock;
                continue;
            }
            self.enter[u] = clock;
            clock += 1;
            stack.push((u, true));
            let (a, b) = (self.child_start[u], self.child_start[u + 1]);
            for k in (a..b).rev() {
                stack.push((self.child_list[k], false));
            }
        }
    }

    /// Whether `v` lies below `top` (inclusive) in the in-tree, ignoring any cuts.
    pub fn is_descendant(&self, v: usize, top: usize) -> bool {
        self.enter[top] <= self.enter[v] && self.enter[v] < self.exit[top]
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, i: usize) -> usize {
        self.parent[i]
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    pub fn parent_len(&self, i: usize) -> f64 {
        self.parent_len[i]
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.child_list[self.child_start[i]..self.child_start[i + 1]]
    }

    /// Nodes in breadth-first order from the root.
    pub fn bfs_order(&self) -> &[usize] {
        &self.order
    }

    /// Number of parent hops from `i` to the root.
    pub fn depth(&self, mut i: usize) -> usize {
        let mut d = 0;
        while self.parent[i] != i {
            i = self.parent[i];
            d += 1;
        }
        d
    }

    /// A fresh, uncut forest over this tree.
    pub fn forest(&self) -> Forest<'_> {
        Forest {
            tree: self,
            parent: self.parent.clone(),
            roots: BTreeSet::from([self.root]),
        }
    }
}

/// The in-tree after some of its edges have been removed.
#[derive(Debug, Clone)]
pub struct Forest<'a> {
    tree: &'a InTree,
    parent: Vec<usize>,
    roots: BTreeSet<usize>,
}

impl<'a> Forest<'a> {
    pub fn tree(&self) -> &'a InTree {
        self.tree
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, i: usize) -> usize {
        self.parent[i]
    }

    /// Length of the edge to the current parent; 0 for roots.
    pub fn parent_len(&self, i: usize) -> f64 {
        if self.is_root(i) {
            0.0
        } else {
            self.tree.parent_len(i)
        }
    }

    pub fn is_root(&self, i: usize) -> bool {
        self.parent[i] == i
    }

    pub fn roots(&self) -> &BTreeSet<usize> {
        &self.roots
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    /// Removes the edge from `child` to its parent, making `child` a root.
    pub fn cut(&mut self, child: usize) -> Result<()> {
        if self.is_root(child) {
            return Err(Error::CutAtRoot(child));
        }
        self.parent[child] = child;
        self.roots.insert(child);
        Ok(())
    }

    /// Children whose link to `i` is still intact.
    pub fn children(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.tree
            .children(i)
            .iter()
            .copied()
            .filter(move |&c| self.parent[c] == i)
    }

    /// Follows parent links from `i` to its root.
    pub fn find_root(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    /// All nodes that reach the root through `top`, `top` included.
    pub fn subtree(&self, top: usize) -> Vec<usize> {
        let mut out = vec![top];
        let mut k = 0;
        while k < out.len() {
            let u = out[k];
            out.extend(self.children(u));
            k += 1;
        }
        out
    }

    /// Root of every node, computed in one breadth-first sweep.
    pub fn root_assignment(&self) -> Vec<usize> {
        let mut root_of = vec![usize::MAX; self.len()];
        for &v in self.tree.bfs_order() {
            let p = self.parent[v];
            root_of[v] = if p == v { v } else { root_of[p] };
        }
        root_of
    }
}

/// Memoized root lookup for a forest that is no longer being cut.
///
/// Each query stores the answer for every node on the walked chain, so later
/// queries through the same nodes stop early.
#[derive(Debug, Clone)]
pub struct RootCache {
    memo: Vec<usize>,
}

impl RootCache {
    pub fn new(n: usize) -> Self {
        RootCache {
            memo: vec![usize::MAX; n],
        }
    }

    pub fn find_root(&mut self, forest: &Forest<'_>, i: usize) -> usize {
        let mut path = Vec::new();
        let mut j = i;
        let root = loop {
            if self.memo[j] != usize::MAX {
                break self.memo[j];
            }
            let p = forest.parent(j);
            if p == j {
                break j;
            }
            path.push(j);
            j = p;
        };
        self.memo[j] = root;
        for v in path {
            self.memo[v] = root;
        }
        root
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mst::{Edge, SpanningTree};
    use crate::oracle;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path_tree(n: usize) -> SpanningTree {
        SpanningTree::new(n, (1..n).map(|i| Edge::new(i - 1, i, 1.0)).collect()).unwrap()
    }

    fn random_tree(rng: &mut impl Rng, n: usize) -> SpanningTree {
        let edges = (1..n)
            .map(|i| Edge::new(rng.gen_range(0..i), i, rng.gen::<f64>()))
            .collect();
        SpanningTree::new(n, edges).unwrap()
    }

    #[test]
    fn single_edge() {
        let it = orient(&path_tree(2), 0).unwrap();
        assert_eq!(it.parents(), &[0, 0]);
        assert_eq!(it.parent_len(1), 1.0);
        assert_eq!(it.parent_len(0), 0.0);
    }

    #[test]
    fn path_rooted_at_center() {
        let it = orient(&path_tree(3), 1).unwrap();
        assert_eq!(it.parents(), &[1, 1, 1]);
        assert_eq!(it.children(1), &[0, 2]);
    }

    #[test]
    fn invalid_root() {
        assert!(matches!(
            orient(&path_tree(3), 3),
            Err(Error::InvalidRoot { index: 3, n: 3 })
        ));
    }

    #[test]
    fn depths_match_bfs_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for _ in 0..10 {
            let t = random_tree(&mut rng, 50);
            let r = rng.gen_range(0..50);
            let it = orient(&t, r).unwrap();
            let pairs: Vec<(usize, usize)> = t.edges().iter().map(|e| (e.u, e.v)).collect();
            let depth = oracle::bfs_depths(50, &pairs, r);
            for v in 0..50 {
                assert_eq!(it.depth(v), depth[v]);
                // ancestors per parent chain agree with pre-order intervals
                let mut chain = vec![v];
                while chain[chain.len() - 1] != r {
                    chain.push(it.parent(chain[chain.len() - 1]));
                }
                for top in 0..50 {
                    assert_eq!(it.is_descendant(v, top), chain.contains(&top));
                }
            }
            let mut undirected: Vec<(usize, usize)> = (0..50)
                .filter(|&v| v != r)
                .map(|v| (v.min(it.parent(v)), v.max(it.parent(v))))
                .collect();
            undirected.sort();
            let mut expected = pairs.clone();
            expected.sort();
            assert_eq!(undirected, expected);
        }
    }

    #[test]
    fn cut_path_in_the_middle() {
        // 0 -> 1 -> 2 with root 2
        let it = orient(&path_tree(3), 2).unwrap();
        let mut f = it.forest();
        f.cut(1).unwrap();
        assert_eq!(f.roots().iter().copied().collect::<Vec<_>>(), [1, 2]);
        assert_eq!(f.find_root(0), 1);
        assert_eq!(f.find_root(2), 2);
        assert!(matches!(f.cut(1), Err(Error::CutAtRoot(1))));
        // the in-tree itself is untouched
        assert_eq!(it.parents(), &[1, 2, 2]);
    }

    #[test]
    fn cut_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_tree(&mut rng, 30);
        let it = orient(&t, 0).unwrap();
        let mut f = it.forest();
        for v in 1..30 {
            f.cut(v).unwrap();
        }
        assert_eq!(f.n_roots(), 30);
        assert_eq!(f.root_assignment(), (0..30).collect::<Vec<_>>());
    }

    #[test]
    fn single_cut_matches_undirected_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let n = rng.gen_range(2..60);
            let t = random_tree(&mut rng, n);
            let it = orient(&t, rng.gen_range(0..n)).unwrap();
            let mut f = it.forest();
            let child = loop {
                let c = rng.gen_range(0..n);
                if c != it.root() {
                    break c;
                }
            };
            f.cut(child).unwrap();
            let removed = (child.min(it.parent(child)), child.max(it.parent(child)));
            let rest: Vec<(usize, usize)> = t
                .edges()
                .iter()
                .map(|e| (e.u, e.v))
                .filter(|&p| p != removed)
                .collect();
            assert_eq!(
                oracle::partition_of_roots(&f.root_assignment()),
                oracle::components(n, &rest)
            );
        }
    }

    proptest! {
        #[test]
        fn root_lookups_agree(seed in any::<u64>(), n in 2usize..200, cuts in 0usize..40) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_tree(&mut rng, n);
            let it = orient(&t, rng.gen_range(0..n)).unwrap();
            let mut f = it.forest();
            let mut removed = Vec::new();
            for _ in 0..cuts {
                let c = rng.gen_range(0..n);
                if !f.is_root(c) {
                    removed.push((c.min(it.parent(c)), c.max(it.parent(c))));
                    f.cut(c).unwrap();
                }
            }
            prop_assert_eq!(f.n_roots(), removed.len() + 1);
            let assigned = f.root_assignment();
            let mut cache = RootCache::new(n);
            for i in 0..n {
                let r = f.find_root(i);
                prop_assert_eq!(r, assigned[i]);
                prop_assert_eq!(cache.find_root(&f, i), r);
                prop_assert_eq!(f.find_root(r), r);
            }
            let rest: Vec<(usize, usize)> = t
                .edges()
                .iter()
                .map(|e| (e.u, e.v))
                .filter(|p| !removed.contains(p))
                .collect();
            prop_assert_eq!(oracle::partition_of_roots(&assigned), oracle::components(n, &rest));
        }
    }
}
