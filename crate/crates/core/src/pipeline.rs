//! End-to-end clustering: spanning tree, orientation, cutting, assignment.

use std::time::{Duration, Instant};

use crate::cutter::{CutLog, CutPlan};
use crate::data::{validate, Dataset, LabelSet, Metric};
use crate::error::{Error, Result};
use crate::intree::{orient, Forest, InTree};
use crate::mst::{prim, SpanningTree};

/// Wall time spent in each step of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timing {
    pub mst: Duration,
    pub orient: Duration,
    pub cut: Duration,
    pub assign: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResult {
    /// Cluster id of every point.
    pub assignment: Vec<usize>,
    /// Category name of each cluster id.
    pub cluster_category: Vec<String>,
    pub n_clusters: usize,
    /// Number of sub-trees before same-category merging.
    pub n_subtrees: usize,
    pub cut_log: CutLog,
    pub timing: Timing,
}

impl ClusterResult {
    pub fn category_of(&self, point: usize) -> &str {
        &self.cluster_category[self.assignment[point]]
    }
}

/// Cluster assignment derived from a fully cut forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Merged {
    pub assignment: Vec<usize>,
    pub cluster_category: Vec<String>,
    pub n_subtrees: usize,
}

/// Gives every sub-tree the category of its labels and fuses sub-trees that
/// share a category. Cluster ids follow the order in which categories are
/// first met scanning points by ascending index.
pub fn merge_by_category(forest: &Forest<'_>, labels: &LabelSet) -> Result<Merged> {
    let n = forest.len();
    let root_of = forest.root_assignment();
    let mut root_cat = vec![None; n];
    for (i, c) in labels.ids() {
        let slot = &mut root_cat[root_of[i]];
        match *slot {
            None => *slot = Some(c),
            Some(prev) if prev != c => {
                return Err(Error::Invariant(format!(
                    "sub-tree rooted at {} mixes categories {:?} and {:?}",
                    root_of[i],
                    labels.category_name(prev),
                    labels.category_name(c)
                )))
            }
            Some(_) => {}
        }
    }
    if let Some(&r) = forest.roots().iter().find(|&&r| root_cat[r].is_none()) {
        return Err(Error::Invariant(format!("sub-tree rooted at {r} has no labeled node")));
    }

    let mut cluster_of_cat = vec![usize::MAX; labels.n_categories()];
    let mut cluster_category = Vec::new();
    let assignment = (0..n)
        .map(|i| {
            let c = root_cat[root_of[i]].expect("every root is labeled").index();
            if cluster_of_cat[c] == usize::MAX {
                cluster_of_cat[c] = cluster_category.len();
                cluster_category.push(labels.categories()[c].clone());
            }
            cluster_of_cat[c]
        })
        .collect();
    Ok(Merged {
        assignment,
        cluster_category,
        n_subtrees: forest.n_roots(),
    })
}

/// The label-independent steps (spanning tree and orientation), computed once
/// and reused for any number of label sets.
#[derive(Debug, Clone)]
pub struct Model {
    tree: SpanningTree,
    intree: InTree,
    plan: CutPlan,
    mst_time: Duration,
    orient_time: Duration,
}

impl Model {
    pub fn build(ds: &Dataset, metric: Metric) -> Result<Self> {
        Model::build_with_root(ds, metric, 0)
    }

    pub fn build_with_root(ds: &Dataset, metric: Metric, root: usize) -> Result<Self> {
        let space = ds.space(metric)?;
        if ds.len() < 2 {
            return Err(Error::TooFewPoints(ds.len()));
        }
        let t0 = Instant::now();
        let tree = prim(&space);
        let mst_time = t0.elapsed();
        Model::from_tree(tree, root, mst_time)
    }

    /// Wraps an existing spanning tree (the MST step is then reported as zero time).
    pub fn from_tree(tree: SpanningTree, root: usize, mst_time: Duration) -> Result<Self> {
        let t1 = Instant::now();
        let intree = orient(&tree, root)?;
        let plan = CutPlan::new(&intree);
        let orient_time = t1.elapsed();
        Ok(Model {
            tree,
            intree,
            plan,
            mst_time,
            orient_time,
        })
    }

    pub fn len(&self) -> usize {
        self.intree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intree.is_empty()
    }

    pub fn spanning_tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn intree(&self) -> &InTree {
        &self.intree
    }

    pub fn mst_time(&self) -> Duration {
        self.mst_time
    }

    /// Cuts and assigns for one label set.
    pub fn cluster(&self, labels: &LabelSet) -> Result<ClusterResult> {
        if labels.is_empty() {
            return Err(Error::EmptyLabels);
        }
        labels.check_range(self.len())?;
        let (forest, cut_log) = self.plan.run(&self.intree, labels)?;
        let t = Instant::now();
        let merged = merge_by_category(&forest, labels)?;
        let assign = t.elapsed();
        Ok(ClusterResult {
            n_clusters: merged.cluster_category.len(),
            assignment: merged.assignment,
            cluster_category: merged.cluster_category,
            n_subtrees: merged.n_subtrees,
            timing: Timing {
                mst: self.mst_time,
                orient: self.orient_time,
                cut: cut_log.elapsed,
                assign,
            },
            cut_log,
        })
    }
}

/// Runs all four steps on one dataset and label set.
pub fn run_sdc(ds: &Dataset, labels: &LabelSet, metric: Metric) -> Result<ClusterResult> {
    validate(ds, labels)?;
    Model::build(ds, metric)?.cluster(labels)
}

/// Counts wrongly assigned unlabeled points. Returns `(wrong, unlabeled)`.
pub fn misassigned<S: AsRef<str>>(res: &ClusterResult, truth: &[S], labels: &LabelSet) -> Result<(usize, usize)> {
    let n = res.assignment.len();
    if truth.len() != n {
        return Err(Error::TruthLength {
            expected: n,
            found: truth.len(),
        });
    }
    for (i, cat) in labels.iter() {
        if i >= n {
            return Err(Error::LabelOutOfRange { index: i, n });
        }
        if truth[i].as_ref() != cat {
            return Err(Error::TruthContradiction {
                index: i,
                label: cat.to_owned(),
                truth: truth[i].as_ref().to_owned(),
            });
        }
    }
    let mut wrong = 0;
    let mut unlabeled = 0;
    for (i, t) in truth.iter().enumerate() {
        if labels.is_labeled(i) {
            continue;
        }
        unlabeled += 1;
        if res.category_of(i) != t.as_ref() {
            wrong += 1;
        }
    }
    Ok((wrong, unlabeled))
}

/// Wrongly assigned unlabeled points over all unlabeled points; 0 when every
/// point is labeled.
pub fn error_rate<S: AsRef<str>>(res: &ClusterResult, truth: &[S], labels: &LabelSet) -> Result<f64> {
    let (wrong, unlabeled) = misassigned(res, truth, labels)?;
    Ok(if unlabeled == 0 {
        0.0
    } else {
        wrong as f64 / unlabeled as f64
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intree::orient;
    use crate::mst::Edge;
    use crate::oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn chain_model() -> Model {
        let t = SpanningTree::new(
            5,
            vec![
                Edge::new(0, 1, 1.0),
                Edge::new(1, 2, 5.0),
                Edge::new(2, 3, 2.0),
                Edge::new(3, 4, 4.0),
            ],
        )
        .unwrap();
        Model::from_tree(t, 0, Duration::ZERO).unwrap()
    }

    fn three_groups() -> Dataset {
        let mut rows = Vec::new();
        for (cx, cy) in [(0.0, 0.0), (10.0, 0.0), (5.0, 9.0)] {
            for k in 0..6 {
                let a = k as f64 * 1.047;
                rows.push(vec![cx + 0.5 * a.cos(), cy + 0.5 * a.sin()]);
            }
        }
        Dataset::numeric(rows).unwrap()
    }

    #[test]
    fn chain_assignment() {
        let ls = LabelSet::new([(0, "A"), (4, "B")]).unwrap();
        let res = chain_model().cluster(&ls).unwrap();
        let cats: Vec<&str> = (0..5).map(|i| res.category_of(i)).collect();
        assert_eq!(cats, ["A", "A", "B", "B", "B"]);
        assert_eq!(res.n_clusters, 2);
        assert_eq!(res.assignment, [0, 0, 1, 1, 1]);
    }

    #[test]
    fn three_separated_groups() {
        let ds = three_groups();
        let ls = LabelSet::new([(2, "red"), (8, "green"), (15, "blue")]).unwrap();
        let res = run_sdc(&ds, &ls, Metric::Euclidean).unwrap();
        assert_eq!(res.n_clusters, 3);
        assert_eq!(res.n_subtrees, 3);
        for g in 0..3 {
            let first = res.assignment[g * 6];
            assert!((g * 6..g * 6 + 6).all(|i| res.assignment[i] == first));
        }
        assert_eq!(res.category_of(0), "red");
        assert_eq!(res.category_of(17), "blue");
    }

    #[test]
    fn single_category_is_one_cluster() {
        let ds = three_groups();
        let ls = LabelSet::new([(2, "x"), (9, "x")]).unwrap();
        let res = run_sdc(&ds, &ls, Metric::Euclidean).unwrap();
        assert_eq!(res.n_clusters, 1);
        assert!(res.assignment.iter().all(|&c| c == 0));
    }

    #[test]
    fn merge_fuses_same_category_subtrees() {
        // 0-1-2-3-4-5 path rooted at 0, labels A B A C on separate segments
        let t = SpanningTree::new(6, (1..6).map(|i| Edge::new(i - 1, i, 1.0)).collect()).unwrap();
        let it = orient(&t, 0).unwrap();
        let mut f = it.forest();
        for c in [2, 3, 4] {
            f.cut(c).unwrap();
        }
        let ls = LabelSet::new([(0, "A"), (2, "B"), (3, "A"), (5, "C")]).unwrap();
        let m = merge_by_category(&f, &ls).unwrap();
        assert_eq!(m.n_subtrees, 4);
        assert_eq!(m.cluster_category, ["A", "B", "C"]);
        assert_eq!(m.assignment, [0, 0, 1, 0, 2, 2]);

        let mut f = it.forest();
        f.cut(3).unwrap();
        let ls = LabelSet::new([(0, "A"), (5, "A")]).unwrap();
        let m = merge_by_category(&f, &ls).unwrap();
        assert_eq!(m.cluster_category, ["A"]);
        assert!(m.assignment.iter().all(|&c| c == 0));

        let ls = LabelSet::new([(0, "A"), (5, "B")]).unwrap();
        let m = merge_by_category(&f, &ls).unwrap();
        assert_eq!(m.assignment, [0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn merge_rejects_bad_forests() {
        let t = SpanningTree::new(4, (1..4).map(|i| Edge::new(i - 1, i, 1.0)).collect()).unwrap();
        let it = orient(&t, 0).unwrap();
        let f = it.forest();
        let impure = LabelSet::new([(0, "A"), (3, "B")]).unwrap();
        assert!(matches!(merge_by_category(&f, &impure), Err(Error::Invariant(_))));
        let mut f = it.forest();
        f.cut(2).unwrap();
        let one_side = LabelSet::new([(0, "A")]).unwrap();
        assert!(matches!(merge_by_category(&f, &one_side), Err(Error::Invariant(_))));
    }

    #[test]
    fn error_rate_cases() {
        let ls = LabelSet::new([(0, "A"), (4, "B")]).unwrap();
        let res = chain_model().cluster(&ls).unwrap();
        assert_eq!(error_rate(&res, &["A", "A", "B", "B", "B"], &ls).unwrap(), 0.0);
        assert_eq!(misassigned(&res, &["A", "B", "A", "B", "B"], &ls).unwrap(), (2, 3));
        assert!((error_rate(&res, &["A", "B", "A", "B", "B"], &ls).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            error_rate(&res, &["B", "A", "B", "B", "B"], &ls),
            Err(Error::TruthContradiction { index: 0, .. })
        ));
        assert!(matches!(
            error_rate(&res, &["A", "A"], &ls),
            Err(Error::TruthLength { .. })
        ));
        let all = LabelSet::new([(0, "A"), (1, "A"), (2, "B"), (3, "B"), (4, "B")]).unwrap();
        let res = chain_model().cluster(&all).unwrap();
        assert_eq!(error_rate(&res, &["A", "A", "B", "B", "B"], &all).unwrap(), 0.0);
    }

    #[test]
    fn ten_unlabeled_two_wrong() {
        // 12-point path split in the middle by the one long edge
        let mut edges: Vec<Edge> = (1..12).map(|i| Edge::new(i - 1, i, 1.0)).collect();
        edges[5].length = 9.0;
        let model = Model::from_tree(SpanningTree::new(12, edges).unwrap(), 0, Duration::ZERO).unwrap();
        let ls = LabelSet::new([(0, "A"), (11, "B")]).unwrap();
        let res = model.cluster(&ls).unwrap();
        let mut truth = vec!["A"; 6];
        truth.extend(vec!["B"; 6]);
        truth[4] = "B";
        truth[7] = "A";
        assert!((error_rate(&res, &truth, &ls).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn olivetti_reference_ratio() {
        // 400 faces, 2 labels for each of 40 subjects, 15 misassigned
        assert!((15.0f64 / 320.0 - 0.046875).abs() < 1e-15);
        assert_eq!(400 - 2 * 40, 320);
    }

    #[test]
    fn partition_is_root_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(5..60);
            let ds = Dataset::numeric((0..n).map(|_| vec![rng.gen(), rng.gen()]).collect()).unwrap();
            let ls = LabelSet::new([(0, "a"), (n / 2, "b"), (n - 1, "c")]).unwrap();
            let base = oracle::partition_of_roots(
                &Model::build(&ds, Metric::Euclidean).unwrap().cluster(&ls).unwrap().assignment,
            );
            for _ in 0..5 {
                let r = rng.gen_range(0..n);
                let res = Model::build_with_root(&ds, Metric::Euclidean, r)
                    .unwrap()
                    .cluster(&ls)
                    .unwrap();
                assert_eq!(oracle::partition_of_roots(&res.assignment), base);
            }
        }
    }
}
