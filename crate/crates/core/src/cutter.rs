//! Label-driven cutting of the in-tree.
//!
//! Edges are visited once, longest first. An edge is removed only when the
//! component it lies in holds labels of more than one category and both
//! halves it would leave behind keep at least one label. The walk stops as
//! soon as every component is pure.
//!
//! A skipped edge never becomes removable later: cutting only refines
//! components, so a pure component stays pure and an unlabeled side stays
//! unlabeled. One descending pass is therefore enough.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::data::{CategoryId, LabelSet};
use crate::error::{Error, Result};
use crate::intree::{Forest, InTree};
use crate::mst::{Edge, SpanningTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Cut,
    PureComponent,
    ChildSideUnlabeled,
    ParentSideUnlabeled,
}

impl Decision {
    pub fn accepted(self) -> bool {
        self == Decision::Cut
    }

    pub fn reason(self) -> &'static str {
        match self {
            Decision::Cut => "impure-and-both-sides-labeled",
            Decision::PureComponent => "component-pure",
            Decision::ChildSideUnlabeled => "child-side-unlabeled",
            Decision::ParentSideUnlabeled => "parent-side-unlabeled",
        }
    }

    fn from_reason(s: &str) -> Option<Self> {
        [
            Decision::Cut,
            Decision::PureComponent,
            Decision::ChildSideUnlabeled,
            Decision::ParentSideUnlabeled,
        ]
        .into_iter()
        .find(|d| d.reason() == s)
    }
}

/// One explored edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutRecord {
    /// 1-based position in the descending length order.
    pub rank: usize,
    pub child: usize,
    pub parent: usize,
    pub length: f64,
    pub decision: Decision,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CutLog {
    pub records: Vec<CutRecord>,
    pub elapsed: Duration,
}

impl CutLog {
    pub fn accepted(&self) -> impl Iterator<Item = &CutRecord> + '_ {
        self.records.iter().filter(|r| r.decision.accepted())
    }

    pub fn n_cuts(&self) -> usize {
        self.accepted().count()
    }

    /// Tab-separated diagnostic listing, one explored edge per line.
    ///
    /// The elapsed time goes into a trailing comment line unless
    /// `with_timing` is false, which keeps the output byte-reproducible.
    pub fn to_text(&self, with_timing: bool) -> String {
        let mut out = String::from("# rank\tchild\tparent\tlength\tstatus\treason\n");
        for r in &self.records {
            let status = if r.decision.accepted() { "cut" } else { "skip" };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.rank,
                r.child,
                r.parent,
                r.length,
                status,
                r.decision.reason()
            );
        }
        if with_timing {
            let _ = writeln!(out, "# elapsed_ms\t{:.6}", self.elapsed.as_secs_f64() * 1e3);
        }
        out
    }

    /// Parses the output of [`CutLog::to_text`].
    pub fn parse(text: &str) -> std::result::Result<CutLog, String> {
        let mut log = CutLog::default();
        for (lineno, line) in text.lines().enumerate() {
            if let Some(rest) = line.strip_prefix("# elapsed_ms\t") {
                let ms: f64 = rest.parse().map_err(|e| format!("line {}: {e}", lineno + 1))?;
                log.elapsed = Duration::from_secs_f64(ms / 1e3);
                continue;
            }
            if line.starts_with('#') || line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 6 {
                return Err(format!("line {}: expected 6 fields", lineno + 1));
            }
            let bad = |e: &dyn std::fmt::Display| format!("line {}: {e}", lineno + 1);
            let decision =
                Decision::from_reason(f[5]).ok_or_else(|| bad(&format!("unknown reason {:?}", f[5])))?;
            log.records.push(CutRecord {
                rank: f[0].parse().map_err(|e| bad(&e))?,
                child: f[1].parse().map_err(|e| bad(&e))?,
                parent: f[2].parse().map_err(|e| bad(&e))?,
                length: f[3].parse().map_err(|e| bad(&e))?,
                decision,
            });
        }
        Ok(log)
    }
}

/// Category multisets on the two sides of an edge within its component.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComponentLabelView {
    pub child_side: BTreeMap<CategoryId, usize>,
    pub parent_side: BTreeMap<CategoryId, usize>,
}

impl ComponentLabelView {
    pub fn child_labeled(&self) -> usize {
        self.child_side.values().sum()
    }

    pub fn parent_labeled(&self) -> usize {
        self.parent_side.values().sum()
    }

    /// Whether the union of both sides spans more than one category.
    pub fn component_impure(&self) -> bool {
        let mut cats = self.child_side.keys().chain(self.parent_side.keys());
        match cats.next() {
            Some(first) => cats.any(|c| c != first),
            None => false,
        }
    }
}

/// Which endpoint of `e` is the child in the in-tree.
fn child_of(tree: &InTree, e: &Edge) -> Result<usize> {
    if e.u != e.v && tree.parent(e.u) == e.v {
        Ok(e.u)
    } else if e.u != e.v && tree.parent(e.v) == e.u {
        Ok(e.v)
    } else {
        Err(Error::EdgeNotPresent {
            child: e.u,
            parent: e.v,
        })
    }
}

/// Label multisets on each side of `e`, found by walking the child's sub-tree
/// and the rest of its component explicitly.
pub fn side_labels(forest: &Forest<'_>, e: &Edge, labels: &LabelSet) -> Result<ComponentLabelView> {
    let child = child_of(forest.tree(), e)?;
    if forest.is_root(child) {
        return Err(Error::EdgeNotPresent {
            child,
            parent: forest.tree().parent(child),
        });
    }
    let below = forest.subtree(child);
    let mut in_child_side = vec![false; forest.len()];
    for &v in &below {
        in_child_side[v] = true;
    }
    let mut view = ComponentLabelView::default();
    for v in forest.subtree(forest.find_root(child)) {
        if let Some(c) = labels.category_of(v) {
            let side = if in_child_side[v] {
                &mut view.child_side
            } else {
                &mut view.parent_side
            };
            *side.entry(c).or_default() += 1;
        }
    }
    Ok(view)
}

/// The label-independent part of cutting: in-tree edges in descending order.
///
/// Build once per in-tree and reuse it for any number of label sets.
#[derive(Debug, Clone)]
pub struct CutPlan {
    n: usize,
    root: usize,
    // (child, parent, length), longest first, ties by ascending endpoint pair
    order: Vec<(usize, usize, f64)>,
}

impl CutPlan {
    pub fn new(tree: &InTree) -> Self {
        let mut edges: Vec<Edge> = (0..tree.len())
            .filter(|&v| v != tree.root())
            .map(|v| Edge::new(v, tree.parent(v), tree.parent_len(v)))
            .collect();
        edges.sort_by(|a, b| b.length.total_cmp(&a.length).then(a.u.cmp(&b.u)).then(a.v.cmp(&b.v)));
        let order = edges
            .iter()
            .map(|e| {
                let child = if tree.parent(e.u) == e.v { e.u } else { e.v };
                (child, tree.parent(child), e.length)
            })
            .collect();
        CutPlan {
            n: tree.len(),
            root: tree.root(),
            order,
        }
    }

    /// Runs the descending pass for one label set.
    ///
    /// `tree` must be the in-tree this plan was built from.
    pub fn run<'a>(&self, tree: &'a InTree, labels: &LabelSet) -> Result<(Forest<'a>, CutLog)> {
        let start = Instant::now();
        let n = tree.len();
        if n != self.n || tree.root() != self.root {
            return Err(Error::Invariant("cut plan belongs to a different in-tree".into()));
        }
        labels.check_range(n)?;
        let k = labels.n_categories();

        let mut forest = tree.forest();
        let mut comp_root = vec![tree.root(); n];
        // per component root: labeled members and per-category counts
        let mut members: HashMap<usize, Vec<(usize, CategoryId)>> = HashMap::new();
        let mut counts: HashMap<usize, Vec<usize>> = HashMap::new();
        let all: Vec<(usize, CategoryId)> = labels.ids().collect();
        let mut root_counts = vec![0usize; k];
        for &(_, c) in &all {
            root_counts[c.index()] += 1;
        }
        let distinct = |c: &[usize]| c.iter().filter(|&&x| x > 0).count();
        let mut impure = usize::from(distinct(&root_counts) > 1);
        members.insert(tree.root(), all);
        counts.insert(tree.root(), root_counts);

        let mut log = CutLog::default();
        for (pos, &(child, parent, length)) in self.order.iter().enumerate() {
            if impure == 0 {
                break;
            }
            let root = comp_root[child];
            let comp_counts = &counts[&root];
            let decision = if distinct(comp_counts) <= 1 {
                Decision::PureComponent
            } else {
                let total: usize = comp_counts.iter().sum();
                let below = members[&root]
                    .iter()
                    .filter(|&&(v, _)| tree.is_descendant(v, child))
                    .count();
                if below == 0 {
                    Decision::ChildSideUnlabeled
                } else if below == total {
                    Decision::ParentSideUnlabeled
                } else {
                    Decision::Cut
                }
            };
            log.records.push(CutRecord {
                rank: pos + 1,
                child,
                parent,
                length,
                decision,
            });
            if !decision.accepted() {
                continue;
            }

            forest.cut(child)?;
            for v in forest.subtree(child) {
                comp_root[v] = child;
            }
            let (moved, kept): (Vec<_>, Vec<_>) = members
                .remove(&root)
                .unwrap()
                .into_iter()
                .partition(|&(v, _)| comp_root[v] == child);
            let mut child_counts = vec![0usize; k];
            for &(_, c) in &moved {
                child_counts[c.index()] += 1;
            }
            let parent_counts = counts.get_mut(&root).unwrap();
            for (p, c) in parent_counts.iter_mut().zip(&child_counts) {
                *p -= c;
            }
            if moved.is_empty() || kept.is_empty() {
                return Err(Error::Invariant(format!(
                    "cut at {child} left a component without labels"
                )));
            }
            impure -= 1;
            impure += usize::from(distinct(parent_counts) > 1);
            impure += usize::from(distinct(&child_counts) > 1);
            members.insert(root, kept);
            members.insert(child, moved);
            counts.insert(child, child_counts);
        }
        log.elapsed = start.elapsed();
        Ok((forest, log))
    }
}

/// Cuts `tree` under the supervision of `labels`.
///
/// `spanning` must be the tree `tree` was oriented from.
pub fn divisive_cut<'a>(
    tree: &'a InTree,
    spanning: &SpanningTree,
    labels: &LabelSet,
) -> Result<(Forest<'a>, CutLog)> {
    if spanning.n_nodes() != tree.len() {
        return Err(Error::Invariant(format!(
            "in-tree has {} nodes but spanning tree has {}",
            tree.len(),
            spanning.n_nodes()
        )));
    }
    for e in spanning.edges() {
        child_of(tree, e)?;
    }
    CutPlan::new(tree).run(tree, labels)
}
