//! Randomized cross-checks of the fast paths against [`crate::oracle`].
//!
//! Each check is seeded and returns a [`CheckOutcome`] rather than
//! panicking, so the same suites back both `sdc selfcheck` and the
//! acceptance tests.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cutter::divisive_cut;
use crate::data::{Dataset, LabelSet, Metric};
use crate::intree::orient;
use crate::mst::{build_mst_kruskal, build_mst_prim, Edge, SpanningTree};
use crate::oracle;
use crate::pipeline::Model;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

fn outcome(name: &'static str, start: Instant, failure: Option<String>, ok: String) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: failure.is_none(),
        detail: failure.unwrap_or(ok),
        elapsed: start.elapsed(),
    }
}

fn uniform_2d(rng: &mut impl Rng, n: usize) -> Dataset {
    Dataset::numeric((0..n).map(|_| vec![rng.gen(), rng.gen()]).collect()).expect("n >= 2")
}

/// Random tree by attaching node `i` to a random earlier node.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> SpanningTree {
    let edges = (1..n)
        .map(|i| Edge::new(rng.gen_range(0..i), i, rng.gen::<f64>()))
        .collect();
    SpanningTree::new(n, edges).expect("attachment always yields a tree")
}

/// `per_cat` labels for each of `cats` categories on distinct random nodes.
pub fn random_labels(rng: &mut impl Rng, n: usize, cats: usize, per_cat: usize) -> LabelSet {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let pairs = (0..cats).flat_map(|c| (0..per_cat).map(move |k| (c, k)));
    LabelSet::new(pairs.zip(&idx).map(|((c, _), &i)| (i, format!("c{c}")))).expect("non-empty")
}

/// Labels with a random number (1..=3) of nodes per category.
fn ragged_labels(rng: &mut impl Rng, n: usize, cats: usize) -> LabelSet {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut pairs = Vec::new();
    let mut next = 0;
    for c in 0..cats {
        for _ in 0..rng.gen_range(1..=3) {
            if next < n {
                pairs.push((idx[next], format!("c{c}")));
                next += 1;
            }
        }
    }
    LabelSet::new(pairs).expect("non-empty")
}

fn dense(ls: &LabelSet, n: usize) -> Vec<Option<u32>> {
    ls.dense(n).into_iter().map(|c| c.map(|c| c.0)).collect()
}

/// Prim's total weight equals the exhaustive minimum over all labeled trees.
pub fn mst_minimality(instances: usize, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    for k in 0..instances {
        let n = [4, 5, 6][k % 3];
        let ds = uniform_2d(&mut rng, n);
        let sp = ds.space(Metric::Euclidean).expect("numeric");
        let (best, _) = oracle::exhaustive_min_spanning_weight(n, |a, b| sp.distance(a, b));
        let prim: f64 = build_mst_prim(&ds, Metric::Euclidean)
            .expect("valid")
            .sorted_edges()
            .iter()
            .map(|e| e.length)
            .sum();
        if prim != best {
            failure = Some(format!("instance {k} (n={n}): prim {prim} vs exhaustive {best}"));
            break;
        }
    }
    outcome(
        "mst-oracle-minimality",
        start,
        failure,
        format!("{instances} instances, n in {{4,5,6}}"),
    )
}

/// Prim and Kruskal agree on total weight within `rel_tol`.
pub fn prim_kruskal(instances: usize, n: usize, rel_tol: f64, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    let mut worst = 0.0f64;
    for k in 0..instances {
        let ds = uniform_2d(&mut rng, n);
        let p = build_mst_prim(&ds, Metric::Euclidean).expect("valid").total_weight();
        let q = build_mst_kruskal(&ds, Metric::Euclidean).expect("valid").total_weight();
        let rel = (p - q).abs() / q.abs().max(f64::MIN_POSITIVE);
        worst = worst.max(rel);
        if rel > rel_tol {
            failure = Some(format!("instance {k}: prim {p} vs kruskal {q} (rel {rel:e})"));
            break;
        }
    }
    outcome(
        "prim-kruskal-agreement",
        start,
        failure,
        format!("{instances} instances, n={n}, worst relative gap {worst:e}"),
    )
}

/// The full pipeline partition equals a literal replay of the cutting rules
/// over a reverse-delete MST.
pub fn rule_replay(instances: usize, max_n: usize, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    for k in 0..instances {
        let cats = rng.gen_range(2..=4);
        let n = rng.gen_range((3 * cats).min(max_n)..=max_n);
        let ds = uniform_2d(&mut rng, n);
        let ls = ragged_labels(&mut rng, n, cats);
        let sp = ds.space(Metric::Euclidean).expect("numeric");
        let tree = oracle::reverse_delete_mst(n, |a, b| sp.distance(a, b));
        let (expected, expected_cuts) = oracle::replay_rules(n, &tree, &dense(&ls, n));

        let model = Model::build(&ds, Metric::Euclidean).expect("valid");
        let res = model.cluster(&ls).expect("valid instance");
        let (forest, log) = divisive_cut(model.intree(), model.spanning_tree(), &ls).expect("valid");
        let got = oracle::partition_of_roots(&forest.root_assignment());
        if got != expected || log.n_cuts() != expected_cuts {
            failure = Some(format!(
                "instance {k} (n={n}): partition {got:?} vs oracle {expected:?}"
            ));
            break;
        }
        if res.n_clusters != ls.n_categories() {
            failure = Some(format!("instance {k}: {} clusters for {} categories", res.n_clusters, ls.n_categories()));
            break;
        }
    }
    outcome(
        "rule-replay-equivalence",
        start,
        failure,
        format!("{instances} instances, n <= {max_n}, 2-4 categories, 1-3 labels each"),
    )
}

/// Cutting random trees always ends all-pure with every component labeled and
/// `roots = cuts + 1`.
pub fn termination_purity(instances: usize, max_n: usize, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    for k in 0..instances {
        let n = rng.gen_range(2..=max_n);
        let cats = rng.gen_range(2..=5).min(n);
        let t = random_tree(&mut rng, n);
        let it = orient(&t, rng.gen_range(0..n)).expect("valid root");
        let ls = ragged_labels(&mut rng, n, cats);
        let (forest, log) = divisive_cut(&it, &t, &ls).expect("valid");
        let roots = forest.root_assignment();
        let mut cat_of_root: std::collections::HashMap<usize, u32> = Default::default();
        let mut bad = None;
        for (i, c) in ls.ids() {
            if let Some(prev) = cat_of_root.insert(roots[i], c.0) {
                if prev != c.0 {
                    bad = Some(format!("component {} is impure", roots[i]));
                }
            }
        }
        if let Some(r) = forest.roots().iter().find(|r| !cat_of_root.contains_key(r)) {
            bad = Some(format!("component {r} has no label"));
        }
        if forest.n_roots() != log.n_cuts() + 1 {
            bad = Some(format!("{} components after {} cuts", forest.n_roots(), log.n_cuts()));
        }
        if let Some(msg) = bad {
            failure = Some(format!("instance {k} (n={n}): {msg}"));
            break;
        }
    }
    outcome(
        "termination-and-purity",
        start,
        failure,
        format!("{instances} random trees, n <= {max_n}"),
    )
}

/// Final partitions do not depend on which node the tree is oriented from.
pub fn root_invariance(instances: usize, roots: usize, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    'outer: for k in 0..instances {
        let n = rng.gen_range(10..=150);
        let ds = uniform_2d(&mut rng, n);
        let cats = rng.gen_range(2..=4);
        let ls = ragged_labels(&mut rng, n, cats);
        let tree = build_mst_prim(&ds, Metric::Euclidean).expect("valid");
        let mut base = None;
        for _ in 0..roots {
            let r = rng.gen_range(0..n);
            let model = Model::from_tree(tree.clone(), r, Duration::ZERO).expect("valid root");
            let part = oracle::partition_of_roots(&model.cluster(&ls).expect("valid").assignment);
            match &base {
                None => base = Some(part),
                Some(b) if *b != part => {
                    failure = Some(format!("instance {k}: root {r} changes the partition"));
                    break 'outer;
                }
                Some(_) => {}
            }
        }
    }
    outcome(
        "root-invariance",
        start,
        failure,
        format!("{instances} instances x {roots} roots"),
    )
}

/// Every suite at its default size.
pub fn all(seed: u64) -> Vec<CheckOutcome> {
    vec![
        mst_minimality(200, seed),
        prim_kruskal(100, 50, 1e-9, seed.wrapping_add(1)),
        rule_replay(200, 12, seed.wrapping_add(2)),
        termination_purity(500, 100, seed.wrapping_add(3)),
        root_invariance(20, 10, seed.wrapping_add(4)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for o in [
            mst_minimality(6, 1),
            prim_kruskal(3, 20, 1e-9, 1),
            rule_replay(10, 12, 1),
            termination_purity(20, 40, 1),
            root_invariance(3, 4, 1),
        ] {
            assert!(o.passed, "{o}");
        }
    }
}
