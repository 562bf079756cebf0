//! Five points on a line, two labels, two clusters.

use sdc::{run_sdc, Dataset, LabelSet, Metric};

fn main() -> sdc::Result<()> {
    let xs = [0.0, 1.0, 6.0, 8.0, 12.0];
    let ds = Dataset::numeric(xs.iter().map(|&x| vec![x]).collect())?;
    let labels = LabelSet::new([(0, "A"), (4, "B")])?;

    let res = run_sdc(&ds, &labels, Metric::Euclidean)?;
    for (i, x) in xs.iter().enumerate() {
        println!("x={x:>4}  cluster={}  category={}", res.assignment[i], res.category_of(i));
    }
    println!("{} clusters from {} sub-trees", res.n_clusters, res.n_subtrees);
    Ok(())
}
