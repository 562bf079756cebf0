//! Shows every edge decision the cutter makes, longest edge first.

use std::collections::BTreeMap;

use sdc::{divisive_cut, side_labels, CategoryId, Dataset, LabelSet, Metric, Model};

fn names(counts: &BTreeMap<CategoryId, usize>, labels: &LabelSet) -> String {
    let parts: Vec<String> = counts
        .iter()
        .map(|(&c, n)| format!("{}x{n}", labels.category_name(c)))
        .collect();
    format!("[{}]", parts.join(" "))
}

fn main() -> sdc::Result<()> {
    let xs = [0.0, 1.0, 2.5, 6.0, 7.0, 8.0, 12.0, 13.0, 20.0];
    let ds = Dataset::numeric(xs.iter().map(|&x| vec![x]).collect())?;
    let labels = LabelSet::new([(0, "low"), (2, "low"), (4, "mid"), (7, "high")])?;
    let model = Model::build(&ds, Metric::Euclidean)?;

    // labels on each side of every edge before anything is cut
    let whole = model.intree().forest();
    for e in model.spanning_tree().sorted_edges().iter().rev() {
        let view = side_labels(&whole, e, &labels)?;
        println!(
            "edge {}-{} ({:.1}): {} | {}",
            e.u,
            e.v,
            e.length,
            names(&view.child_side, &labels),
            names(&view.parent_side, &labels)
        );
    }
    println!();

    let (forest, log) = divisive_cut(model.intree(), model.spanning_tree(), &labels)?;
    print!("{}", log.to_text(false));
    println!("{} cuts, roots {:?}", log.n_cuts(), forest.roots());
    Ok(())
}
