//! Scores a clustering against ground truth, counting unlabeled points only.

use sdc::synth::gaussian_blobs;
use sdc::{error_rate, misassigned, LabelSet, Metric, Model};

fn main() -> sdc::Result<()> {
    let syn = gaussian_blobs(&[(0.0, 0.0), (4.0, 0.0), (2.0, 3.0)], 100, 1.0, 5);
    let model = Model::build(&syn.dataset, Metric::Euclidean)?;

    for per in [1, 3, 10] {
        let labels = LabelSet::new(
            (0..3).flat_map(|g| (0..per).map(move |k| (g * 100 + k, format!("g{g}")))),
        )?;
        let res = model.cluster(&labels)?;
        let (wrong, unlabeled) = misassigned(&res, &syn.truth, &labels)?;
        println!(
            "{per:>2} labels per blob: {wrong}/{unlabeled} wrong, error rate {:.4}",
            error_rate(&res, &syn.truth, &labels)?
        );
    }
    Ok(())
}
