//! Forty-subject gallery, one to three labeled images per subject.
//!
//! Pass a CSV with the subject id in column 0 followed by the pixel values.
//! Without one, a synthetic gallery of the same shape is generated.

use sdc::io::{self, DataFileSpec, DataFormat};
use sdc::synth::prototype_gallery;
use sdc::{sweep, Metric, Sampling, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (ds, truth) = match std::env::args().nth(1) {
        Some(path) => {
            let l = io::load(&DataFileSpec::new(path, DataFormat::NumericCsv).truth_column(0))?;
            (l.dataset, l.truth.expect("subject column"))
        }
        None => {
            let g = prototype_gallery(40, 10, 10304, 60.0, 3);
            (g.dataset, g.truth)
        }
    };
    println!("# {} images of {} pixels", ds.len(), ds.dim());

    let cfg = SweepConfig {
        budgets: vec![1, 2, 3],
        trials: 20,
        seed: 3,
        sampling: Sampling::Stratified,
        threads: None,
    };
    let report = sweep(&ds, &truth, Metric::Euclidean, &cfg)?;
    for l in &report.levels {
        println!(
            "{} per subject: error {:.4} ± {:.4}, {:.1} misassigned, {:.0} clusters",
            l.budget, l.mean_error, l.stderr_error, l.mean_wrong, l.mean_clusters
        );
    }
    Ok(())
}
