//! Error rate against label budget on the UCI mushroom table.
//!
//! Usage: `cargo run --release --example mushroom_sweep [agaricus-lepiota.data]`

use std::path::PathBuf;

use sdc::io::{self, DataFileSpec, DataFormat};
use sdc::{sweep, Metric, Sampling, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/agaricus-lepiota.data"));
    let loaded = io::load(&DataFileSpec::new(&path, DataFormat::CategoricalCsv).truth_column(0))?;
    let truth = loaded.truth.expect("class column");

    let cfg = SweepConfig {
        budgets: vec![1, 2, 5, 10, 25, 50],
        trials: 20,
        seed: 1,
        sampling: Sampling::Stratified,
        threads: None,
    };
    let report = sweep(&loaded.dataset, &truth, Metric::Mismatch, &cfg)?;
    print!("{}", report.to_tsv(true));
    Ok(())
}
