//! Five irregular clusters plus background noise, one or two labels each.
//!
//! Usage: `cargo run --release --example noisy_shapes [labels-per-cluster] [out.svg]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sdc::synth::shapes_with_noise;
use sdc::{svg, Metric, Model};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let per: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(1);
    let out = args
        .next()
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("noisy_shapes.svg"));

    let syn = shapes_with_noise(7);
    let labels = syn.core_labels(per, &mut ChaCha8Rng::seed_from_u64(7))?;
    let model = Model::build(&syn.dataset, Metric::Euclidean)?;
    let res = model.cluster(&labels)?;

    let scored: Vec<usize> = (0..syn.truth.len())
        .filter(|&i| !syn.is_noise(i) && !labels.is_labeled(i))
        .collect();
    let wrong = scored.iter().filter(|&&i| res.category_of(i) != syn.truth[i]).count();
    println!(
        "{} points, {} labels, {} clusters, {} sub-trees",
        syn.dataset.len(),
        labels.len(),
        res.n_clusters,
        res.n_subtrees
    );
    println!("error on non-noise points: {wrong}/{}", scored.len());
    println!("mst {:?}, cut {:?}", res.timing.mst, res.timing.cut);

    svg::emit_scatter_svg(&syn.dataset, &res, &labels, &out)?;
    println!("plot written to {}", out.display());
    Ok(())
}
