//! Builds the same minimum spanning tree three ways and compares them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdc::{build_mst_kruskal, build_mst_prim, oracle, Dataset, Metric};

fn main() -> sdc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let rows: Vec<Vec<f64>> = (0..6).map(|_| vec![rng.gen(), rng.gen()]).collect();
    let ds = Dataset::numeric(rows)?;

    let prim = build_mst_prim(&ds, Metric::Euclidean)?;
    let kruskal = build_mst_kruskal(&ds, Metric::Euclidean)?;
    let space = ds.space(Metric::Euclidean)?;
    let (best, trees) = oracle::exhaustive_min_spanning_weight(ds.len(), |a, b| space.distance(a, b));

    println!("prim     {:.12}", prim.total_weight());
    println!("kruskal  {:.12}", kruskal.total_weight());
    println!("minimum  {best:.12} over {trees} labeled trees");
    println!("same edge set: {}", prim.sorted_edges() == kruskal.sorted_edges());
    for e in prim.sorted_edges() {
        println!("  {} - {}  {:.4}", e.u, e.v, e.length);
    }
    Ok(())
}
