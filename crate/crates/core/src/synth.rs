//! Seeded synthetic datasets with known ground truth.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::data::{Dataset, LabelSet};
use crate::error::Result;

/// Truth category given to background noise points.
pub const NOISE: &str = "noise";

#[derive(Debug, Clone)]
pub struct Synthetic {
    pub dataset: Dataset,
    pub truth: Vec<String>,
    /// Points close to the generating centre or curve of their cluster.
    pub core: Vec<bool>,
}

impl Synthetic {
    pub fn is_noise(&self, i: usize) -> bool {
        self.truth[i] == NOISE
    }

    /// Names of the generated clusters in first-seen order, noise excluded.
    pub fn clusters(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for t in &self.truth {
            if t != NOISE && !out.contains(&t.as_str()) {
                out.push(t);
            }
        }
        out
    }

    /// Picks `per_cluster` random core points from every cluster as labels.
    pub fn core_labels(&self, per_cluster: usize, rng: &mut impl Rng) -> Result<LabelSet> {
        let mut pairs = Vec::new();
        for name in self.clusters() {
            let pool: Vec<usize> = (0..self.truth.len())
                .filter(|&i| self.core[i] && self.truth[i] == name)
                .collect();
            for k in rand::seq::index::sample(rng, pool.len(), per_cluster.min(pool.len())) {
                pairs.push((pool[k], name.to_owned()));
            }
        }
        LabelSet::new(pairs)
    }
}

/// Isotropic 2-D Gaussian blobs named `g0`, `g1`, ...; core is within one sigma.
pub fn gaussian_blobs(centers: &[(f64, f64)], per_blob: usize, sigma: f64, seed: u64) -> Synthetic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, sigma).expect("finite sigma");
    let mut rows = Vec::new();
    let mut truth = Vec::new();
    let mut core = Vec::new();
    for (g, &(cx, cy)) in centers.iter().enumerate() {
        for _ in 0..per_blob {
            let (dx, dy) = (normal.sample(&mut rng), normal.sample(&mut rng));
            rows.push(vec![cx + dx, cy + dy]);
            truth.push(format!("g{g}"));
            core.push(dx.hypot(dy) <= sigma);
        }
    }
    Synthetic {
        dataset: Dataset::numeric(rows).expect("generated data is valid"),
        truth,
        core,
    }
}

/// Five clusters of differing size, shape and density plus uniform noise in
/// a 100 × 100 square: three Gaussian blobs, a half-ring and a sine band.
///
/// 2850 cluster points and 150 noise points (5% of 3000). Core points are
/// within 1.5 spreads of the generating centre or curve.
pub fn shapes_with_noise(seed: u64) -> Synthetic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = Normal::new(0.0, 1.0).expect("unit normal");
    let mut rows = Vec::new();
    let mut truth = Vec::new();
    let mut core = Vec::new();
    let mut push = |p: [f64; 2], name: &str, is_core: bool| {
        rows.push(p.to_vec());
        truth.push(name.to_owned());
        core.push(is_core);
    };

    for (name, (cx, cy), sigma, count) in [
        ("blob-wide", (20.0, 75.0), 3.0, 600),
        ("blob-tight", (50.0, 82.0), 2.0, 400),
        ("blob-loose", (80.0, 70.0), 4.0, 700),
    ] {
        for _ in 0..count {
            let (dx, dy): (f64, f64) = (unit.sample(&mut rng), unit.sample(&mut rng));
            push([cx + sigma * dx, cy + sigma * dy], name, dx.hypot(dy) <= 1.5);
        }
    }

    let jitter = 0.8;
    for _ in 0..600 {
        // upper half-ring around (28, 28), radius 15
        let theta = rng.gen_range(0.0..PI);
        let off: f64 = unit.sample(&mut rng);
        let r = 15.0 + jitter * off;
        push([28.0 + r * theta.cos(), 28.0 + r * theta.sin()], "ring", off.abs() <= 1.5);
    }
    for _ in 0..550 {
        let x = rng.gen_range(55.0..95.0);
        let off: f64 = unit.sample(&mut rng);
        let y = 25.0 + 8.0 * (2.0 * PI * (x - 55.0) / 40.0).sin() + jitter * off;
        push([x, y], "wave", off.abs() <= 1.5);
    }
    for _ in 0..150 {
        push([rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)], NOISE, false);
    }

    Synthetic {
        dataset: Dataset::numeric(rows).expect("generated data is valid"),
        truth,
        core,
    }
}

/// High-dimensional stand-in for a face gallery: `classes` random prototypes
/// in `[0, 255]^dim`, each with `per_class` noisy copies, values clamped to
/// the pixel range. Rows are grouped by class, `per_class` at a time.
pub fn prototype_gallery(classes: usize, per_class: usize, dim: usize, noise: f64, seed: u64) -> Synthetic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, noise).expect("finite noise");
    let mut rows = Vec::with_capacity(classes * per_class);
    let mut truth = Vec::new();
    for c in 0..classes {
        let proto: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..255.0)).collect();
        for _ in 0..per_class {
            rows.push(
                proto
                    .iter()
                    .map(|&p| (p + normal.sample(&mut rng)).clamp(0.0, 255.0).round())
                    .collect(),
            );
            truth.push(format!("s{}", c + 1));
        }
    }
    Synthetic {
        dataset: Dataset::numeric(rows).expect("generated data is valid"),
        core: vec![true; truth.len()],
        truth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_are_seeded() {
        let a = shapes_with_noise(1);
        let b = shapes_with_noise(1);
        assert_eq!(a.dataset.len(), 3000);
        assert_eq!(a.truth, b.truth);
        assert_eq!(a.dataset.numeric_row(17), b.dataset.numeric_row(17));
        assert_eq!(a.truth.iter().filter(|t| *t == NOISE).count(), 150);
        assert_eq!(a.clusters().len(), 5);
        assert_ne!(
            shapes_with_noise(2).dataset.numeric_row(0),
            a.dataset.numeric_row(0)
        );
    }

    #[test]
    fn core_labels_come_from_cores() {
        let s = shapes_with_noise(3);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let ls = s.core_labels(2, &mut rng).unwrap();
        assert_eq!(ls.len(), 10);
        assert_eq!(ls.n_categories(), 5);
        for (i, c) in ls.iter() {
            assert!(s.core[i]);
            assert_eq!(s.truth[i], c);
        }
    }

    #[test]
    fn gallery_shape() {
        let g = prototype_gallery(4, 3, 16, 10.0, 0);
        assert_eq!(g.dataset.len(), 12);
        assert_eq!(g.dataset.dim(), 16);
        assert_eq!(g.truth[3], "s2");
        assert!(g.dataset.numeric_row(5).unwrap().iter().all(|v| (0.0..=255.0).contains(v)));
    }
}
