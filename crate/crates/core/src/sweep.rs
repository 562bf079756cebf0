//! Label-budget sweeps: repeated random labelings at several budget levels.
//!
//! The spanning tree and in-tree are built once; each trial draws a label set,
//! cuts, assigns and scores. Trial `t` of level `l` draws from its own ChaCha
//! stream derived from the seed, so results do not depend on scheduling.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::data::{Dataset, LabelSet, Metric};
use crate::error::{Error, Result};
use crate::pipeline::{misassigned, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// The same number of labels from every true category.
    #[default]
    Stratified,
    /// `budget × categories` labels drawn uniformly from all points.
    Uniform,
}

impl std::str::FromStr for Sampling {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "stratified" => Ok(Sampling::Stratified),
            "uniform" => Ok(Sampling::Uniform),
            other => Err(format!("unknown sampling {other:?}")),
        }
    }
}

impl std::fmt::Display for Sampling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sampling::Stratified => "stratified",
            Sampling::Uniform => "uniform",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Labels per category at each level.
    pub budgets: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub sampling: Sampling,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            budgets: vec![1, 2, 5, 10],
            trials: 20,
            seed: 0,
            sampling: Sampling::Stratified,
            threads: None,
        }
    }
}

/// Outcome of a single labeled run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trial {
    pub n_labeled: usize,
    pub error_rate: f64,
    pub wrong: usize,
    pub n_subtrees: usize,
    pub n_clusters: usize,
    pub cut_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelStats {
    pub budget: usize,
    pub n_labeled: usize,
    pub mean_error: f64,
    pub stderr_error: f64,
    pub mean_subtrees: f64,
    pub stderr_subtrees: f64,
    pub mean_clusters: f64,
    pub mean_wrong: f64,
    pub mean_cut_ms: f64,
    pub stderr_cut_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub trials: usize,
    pub seed: u64,
    pub sampling: Sampling,
    pub mst_ms: f64,
    pub levels: Vec<LevelStats>,
}

/// Mean and standard error (sample deviation over √T) of a sample.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let t = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / t;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0);
    (mean, (var / t).sqrt())
}

/// Points grouped by ground-truth category, categories in first-seen order.
fn strata<S: AsRef<str>>(truth: &[S]) -> Vec<(&str, Vec<usize>)> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut groups: Vec<(&str, Vec<usize>)> = Vec::new();
    for (i, t) in truth.iter().enumerate() {
        let t = t.as_ref();
        let g = *index.entry(t).or_insert_with(|| {
            groups.push((t, Vec::new()));
            groups.len() - 1
        });
        groups[g].1.push(i);
    }
    groups
}

/// Draws one random label set from the ground truth.
pub fn draw_labels<S: AsRef<str>>(
    truth: &[S],
    budget: usize,
    sampling: Sampling,
    rng: &mut ChaCha8Rng,
) -> Result<LabelSet> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let groups = strata(truth);
    for (cat, members) in &groups {
        if budget > members.len() {
            return Err(Error::BudgetExceedsPopulation {
                category: cat.to_string(),
                budget,
                available: members.len(),
            });
        }
    }
    let picked: Vec<usize> = match sampling {
        Sampling::Stratified => groups
            .iter()
            .flat_map(|(_, members)| {
                sample(rng, members.len(), budget)
                    .into_iter()
                    .map(|k| members[k])
                    .collect::<Vec<_>>()
            })
            .collect(),
        Sampling::Uniform => sample(rng, truth.len(), budget * groups.len()).into_vec(),
    };
    LabelSet::new(picked.into_iter().map(|i| (i, truth[i].as_ref())))
}

fn trial_rng(seed: u64, level: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((level as u64) << 32) | trial as u64);
    rng
}

fn run_trial<S: AsRef<str> + Sync>(
    model: &Model,
    truth: &[S],
    budget: usize,
    sampling: Sampling,
    mut rng: ChaCha8Rng,
) -> Result<Trial> {
    let labels = draw_labels(truth, budget, sampling, &mut rng)?;
    let res = model.cluster(&labels)?;
    let (wrong, unlabeled) = misassigned(&res, truth, &labels)?;
    Ok(Trial {
        n_labeled: labels.len(),
        error_rate: if unlabeled == 0 {
            0.0
        } else {
            wrong as f64 / unlabeled as f64
        },
        wrong,
        n_subtrees: res.n_subtrees,
        n_clusters: res.n_clusters,
        cut_ms: res.timing.cut.as_secs_f64() * 1e3,
    })
}

/// All trials of every level, in (level, trial) order.
pub fn run_trials<S: AsRef<str> + Sync>(model: &Model, truth: &[S], cfg: &SweepConfig) -> Result<Vec<Vec<Trial>>> {
    if cfg.trials == 0 {
        return Err(Error::ZeroTrials);
    }
    if truth.len() != model.len() {
        return Err(Error::TruthLength {
            expected: model.len(),
            found: truth.len(),
        });
    }
    let work = || {
        cfg.budgets
            .iter()
            .enumerate()
            .map(|(level, &budget)| {
                (0..cfg.trials)
                    .into_par_iter()
                    .map(|t| run_trial(model, truth, budget, cfg.sampling, trial_rng(cfg.seed, level, t)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    };
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}

/// Runs a sweep against a prepared model.
pub fn sweep_model<S: AsRef<str> + Sync>(model: &Model, truth: &[S], cfg: &SweepConfig) -> Result<SweepReport> {
    let all = run_trials(model, truth, cfg)?;
    let levels = cfg
        .budgets
        .iter()
        .zip(&all)
        .map(|(&budget, trials)| {
            let col = |f: fn(&Trial) -> f64| trials.iter().map(f).collect::<Vec<f64>>();
            let (mean_error, stderr_error) = mean_stderr(&col(|t| t.error_rate));
            let (mean_subtrees, stderr_subtrees) = mean_stderr(&col(|t| t.n_subtrees as f64));
            let (mean_cut_ms, stderr_cut_ms) = mean_stderr(&col(|t| t.cut_ms));
            LevelStats {
                budget,
                n_labeled: trials[0].n_labeled,
                mean_error,
                stderr_error,
                mean_subtrees,
                stderr_subtrees,
                mean_clusters: mean_stderr(&col(|t| t.n_clusters as f64)).0,
                mean_wrong: mean_stderr(&col(|t| t.wrong as f64)).0,
                mean_cut_ms,
                stderr_cut_ms,
            }
        })
        .collect();
    Ok(SweepReport {
        trials: cfg.trials,
        seed: cfg.seed,
        sampling: cfg.sampling,
        mst_ms: model.mst_time().as_secs_f64() * 1e3,
        levels,
    })
}

/// Builds the model and runs the sweep.
pub fn sweep<S: AsRef<str> + Sync>(ds: &Dataset, truth: &[S], metric: Metric, cfg: &SweepConfig) -> Result<SweepReport> {
    if truth.len() != ds.len() {
        return Err(Error::TruthLength {
            expected: ds.len(),
            found: truth.len(),
        });
    }
    if cfg.budgets.contains(&0) {
        return Err(Error::ZeroBudget);
    }
    let model = Model::build(ds, metric)?;
    sweep_model(&model, truth, cfg)
}

pub const REPORT_COLUMNS: [&str; 10] = [
    "budget",
    "n_labeled",
    "mean_error",
    "stderr_error",
    "mean_subtrees",
    "mean_cut_ms",
    "stderr_subtrees",
    "mean_clusters",
    "mean_wrong",
    "stderr_cut_ms",
];

impl SweepReport {
    /// Tab-separated table, one row per budget level.
    ///
    /// Without timing the two time columns read `NA` and the `mst_ms` comment
    /// is dropped, so equal seeds give byte-identical text.
    pub fn to_tsv(&self, with_timing: bool) -> String {
        let mut out = format!(
            "# trials={} seed={} sampling={}\n",
            self.trials, self.seed, self.sampling
        );
        if with_timing {
            let _ = writeln!(out, "# mst_ms={}", self.mst_ms);
        }
        out.push_str(&REPORT_COLUMNS.join("\t"));
        out.push('\n');
        for l in &self.levels {
            let (cut, cut_se) = if with_timing {
                (l.mean_cut_ms.to_string(), l.stderr_cut_ms.to_string())
            } else {
                ("NA".to_owned(), "NA".to_owned())
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                l.budget,
                l.n_labeled,
                l.mean_error,
                l.stderr_error,
                l.mean_subtrees,
                cut,
                l.stderr_subtrees,
                l.mean_clusters,
                l.mean_wrong,
                cut_se
            );
        }
        out
    }

    /// Parses [`SweepReport::to_tsv`] output; `NA` times read back as NaN.
    pub fn from_tsv(text: &str) -> std::result::Result<SweepReport, String> {
        let mut report = SweepReport {
            trials: 0,
            seed: 0,
            sampling: Sampling::Stratified,
            mst_ms: f64::NAN,
            levels: Vec::new(),
        };
        let mut header_seen = false;
        for (lineno, line) in text.lines().enumerate() {
            let err = |e: &dyn std::fmt::Display| format!("line {}: {e}", lineno + 1);
            if let Some(meta) = line.strip_prefix("# ") {
                for kv in meta.split_whitespace() {
                    let (k, v) = kv.split_once('=').ok_or_else(|| err(&"bad metadata"))?;
                    match k {
                        "trials" => report.trials = v.parse().map_err(|e| err(&e))?,
                        "seed" => report.seed = v.parse().map_err(|e| err(&e))?,
                        "sampling" => report.sampling = v.parse().map_err(|e: String| err(&e))?,
                        "mst_ms" => report.mst_ms = v.parse().map_err(|e| err(&e))?,
                        _ => {}
                    }
                }
                continue;
            }
            if !header_seen {
                if line.split('\t').collect::<Vec<_>>() != REPORT_COLUMNS {
                    return Err(err(&"unexpected header"));
                }
                header_seen = true;
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != REPORT_COLUMNS.len() {
                return Err(err(&"wrong field count"));
            }
            let num = |s: &str| -> std::result::Result<f64, String> {
                if s == "NA" {
                    Ok(f64::NAN)
                } else {
                    s.parse().map_err(|e| err(&e))
                }
            };
            report.levels.push(LevelStats {
                budget: f[0].parse().map_err(|e| err(&e))?,
                n_labeled: f[1].parse().map_err(|e| err(&e))?,
                mean_error: num(f[2])?,
                stderr_error: num(f[3])?,
                mean_subtrees: num(f[4])?,
                mean_cut_ms: num(f[5])?,
                stderr_subtrees: num(f[6])?,
                mean_clusters: num(f[7])?,
                mean_wrong: num(f[8])?,
                stderr_cut_ms: num(f[9])?,
            });
        }
        if !header_seen {
            return Err("missing header".into());
        }
        Ok(report)
    }
}
