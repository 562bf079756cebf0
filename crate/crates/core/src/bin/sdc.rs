use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sdc::io::{self, DataFileSpec, DataFormat};
use sdc::{checks, error_rate, svg, Metric, Model, Sampling, SweepConfig};

#[derive(Parser)]
#[command(name = "sdc", version, about = "Semi-supervised divisive clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster one dataset under one label file.
    Cluster(ClusterArgs),
    /// Repeat clustering over random label draws at several label budgets.
    Sweep(SweepArgs),
    /// Run the randomized oracle cross-checks.
    Selfcheck {
        #[arg(long, env = "SDC_SEED", default_value_t = 0)]
        seed: u64,
        /// Omit per-check wall times from the output.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Numeric,
    Categorical,
}

#[derive(Args)]
struct DataArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long, value_parser = parse_metric)]
    metric: Metric,
    /// Table format; defaults to the one the metric works on.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Leave timings out of every output file (byte-reproducible output).
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct ClusterArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    labels: PathBuf,
    /// Column holding ground truth; enables the error-rate report.
    #[arg(long)]
    truth_col: Option<usize>,
    #[arg(long, default_value_t = 0)]
    root: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    plot: Option<PathBuf>,
    #[arg(long)]
    cut_log: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    truth_col: usize,
    /// Labels per category at each level, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,5,10")]
    budgets: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, env = "SDC_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = parse_sampling, default_value = "stratified")]
    sampling: Sampling,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse()
}

fn parse_sampling(s: &str) -> Result<Sampling, String> {
    s.parse()
}

fn file_spec(args: &DataArgs, truth_col: Option<usize>) -> Result<DataFileSpec, String> {
    let format = match args.format {
        Some(Format::Numeric) => DataFormat::NumericCsv,
        Some(Format::Categorical) => DataFormat::CategoricalCsv,
        None => match args.metric {
            Metric::Euclidean => DataFormat::NumericCsv,
            Metric::Mismatch => DataFormat::CategoricalCsv,
        },
    };
    let delimiter = u8::try_from(args.delimiter).map_err(|_| "delimiter must be ASCII".to_string())?;
    let mut spec = DataFileSpec::new(&args.data, format).delimiter(delimiter);
    spec.truth_column = truth_col;
    Ok(spec)
}

fn cluster(args: ClusterArgs) -> Result<(), Box<dyn std::error::Error>> {
    let loaded = io::load(&file_spec(&args.data, args.truth_col)?)?;
    let labels = io::load_labels(&args.labels)?;
    sdc::validate(&loaded.dataset, &labels)?;
    let model = Model::build_with_root(&loaded.dataset, args.data.metric, args.root)?;
    let res = model.cluster(&labels)?;
    let timing = !args.data.no_timing;

    println!(
        "points={} labeled={} subtrees={} clusters={} cuts={}",
        loaded.dataset.len(),
        labels.len(),
        res.n_subtrees,
        res.n_clusters,
        res.cut_log.n_cuts()
    );
    if let Some(truth) = &loaded.truth {
        println!("error_rate={}", error_rate(&res, truth, &labels)?);
    }
    if timing {
        let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
        println!(
            "timing_ms mst={:.3} orient={:.3} cut={:.3} assign={:.3}",
            ms(res.timing.mst),
            ms(res.timing.orient),
            ms(res.timing.cut),
            ms(res.timing.assign)
        );
    }
    if let Some(p) = &args.out {
        io::write_assignment(&res, p, timing)?;
    }
    if let Some(p) = &args.cut_log {
        io::write_cut_log(&res.cut_log, p, timing)?;
    }
    if let Some(p) = &args.plot {
        svg::emit_scatter_svg(&loaded.dataset, &res, &labels, p)?;
    }
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), Box<dyn std::error::Error>> {
    let loaded = io::load(&file_spec(&args.data, Some(args.truth_col))?)?;
    let truth = loaded.truth.expect("truth column requested");
    let cfg = SweepConfig {
        budgets: args.budgets,
        trials: args.trials,
        seed: args.seed,
        sampling: args.sampling,
        threads: args.threads,
    };
    let report = sdc::sweep(&loaded.dataset, &truth, args.data.metric, &cfg)?;
    let timing = !args.data.no_timing;
    match &args.report {
        Some(p) => io::write_report(&report, p, timing)?,
        None => print!("{}", report.to_tsv(timing)),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cluster(a) => cluster(a),
        Command::Sweep(a) => sweep(a),
        Command::Selfcheck { seed, no_timing } => {
            let outcomes = checks::all(seed);
            for o in &outcomes {
                if no_timing {
                    let status = if o.passed { "PASS" } else { "FAIL" };
                    println!("[{status}] {}: {}", o.name, o.detail);
                } else {
                    println!("{o}");
                }
            }
            if outcomes.iter().all(|o| o.passed) {
                Ok(())
            } else {
                Err("self-check failed".into())
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sdc: {e}");
            ExitCode::FAILURE
        }
    }
}
