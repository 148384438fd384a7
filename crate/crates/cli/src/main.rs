//! `hyperlap`: ingest categorical data, inspect hypergraphs and run label
//! propagation and normalized-cut experiments.
//!
//! Exit codes: 0 success, 2 validation error, 3 solver non-convergence.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperlap::dataio::{
    best_p, default_p_grid, emit_csv, ingest, load_hypergraph, run_checks, run_cut_experiment,
    run_ssl_experiment, save_hypergraph, to_document, write_csv, Dataset, DatasetSpec,
    ExperimentConfig, FeatureColumns, MissingPolicy, MuChoice, ResultRecord, Task, PRESETS,
};
use hyperlap::ssl::DEFAULT_MU_GRID;
use hyperlap::Error;

#[derive(Parser)]
#[command(
    name = "hyperlap",
    version,
    about = "Hypergraph p-Laplacian label propagation and normalized cuts"
)]
struct Cli {
    /// Master seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// How to read the input: a `hyperlap/1` document, or a delimited table when
/// `--preset` or `--label-col` is given.
#[derive(Args)]
struct Input {
    /// Input file.
    input: PathBuf,
    /// Named table layout.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESETS))]
    preset: Option<String>,
    /// Label column of a delimited table.
    #[arg(long = "label-col")]
    label_col: Option<usize>,
    /// Missing-value handling for delimited tables.
    #[arg(long, value_parser = ["drop-membership", "as-category", "drop-attribute"])]
    policy: Option<String>,
    /// Comma-separated feature columns (default: all but the label).
    #[arg(long, value_delimiter = ',')]
    features: Vec<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a delimited table into a `hyperlap/1` document.
    Convert(Input),
    /// Print sizes and degree statistics.
    Info(Input),
    /// Semi-supervised label propagation over labeled fractions and trials.
    Ssl {
        #[command(flatten)]
        input: Input,
        /// Exponents, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        p: Vec<f64>,
        /// Fixed regularization weight.
        #[arg(long, conflicts_with = "cv")]
        mu: Option<f64>,
        /// Choose mu by 5-fold cross validation (the default without --mu).
        #[arg(long)]
        cv: bool,
        /// Labeled fractions, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "0.1")]
        fraction: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Normalized cut scored against the labels.
    Cut {
        #[command(flatten)]
        input: Input,
        /// Number of clusters (default: number of classes).
        #[arg(long)]
        k: Option<usize>,
        /// Exponents for two-class cuts, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        p: Vec<f64>,
        /// Seeded k-means runs for k > 2.
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
    },
    /// Two-class cut over a grid of p (default 1.0, 1.1, ..., 3.0).
    SweepP {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
    },
    /// Evaluate the built-in identities on a hypergraph.
    Check {
        #[command(flatten)]
        input: Input,
        /// Random functions per identity.
        #[arg(long, default_value_t = 20)]
        draws: usize,
    },
}

fn load(input: &Input) -> hyperlap::Result<Dataset> {
    if input.preset.is_none() && input.label_col.is_none() {
        return load_hypergraph(&input.input);
    }
    let mut spec = match &input.preset {
        Some(name) => DatasetSpec::preset(name, &input.input).expect("validated by clap"),
        None => DatasetSpec::new(&input.input, 0, MissingPolicy::AsCategory),
    };
    if let Some(col) = input.label_col {
        spec.label_column = col;
    }
    if let Some(policy) = &input.policy {
        spec.missing_policy = policy.parse()?;
    }
    if !input.features.is_empty() {
        spec.feature_columns = FeatureColumns::List(input.features.clone());
    }
    ingest(&spec)
}

fn labels(data: &Dataset) -> hyperlap::Result<&[usize]> {
    data.labels
        .as_deref()
        .ok_or_else(|| Error::InvalidLabels("input carries no labels".into()))
}

fn dataset_name(input: &Input) -> String {
    input.preset.clone().unwrap_or_else(|| {
        input
            .input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    })
}

fn emit(records: &[ResultRecord], output: Option<&Path>) -> hyperlap::Result<()> {
    match output {
        Some(path) => emit_csv(records, path),
        None => write_csv(records, std::io::stdout().lock()),
    }
}

fn write_text(text: &str, output: Option<&Path>) -> hyperlap::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

enum Outcome {
    Done,
    Unconverged,
    ChecksFailed,
}

fn finish(records: &[ResultRecord], output: Option<&Path>) -> hyperlap::Result<Outcome> {
    emit(records, output)?;
    for b in best_p(records) {
        match b.labeled_fraction {
            Some(f) => eprintln!("fraction {f}: best {b}"),
            None => eprintln!("best {b}"),
        }
    }
    Ok(if records.iter().all(|r| r.converged) {
        Outcome::Done
    } else {
        Outcome::Unconverged
    })
}

fn run(cli: &Cli) -> hyperlap::Result<Outcome> {
    let output = cli.output.as_deref();
    match &cli.command {
        Command::Convert(input) => {
            let data = load(input)?;
            match output {
                Some(path) => save_hypergraph(&data, path)?,
                None => write_text(&to_document(&data), None)?,
            }
            Ok(Outcome::Done)
        }
        Command::Info(input) => {
            let data = load(input)?;
            let h = &data.hypergraph;
            let degrees = h.degrees();
            let (lo, hi) = degrees
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(lo, hi), &d| {
                    (lo.min(d), hi.max(d))
                });
            let max_edge = h.edges().map(|(_, m, _)| m.len()).max().unwrap_or(0);
            let text = format!(
                "nodes\t{}\nedges\t{}\nincidences\t{}\nclasses\t{}\nvolume\t{}\ndegree range\t{lo} .. {hi}\nlargest edge\t{max_edge}\n",
                h.num_nodes(),
                h.num_edges(),
                h.num_incidences(),
                data.num_classes(),
                h.total_volume(),
            );
            write_text(&text, output)?;
            Ok(Outcome::Done)
        }
        Command::Ssl {
            input,
            p,
            mu,
            cv: _,
            fraction,
            trials,
        } => {
            let data = load(input)?;
            let cfg = ExperimentConfig {
                dataset: dataset_name(input),
                task: Task::Ssl,
                p_grid: p.clone(),
                mu: match mu {
                    Some(m) => MuChoice::Fixed(*m),
                    None => MuChoice::CrossValidate {
                        grid: DEFAULT_MU_GRID.to_vec(),
                        folds: 5,
                    },
                },
                fractions: fraction.clone(),
                trials: *trials,
                seed: cli.seed,
                ..ExperimentConfig::default()
            };
            let records = run_ssl_experiment(&data.hypergraph, labels(&data)?, &cfg)?;
            finish(&records, output)
        }
        Command::Cut {
            input,
            k,
            p,
            trials,
            restarts,
        } => {
            let data = load(input)?;
            let labels = labels(&data)?;
            let k = k.unwrap_or_else(|| data.num_classes().max(2));
            let cfg = ExperimentConfig {
                dataset: dataset_name(input),
                task: if k == 2 { Task::Cut2 } else { Task::Cutk },
                p_grid: if k == 2 { p.clone() } else { vec![2.0] },
                k: Some(k),
                trials: *trials,
                restarts: *restarts,
                seed: cli.seed,
                ..ExperimentConfig::default()
            };
            let records = run_cut_experiment(&data.hypergraph, labels, &cfg)?;
            finish(&records, output)
        }
        Command::SweepP { input, p } => {
            let data = load(input)?;
            let cfg = ExperimentConfig {
                dataset: dataset_name(input),
                task: Task::SweepP,
                p_grid: if p.is_empty() {
                    default_p_grid()
                } else {
                    p.clone()
                },
                seed: cli.seed,
                ..ExperimentConfig::default()
            };
            let records = run_cut_experiment(&data.hypergraph, labels(&data)?, &cfg)?;
            finish(&records, output)
        }
        Command::Check { input, draws } => {
            let data = load(input)?;
            let outcomes = run_checks(&data.hypergraph, cli.seed, *draws)?;
            let mut text = String::new();
            for c in &outcomes {
                let verdict = if c.passed() { "PASS" } else { "FAIL" };
                text.push_str(&format!(
                    "{verdict}\t{}\t{:.3e} (tol {:.0e})\n",
                    c.name, c.value, c.tolerance
                ));
            }
            write_text(&text, output)?;
            Ok(if outcomes.iter().all(|c| c.passed()) {
                Outcome::Done
            } else {
                Outcome::ChecksFailed
            })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            log::error!("cannot size the thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(2),
        Ok(Outcome::Unconverged) => {
            log::error!("some runs did not converge");
            ExitCode::from(3)
        }
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(if e.is_non_convergence() { 3 } else { 2 })
        }
    }
}
