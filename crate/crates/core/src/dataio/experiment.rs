//! Seeded experiment runs producing one [`ResultRecord`] per configuration
//! point.
//!
//! Work items run on the rayon pool. Each item derives its own generator from
//! the master seed and its position, so results do not depend on scheduling,
//! and records are returned sorted by `(labeled_fraction, p, trial)`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::spectral::{
    error_rate, multiclass_cut_p2, two_class_cut_p, DescentOptions, PartitionResult,
};
use crate::ssl::{cross_validate_mu, fit, predict, SolveOptions, SslProblem, DEFAULT_MU_GRID};

/// Experiment kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Ssl,
    Cut2,
    Cutk,
    SweepP,
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ssl => "ssl",
            Self::Cut2 => "cut2",
            Self::Cutk => "cutk",
            Self::SweepP => "sweep-p",
        })
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ssl" => Ok(Self::Ssl),
            "cut2" => Ok(Self::Cut2),
            "cutk" => Ok(Self::Cutk),
            "sweep-p" => Ok(Self::SweepP),
            other => Err(Error::InvalidConfig(format!("unknown task `{other}`"))),
        }
    }
}

/// Fixed `μ` or cross validation over a grid.
#[derive(Clone, Debug, PartialEq)]
pub enum MuChoice {
    Fixed(f64),
    CrossValidate { grid: Vec<f64>, folds: usize },
}

impl Default for MuChoice {
    fn default() -> Self {
        Self::CrossValidate {
            grid: DEFAULT_MU_GRID.to_vec(),
            folds: 5,
        }
    }
}

/// Everything a run needs besides the data.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    /// Copied into every record.
    pub dataset: String,
    pub task: Task,
    pub p_grid: Vec<f64>,
    pub mu: MuChoice,
    /// Labeled fractions for SSL, each in `(0, 1]`.
    pub fractions: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// Number of clusters for `cutk`; the number of classes when `None`.
    pub k: Option<usize>,
    /// k-means restarts for `cutk`.
    pub restarts: usize,
    pub solve: SolveOptions,
    pub descent: DescentOptions,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dataset: String::new(),
            task: Task::Ssl,
            p_grid: vec![2.0],
            mu: MuChoice::default(),
            fractions: vec![0.1],
            trials: 10,
            seed: 0,
            k: None,
            restarts: 10,
            solve: SolveOptions::default(),
            descent: DescentOptions::default(),
        }
    }
}

/// The grid `1.0, 1.1, …, 3.0`.
pub fn default_p_grid() -> Vec<f64> {
    (10..=30).map(|i| i as f64 / 10.0).collect()
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.p_grid.is_empty() {
            return Err(Error::InvalidConfig("empty p grid".into()));
        }
        if let Some(&p) = self.p_grid.iter().find(|p| !(p.is_finite() && **p >= 1.0)) {
            return Err(Error::InvalidP {
                p,
                reason: "experiments need finite p ≥ 1",
            });
        }
        if self.task == Task::Ssl {
            if self.fractions.is_empty() {
                return Err(Error::InvalidConfig("no labeled fractions".into()));
            }
            if let Some(f) = self.fractions.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
                return Err(Error::InvalidConfig(format!(
                    "labeled fraction {f} outside (0, 1]"
                )));
            }
        }
        match &self.mu {
            MuChoice::Fixed(mu) if !(mu.is_finite() && *mu > 0.0) => Err(Error::InvalidMu(*mu)),
            MuChoice::CrossValidate { grid, .. } if grid.is_empty() => {
                Err(Error::InvalidConfig("empty mu grid".into()))
            }
            _ => Ok(()),
        }
    }
}

/// One row of experiment output.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    pub dataset: String,
    pub task: Task,
    pub p: f64,
    pub mu: Option<f64>,
    pub labeled_fraction: Option<f64>,
    pub trial: usize,
    /// Seed of this record's generator.
    pub seed: u64,
    pub error_rate: f64,
    pub ncut_value: Option<f64>,
    pub iterations: usize,
    /// Seconds.
    pub wall_time: f64,
    pub converged: bool,
    /// Nothing was left to score, or the descent never left its warm start.
    pub degenerate: bool,
}

/// Seed for work item `stream` under `master`.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng.next_u64()
}

fn sort_records(records: &mut [ResultRecord]) {
    records.sort_by(|a, b| {
        let fa = a.labeled_fraction.unwrap_or(f64::NEG_INFINITY);
        let fb = b.labeled_fraction.unwrap_or(f64::NEG_INFINITY);
        fa.total_cmp(&fb)
            .then(a.p.total_cmp(&b.p))
            .then(a.trial.cmp(&b.trial))
    });
}

fn binary_targets(labels: &[usize]) -> Result<Vec<i8>> {
    let k = labels.iter().max().map_or(0, |m| m + 1);
    if k != 2 || !labels.contains(&0) {
        return Err(Error::InvalidLabels(format!(
            "SSL needs exactly two classes, found {k}"
        )));
    }
    Ok(labels
        .iter()
        .map(|&c| if c == 0 { 1 } else { -1 })
        .collect())
}

/// Picks `round(fraction · n)` nodes (at least two), at least one per class.
pub fn draw_labeled(targets: &[i8], fraction: f64, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = targets.len();
    let m = ((fraction * n as f64).round() as usize).clamp(2.min(n), n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut chosen = Vec::with_capacity(m);
    for class in [1i8, -1] {
        if let Some(&v) = order.iter().find(|&&v| targets[v] == class) {
            chosen.push(v);
        }
    }
    for &v in &order {
        if chosen.len() >= m {
            break;
        }
        if !chosen.contains(&v) {
            chosen.push(v);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Semi-supervised runs over fractions × trials × `p_grid`, scored on the
/// unlabeled nodes.
pub fn run_ssl_experiment(
    h: &Hypergraph,
    labels: &[usize],
    cfg: &ExperimentConfig,
) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    if labels.len() != h.num_nodes() {
        return Err(Error::LengthMismatch {
            expected: h.num_nodes(),
            actual: labels.len(),
        });
    }
    let targets = binary_targets(labels)?;
    let items: Vec<(usize, usize, f64)> = (0..cfg.fractions.len())
        .flat_map(|fi| {
            (0..cfg.trials).flat_map(move |t| cfg.p_grid.iter().map(move |&p| (fi, t, p)))
        })
        .collect();
    let mut records = items
        .par_iter()
        .map(|&(fi, trial, p)| {
            let seed = derive_seed(cfg.seed, ((fi as u64) << 32) | trial as u64);
            ssl_trial(h, &targets, cfg, cfg.fractions[fi], trial, seed, p)
        })
        .collect::<Result<Vec<_>>>()?;
    sort_records(&mut records);
    Ok(records)
}

fn ssl_trial(
    h: &Hypergraph,
    targets: &[i8],
    cfg: &ExperimentConfig,
    fraction: f64,
    trial: usize,
    seed: u64,
    p: f64,
) -> Result<ResultRecord> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labeled = draw_labeled(targets, fraction, &mut rng);
    let mu = match &cfg.mu {
        MuChoice::Fixed(mu) => *mu,
        MuChoice::CrossValidate { grid, folds } => {
            let pairs: Vec<(usize, i8)> = labeled.iter().map(|&v| (v, targets[v])).collect();
            let smallest = [1i8, -1]
                .iter()
                .map(|c| pairs.iter().filter(|x| x.1 == *c).count())
                .min()
                .unwrap_or(0);
            let folds = (*folds).min(smallest);
            if folds < 2 {
                log::warn!(
                    "too few labels for cross validation; using mu = {}",
                    grid[0]
                );
                grid[0]
            } else {
                cross_validate_mu(h, &pairs, p, grid, folds, seed)?
            }
        }
    };
    let mut y = vec![0.0; h.num_nodes()];
    let mut is_labeled = vec![false; h.num_nodes()];
    for &v in &labeled {
        y[v] = targets[v] as f64;
        is_labeled[v] = true;
    }
    let prob = SslProblem::new(h, y, mu, p)?;
    let result = fit(&prob, &cfg.solve)?;
    let pred = predict(&result.psi);
    let (mut wrong, mut count) = (0usize, 0usize);
    for v in (0..h.num_nodes()).filter(|&v| !is_labeled[v]) {
        count += 1;
        wrong += usize::from(pred[v] != targets[v]);
    }
    Ok(ResultRecord {
        dataset: cfg.dataset.clone(),
        task: Task::Ssl,
        p,
        mu: Some(mu),
        labeled_fraction: Some(fraction),
        trial,
        seed,
        error_rate: if count == 0 {
            0.0
        } else {
            wrong as f64 / count as f64
        },
        ncut_value: None,
        iterations: result.iterations,
        wall_time: start.elapsed().as_secs_f64(),
        converged: result.converged,
        degenerate: count == 0,
    })
}

fn cut_record(
    cfg: &ExperimentConfig,
    part: &PartitionResult,
    labels: &[usize],
    trial: usize,
    seed: u64,
    start: Instant,
) -> Result<ResultRecord> {
    Ok(ResultRecord {
        dataset: cfg.dataset.clone(),
        task: cfg.task,
        p: part.p,
        mu: None,
        labeled_fraction: None,
        trial,
        seed,
        error_rate: error_rate(&part.assignment, labels)?,
        ncut_value: Some(part.ncut_value),
        iterations: part.descent_iterations,
        wall_time: start.elapsed().as_secs_f64(),
        converged: part.converged,
        degenerate: part.no_descent,
    })
}

/// Clustering runs scored against `labels`.
///
/// `cut2` and `sweep-p` evaluate one two-class cut per grid point (they are
/// deterministic, so only trial 0 runs). `cutk` runs `trials` seeded k-means
/// pipelines at p = 2.
pub fn run_cut_experiment(
    h: &Hypergraph,
    labels: &[usize],
    cfg: &ExperimentConfig,
) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    if labels.len() != h.num_nodes() {
        return Err(Error::LengthMismatch {
            expected: h.num_nodes(),
            actual: labels.len(),
        });
    }
    let mut records = match cfg.task {
        Task::Ssl => return Err(Error::InvalidConfig("ssl is not a cut task".into())),
        Task::Cut2 | Task::SweepP => cfg
            .p_grid
            .par_iter()
            .map(|&p| {
                let start = Instant::now();
                let part = two_class_cut_p(h, p, &cfg.descent)?;
                cut_record(cfg, &part, labels, 0, cfg.seed, start)
            })
            .collect::<Result<Vec<_>>>()?,
        Task::Cutk => {
            let k = cfg
                .k
                .unwrap_or_else(|| labels.iter().max().map_or(0, |m| m + 1));
            (0..cfg.trials)
                .into_par_iter()
                .map(|trial| {
                    let start = Instant::now();
                    let seed = derive_seed(cfg.seed, trial as u64);
                    let part = multiclass_cut_p2(h, k, seed, cfg.restarts)?;
                    cut_record(cfg, &part, labels, trial, seed, start)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    sort_records(&mut records);
    Ok(records)
}

/// Mean error over trials at one `(fraction, p)` point.
#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub labeled_fraction: Option<f64>,
    pub p: f64,
    pub mean_error: f64,
    pub trials: usize,
}

/// Groups records by `(fraction, p)` and averages the error.
pub fn aggregate(records: &[ResultRecord]) -> Vec<Aggregate> {
    let mut sorted = records.to_vec();
    sort_records(&mut sorted);
    let mut out: Vec<Aggregate> = Vec::new();
    for r in &sorted {
        match out.last_mut() {
            Some(a) if a.labeled_fraction == r.labeled_fraction && a.p == r.p => {
                a.mean_error += r.error_rate;
                a.trials += 1;
            }
            _ => out.push(Aggregate {
                labeled_fraction: r.labeled_fraction,
                p: r.p,
                mean_error: r.error_rate,
                trials: 1,
            }),
        }
    }
    out.iter_mut().for_each(|a| a.mean_error /= a.trials as f64);
    out
}

/// The `p` with the lowest mean error per fraction, smallest `p` on ties.
pub fn best_p(records: &[ResultRecord]) -> Vec<Aggregate> {
    let mut best: Vec<Aggregate> = Vec::new();
    for a in aggregate(records) {
        match best.last_mut() {
            Some(b) if b.labeled_fraction == a.labeled_fraction => {
                if a.mean_error < b.mean_error {
                    *b = a;
                }
            }
            _ => best.push(a),
        }
    }
    best
}

impl fmt::Display for Aggregate {
    /// `error (p)`, with the error at four decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4} ({})", self.mean_error, self.p)
    }
}
