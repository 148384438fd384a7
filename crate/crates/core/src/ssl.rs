//! Semi-supervised learning by p-Laplacian regularization.
//!
//! Given labels `y ∈ {−1, 0, +1}^V` (0 for unlabeled) the learned function
//! minimizes `E(ψ) = S_p(ψ) + μ ‖ψ − y‖²`. The stationarity condition is
//! `p Δ_p ψ + 2μ (ψ − y) = 0`.
//!
//! [`gauss_jacobi_step`] performs one synchronous fixed-point sweep with
//! coefficients rebuilt from the current iterate. [`solve`] starts from `y`
//! and repeats that sweep. Each sweep moves along `−D_A^{−1} ∇E` with
//! `D_A = p diag(L_p) + 2μ`. When the full sweep would increase `E`, which can
//! happen for `p ≠ 2`, the move is shortened by backtracking. At `p = 2` the
//! full sweep never increases `E`, so the iteration is the plain one.
//!
//! At `p = 2` the minimizer has the closed form
//! `ψ = β (I − α D^{−1/2} W D^{−1/2})^{−1} y` with `α = 1/(1+μ)` and
//! `β = μ/(1+μ)`, see [`closed_form_p2`].

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::calculus::{check_p, dirichlet_sum};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeFunction};
use crate::laplacians::{laplacian_p2, LinearOperator, LinearizedPLaplacian, DENSE_LIMIT};
use crate::linalg::conjugate_gradient;

/// The cross-validation grid `{1, 10, 10², 10³, 10⁴}`.
pub const DEFAULT_MU_GRID: [f64; 5] = [1.0, 10.0, 100.0, 1000.0, 10000.0];

/// A regularization problem on a fixed hypergraph.
#[derive(Clone, Debug)]
pub struct SslProblem<'a> {
    h: &'a Hypergraph,
    y: NodeFunction,
    mu: f64,
    p: f64,
}

impl<'a> SslProblem<'a> {
    /// Validates labels, `μ > 0` and `p ≥ 1`.
    pub fn new(h: &'a Hypergraph, y: impl Into<NodeFunction>, mu: f64, p: f64) -> Result<Self> {
        let y = y.into();
        h.check_len(&y)?;
        check_p(p)?;
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidMu(mu));
        }
        if let Some(bad) = y.iter().find(|&&v| v != 0.0 && v != 1.0 && v != -1.0) {
            return Err(Error::InvalidLabels(format!(
                "label value {bad} not in {{-1, 0, 1}}"
            )));
        }
        if !y.contains(&1.0) || !y.contains(&-1.0) {
            return Err(Error::InvalidLabels(
                "need at least one +1 and one -1 label".into(),
            ));
        }
        Ok(Self { h, y, mu, p })
    }

    pub fn hypergraph(&self) -> &'a Hypergraph {
        self.h
    }

    pub fn labels(&self) -> &NodeFunction {
        &self.y
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Stopping rule for [`solve`].
#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    /// Stop when the ∞-norm of the update falls below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Keep `E(ψ_t)` for every iterate in [`SslResult::objective_trace`].
    pub record_objective: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 10_000,
            record_objective: false,
        }
    }
}

/// Outcome of a solve.
#[derive(Clone, Debug)]
pub struct SslResult {
    pub psi: NodeFunction,
    pub iterations: usize,
    /// ∞-norm of the last update.
    pub final_residual: f64,
    pub objective_value: f64,
    /// `‖p Δ_p ψ + 2μ (ψ − y)‖_∞`.
    pub stationarity_residual: f64,
    pub converged: bool,
    /// `E(ψ_0), E(ψ_1), …` when requested.
    pub objective_trace: Vec<f64>,
}

/// `E(ψ) = S_p(ψ) + μ ‖ψ − y‖²`.
///
/// ```
/// use hyperlap::{ssl::{objective, SslProblem}, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// let prob = SslProblem::new(&t3, vec![1.0, -1.0, 0.0], 1.0, 2.0).unwrap();
/// assert_eq!(objective(&prob, &[0.0; 3]).unwrap(), 2.0);
/// ```
pub fn objective(prob: &SslProblem, psi: &[f64]) -> Result<f64> {
    let fit: f64 = psi
        .iter()
        .zip(prob.y.iter())
        .map(|(a, b)| (a - b).powi(2))
        .sum();
    Ok(dirichlet_sum(prob.h, psi, prob.p)? + prob.mu * fit)
}

struct Sweep {
    target: Vec<f64>,
    gradient: Vec<f64>,
}

fn sweep(prob: &SslProblem, psi: &[f64]) -> Result<Sweep> {
    let lin = LinearizedPLaplacian::new(prob.h, psi, prob.p)?;
    let lpsi = lin.apply(psi);
    let diag = lin.diagonal();
    let (p, mu) = (prob.p, prob.mu);
    let mut target = Vec::with_capacity(psi.len());
    let mut gradient = Vec::with_capacity(psi.len());
    for v in 0..psi.len() {
        let denom = p * diag[v] + 2.0 * mu;
        if !(denom.is_finite() && denom > 0.0) {
            return Err(Error::ZeroDiagonal {
                node: v,
                value: denom,
            });
        }
        target.push((-p * (lpsi[v] - diag[v] * psi[v]) + 2.0 * mu * prob.y[v]) / denom);
        gradient.push(p * lpsi[v] + 2.0 * mu * (psi[v] - prob.y[v]));
    }
    Ok(Sweep { target, gradient })
}

/// One synchronous sweep
/// `ψ'(v) = (−p Σ_{u≠v} l_p(u,v) ψ(u) + 2μ y(v)) / (p l_p(v,v) + 2μ)`.
pub fn gauss_jacobi_step(prob: &SslProblem, psi: &[f64]) -> Result<NodeFunction> {
    prob.h.check_len(psi)?;
    Ok(sweep(prob, psi)?.target.into())
}

/// `‖p Δ_p ψ + 2μ (ψ − y)‖_∞`.
pub fn stationarity_residual(prob: &SslProblem, psi: &[f64]) -> Result<f64> {
    prob.h.check_len(psi)?;
    let lin = LinearizedPLaplacian::new(prob.h, psi, prob.p)?;
    let lpsi = lin.apply(psi);
    Ok((0..psi.len())
        .map(|v| (prob.p * lpsi[v] + 2.0 * prob.mu * (psi[v] - prob.y[v])).abs())
        .fold(0.0, f64::max))
}

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-12;

/// Iterates [`gauss_jacobi_step`] from `ψ = y`.
///
/// Hitting `max_iter` is not an error; the result has `converged = false`.
pub fn solve(prob: &SslProblem, opts: &SolveOptions) -> Result<SslResult> {
    let mut psi = prob.y.to_vec();
    let mut energy = objective(prob, &psi)?;
    let mut trace = Vec::new();
    if opts.record_objective {
        trace.push(energy);
    }
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        let Sweep { target, gradient } = sweep(prob, &psi)?;
        let step: Vec<f64> = target.iter().zip(&psi).map(|(t, x)| t - x).collect();
        let slope: f64 = step.iter().zip(&gradient).map(|(s, g)| s * g).sum();
        let slack = 8.0 * f64::EPSILON * energy.abs();
        let mut t = 1.0;
        let accepted = loop {
            let cand: Vec<f64> = psi.iter().zip(&step).map(|(x, s)| x + t * s).collect();
            let e = objective(prob, &cand)?;
            let plain = t == 1.0 && e <= energy + slack;
            if plain || e <= energy + ARMIJO * t * slope + slack {
                break Some((cand, e));
            }
            t *= 0.5;
            if t < MIN_STEP {
                break None;
            }
        };
        let Some((cand, e)) = accepted else {
            log::debug!("line search failed after {iterations} sweeps");
            break;
        };
        residual = cand
            .iter()
            .zip(&psi)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        psi = cand;
        energy = e;
        if opts.record_objective {
            trace.push(energy);
        }
        if residual < opts.tol {
            converged = true;
            break;
        }
    }
    let stationarity = stationarity_residual(prob, &psi)?;
    Ok(SslResult {
        psi: psi.into(),
        iterations,
        final_residual: residual,
        objective_value: energy,
        stationarity_residual: stationarity,
        converged,
        objective_trace: trace,
    })
}

/// Linear solver used by [`closed_form_p2_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LinearSolver {
    /// Dense Cholesky up to [`DENSE_LIMIT`] nodes, conjugate gradients above.
    #[default]
    Auto,
    Dense,
    ConjugateGradient,
}

/// The p = 2 minimizer `β (I − α D^{−1/2} W D^{−1/2})^{−1} y`.
///
/// ```
/// use hyperlap::{ssl::closed_form_p2, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// let psi = closed_form_p2(&t3, &[1.0, -1.0, 0.0], 1.0).unwrap();
/// assert!((psi[0] - 0.4).abs() < 1e-12 && psi[2].abs() < 1e-12);
/// ```
pub fn closed_form_p2(h: &Hypergraph, y: &[f64], mu: f64) -> Result<NodeFunction> {
    closed_form_p2_with(h, y, mu, LinearSolver::Auto)
}

/// [`closed_form_p2`] with an explicit choice of linear solver.
pub fn closed_form_p2_with(
    h: &Hypergraph,
    y: &[f64],
    mu: f64,
    solver: LinearSolver,
) -> Result<NodeFunction> {
    h.check_len(y)?;
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::InvalidMu(mu));
    }
    let n = h.num_nodes();
    let alpha = 1.0 / (1.0 + mu);
    let beta = mu / (1.0 + mu);
    let lap = laplacian_p2(h);
    let rhs: Vec<f64> = y.iter().map(|v| beta * v).collect();
    let dense = match solver {
        LinearSolver::Auto => n <= DENSE_LIMIT,
        LinearSolver::Dense => true,
        LinearSolver::ConjugateGradient => false,
    };
    if dense {
        // I − αQ = (1 − α) I + α L
        let l = crate::laplacians::dense_by_columns(&lap);
        let m = DMatrix::identity(n, n) * (1.0 - alpha) + l * alpha;
        let chol = m.cholesky().ok_or(Error::SolverStall {
            iterations: 0,
            residual: f64::NAN,
        })?;
        let x = chol.solve(&DVector::from_vec(rhs));
        return Ok(x.iter().copied().collect());
    }
    let apply = |x: &[f64], out: &mut [f64]| {
        lap.apply_into(x, out);
        for (o, xi) in out.iter_mut().zip(x) {
            *o = (1.0 - alpha) * xi + alpha * *o;
        }
    };
    let (x, _) = conjugate_gradient(apply, &rhs, 1e-13, 20 * n + 100)?;
    Ok(x.into())
}

/// Solves with the closed form at `p = 2` and [`solve`] otherwise.
pub fn fit(prob: &SslProblem, opts: &SolveOptions) -> Result<SslResult> {
    if prob.p != 2.0 {
        return solve(prob, opts);
    }
    let psi = closed_form_p2(prob.h, &prob.y, prob.mu)?;
    let objective_value = objective(prob, &psi)?;
    let stationarity = stationarity_residual(prob, &psi)?;
    Ok(SslResult {
        psi,
        iterations: 0,
        final_residual: 0.0,
        objective_value,
        stationarity_residual: stationarity,
        converged: true,
        objective_trace: Vec::new(),
    })
}

/// Signs of `ψ`, with `0 ↦ +1`.
pub fn predict(psi: &[f64]) -> Vec<i8> {
    psi.iter().map(|&x| if x >= 0.0 { 1 } else { -1 }).collect()
}

/// Picks `μ` from `grid` by stratified `folds`-fold cross validation.
///
/// Folds are drawn per class from a generator seeded by `seed`. The mean
/// held-out error decides; ties go to the smaller `μ`.
pub fn cross_validate_mu(
    h: &Hypergraph,
    labeled: &[(usize, i8)],
    p: f64,
    grid: &[f64],
    folds: usize,
    seed: u64,
) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("empty mu grid".into()));
    }
    if folds < 2 {
        return Err(Error::InvalidConfig(format!(
            "need at least 2 folds, got {folds}"
        )));
    }
    if let Some(&(v, c)) = labeled
        .iter()
        .find(|&&(v, c)| v >= h.num_nodes() || (c != 1 && c != -1))
    {
        return Err(Error::InvalidLabels(format!(
            "bad labeled entry ({v}, {c})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fold_of = vec![0usize; labeled.len()];
    for class in [-1i8, 1] {
        let mut idx: Vec<usize> = (0..labeled.len())
            .filter(|&i| labeled[i].1 == class)
            .collect();
        if idx.len() < folds {
            return Err(Error::TooFewLabels {
                class,
                count: idx.len(),
                needed: folds,
            });
        }
        idx.shuffle(&mut rng);
        for (k, i) in idx.into_iter().enumerate() {
            fold_of[i] = k % folds;
        }
    }

    let mut best: Option<(f64, f64)> = None;
    let mut sorted_grid = grid.to_vec();
    sorted_grid.sort_by(f64::total_cmp);
    for &mu in &sorted_grid {
        let mut total = 0.0;
        for f in 0..folds {
            let mut y = vec![0.0; h.num_nodes()];
            for (i, &(v, c)) in labeled.iter().enumerate() {
                if fold_of[i] != f {
                    y[v] = c as f64;
                }
            }
            let prob = SslProblem::new(h, y, mu, p)?;
            let pred = predict(&fit(&prob, &SolveOptions::default())?.psi);
            let (mut wrong, mut count) = (0usize, 0usize);
            for (i, &(v, c)) in labeled.iter().enumerate() {
                if fold_of[i] == f {
                    count += 1;
                    wrong += usize::from(pred[v] != c);
                }
            }
            total += wrong as f64 / count as f64;
        }
        let err = total / folds as f64;
        if best.is_none_or(|(e, _)| err < e) {
            best = Some((err, mu));
        }
    }
    Ok(best.map(|(_, mu)| mu).unwrap_or(grid[0]))
}
