//! p-eigenpairs, Rayleigh quotients and descent on the centered quotient.
//!
//! | name | definition |
//! |---|---|
//! | `R_p(ψ)` | `S_p(ψ) / Σ_v |ψ(v)|^p` |
//! | `mean_p(ψ)` | `argmin_c Σ_v |ψ(v) − c √d(v)|^p` |
//! | `var_p(ψ)` | the minimum value above |
//! | `R_p^{(2)}(ψ)` | `S_p(ψ) / var_p(ψ)` |
//!
//! `mean_p` is the root of `c ↦ Σ_v √d(v) ξ_p(ψ(v) − √d(v) c)`, a decreasing
//! function with a sign change on `[min ψ/√d, max ψ/√d]`. At `p = 2` it is
//! `⟨ψ, D^{1/2} 1⟩ / vol(V)`, and the minimum of `R_2^{(2)}` is the second
//! eigenvalue of `L`.

use crate::calculus::{check_p, dirichlet_sum};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeFunction};
use crate::laplacians::{apply_p_laplacian, xi};

/// `‖Δ_p ψ − λ ξ_p(ψ)‖_∞`.
pub fn p_eigen_residual(h: &Hypergraph, psi: &[f64], lambda: f64, p: f64) -> Result<f64> {
    let lap = apply_p_laplacian(h, psi, p)?;
    Ok(lap
        .iter()
        .zip(psi)
        .map(|(l, x)| (l - lambda * xi(*x, p)).abs())
        .fold(0.0, f64::max))
}

/// `R_p(ψ) = S_p(ψ) / ‖ψ‖_p^p`.
pub fn rayleigh(h: &Hypergraph, psi: &[f64], p: f64) -> Result<f64> {
    let s = dirichlet_sum(h, psi, p)?;
    let denom: f64 = psi.iter().map(|x| x.abs().powf(p)).sum();
    if denom == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(s / denom)
}

/// `argmin_c ‖ψ − c D^{1/2} 1‖_p^p`.
///
/// Needs `p ≥ 1`. At `p = 1` the minimizer need not be unique and the lower
/// weighted median of `ψ/√d` with weights `√d` is returned.
///
/// ```
/// use hyperlap::{spectral::p_mean, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// assert!((p_mean(&t3, &[1.0, 0.0, 0.0], 2.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
/// ```
pub fn p_mean(h: &Hypergraph, psi: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    h.check_len(psi)?;
    let sd: Vec<f64> = h.degrees().iter().map(|d| d.sqrt()).collect();
    if p == 2.0 {
        let num: f64 = psi.iter().zip(&sd).map(|(x, s)| x * s).sum();
        return Ok(num / h.total_volume());
    }
    let ratio: Vec<f64> = psi.iter().zip(&sd).map(|(x, s)| x / s).collect();
    if p == 1.0 {
        return Ok(weighted_median(&ratio, &sd));
    }
    let (mut lo, mut hi) = ratio
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| {
            (lo.min(r), hi.max(r))
        });
    let slope = |c: f64| -> f64 { psi.iter().zip(&sd).map(|(x, s)| s * xi(x - s * c, p)).sum() };
    // bisect down to adjacent floating-point numbers
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn weighted_median(values: &[f64], weights: &[f64]) -> f64 {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let half = weights.iter().sum::<f64>() / 2.0;
    let mut acc = 0.0;
    for &i in &order {
        acc += weights[i];
        if acc >= half {
            return values[i];
        }
    }
    values[order[order.len() - 1]]
}

/// `min_c ‖ψ − c D^{1/2} 1‖_p^p`.
pub fn p_var(h: &Hypergraph, psi: &[f64], p: f64) -> Result<f64> {
    let c = p_mean(h, psi, p)?;
    Ok(centered(h, psi, c).iter().map(|x| x.abs().powf(p)).sum())
}

fn centered(h: &Hypergraph, psi: &[f64], c: f64) -> Vec<f64> {
    psi.iter()
        .zip(h.degrees())
        .map(|(x, d)| x - c * d.sqrt())
        .collect()
}

fn checked_var(h: &Hypergraph, psi: &[f64], p: f64) -> Result<(f64, f64)> {
    let c = p_mean(h, psi, p)?;
    let var: f64 = centered(h, psi, c).iter().map(|x| x.abs().powf(p)).sum();
    let size: f64 = psi.iter().map(|x| x.abs().powf(p)).sum();
    // relative test on p-th roots keeps the threshold scale free
    if var == 0.0 || var.powf(1.0 / p) <= 1e-12 * size.powf(1.0 / p) {
        return Err(Error::DegenerateDirection);
    }
    Ok((c, var))
}

/// `R_p^{(2)}(ψ) = S_p(ψ) / var_p(ψ)`.
pub fn rayleigh2(h: &Hypergraph, psi: &[f64], p: f64) -> Result<f64> {
    let (_, var) = checked_var(h, psi, p)?;
    Ok(dirichlet_sum(h, psi, p)? / var)
}

/// Gradient of `R_p^{(2)}`:
/// `(p/var) Δ_p ψ − (p S_p/var²) ξ_p(ψ − mean_p(ψ) D^{1/2} 1)`. Needs `p > 1`.
pub fn rayleigh2_gradient(h: &Hypergraph, psi: &[f64], p: f64) -> Result<NodeFunction> {
    if p.partial_cmp(&1.0) != Some(std::cmp::Ordering::Greater) || !p.is_finite() {
        return Err(Error::InvalidP {
            p,
            reason: "the quotient is differentiable only for p > 1",
        });
    }
    let (c, var) = checked_var(h, psi, p)?;
    let s = dirichlet_sum(h, psi, p)?;
    let lap = apply_p_laplacian(h, psi, p)?;
    let centered = centered(h, psi, c);
    Ok(lap
        .iter()
        .zip(&centered)
        .map(|(l, x)| p / var * l - s * p / (var * var) * xi(*x, p))
        .collect())
}

/// Tuning for [`minimize_rayleigh2`].
#[derive(Clone, Debug, PartialEq)]
pub struct DescentOptions {
    /// Sufficient-decrease constant.
    pub armijo: f64,
    /// Step shrink factor on rejection.
    pub shrink: f64,
    /// Stop once an accepted step lowers the quotient by less than this fraction.
    pub rel_tol: f64,
    pub max_iter: usize,
    pub initial_step: f64,
    /// Smallest step tried before the line search gives up.
    pub min_step: f64,
}

impl Default for DescentOptions {
    fn default() -> Self {
        Self {
            armijo: 1e-4,
            shrink: 0.5,
            rel_tol: 1e-9,
            max_iter: 5000,
            initial_step: 1.0,
            min_step: 1e-18,
        }
    }
}

/// Where the descent ended and why.
#[derive(Clone, Debug)]
pub struct DescentOutcome {
    /// Final iterate, centered and with unit Euclidean norm.
    pub psi: NodeFunction,
    pub value: f64,
    pub initial_value: f64,
    pub iterations: usize,
    /// The relative-decrease test was met (or the gradient vanished).
    pub converged: bool,
    /// The first line search already failed, so no step was taken.
    pub no_descent: bool,
}

fn center_normalize(h: &Hypergraph, psi: &[f64], p: f64) -> Result<Vec<f64>> {
    let c = p_mean(h, psi, p)?;
    let mut x = centered(h, psi, c);
    let s = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if s == 0.0 {
        return Err(Error::DegenerateDirection);
    }
    x.iter_mut().for_each(|v| *v /= s);
    Ok(x)
}

/// Gradient descent on `R_p^{(2)}` with Armijo backtracking.
///
/// Every iterate is recentered by its p-mean and rescaled to unit norm; the
/// quotient is invariant under both.
pub fn minimize_rayleigh2(
    h: &Hypergraph,
    init: &[f64],
    p: f64,
    opts: &DescentOptions,
) -> Result<DescentOutcome> {
    let mut psi = center_normalize(h, init, p)?;
    let mut value = rayleigh2(h, &psi, p)?;
    let initial_value = value;
    let mut step = opts.initial_step;
    let mut converged = false;
    let mut no_descent = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        let g = rayleigh2_gradient(h, &psi, p)?;
        let gg: f64 = g.iter().map(|x| x * x).sum();
        if gg == 0.0 {
            converged = true;
            break;
        }
        let mut t = step;
        let accepted = loop {
            let cand: Vec<f64> = psi.iter().zip(g.iter()).map(|(x, d)| x - t * d).collect();
            if let Ok(v) = rayleigh2(h, &cand, p) {
                if v <= value - opts.armijo * t * gg {
                    break Some((cand, v));
                }
            }
            t *= opts.shrink;
            if t < opts.min_step {
                break None;
            }
        };
        let Some((cand, v)) = accepted else {
            no_descent = iterations == 0;
            converged = iterations > 0;
            break;
        };
        iterations += 1;
        let decrease = (value - v) / value.abs().max(f64::MIN_POSITIVE);
        psi = center_normalize(h, &cand, p)?;
        value = v;
        step = (t / opts.shrink).min(1e6);
        if decrease < opts.rel_tol {
            converged = true;
            break;
        }
    }
    Ok(DescentOutcome {
        psi: psi.into(),
        value,
        initial_value,
        iterations,
        converged,
        no_descent,
    })
}
