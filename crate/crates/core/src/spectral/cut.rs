//! Two-class and multiclass normalized-cut pipelines.

use serde::Serialize;

use super::eigen::smallest_eigenpairs;
use super::kmeans::kmeans;
use super::ncut::{multiclass_ncut, sweep_cut};
use super::rayleigh::{minimize_rayleigh2, rayleigh2, DescentOptions};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::laplacians::laplacian_p2;

/// Below this exponent the descent runs at the exponent itself; lower values
/// are reached by continuation from it.
pub const CONTINUATION_P: f64 = 1.1;

/// A partition with the diagnostics of the run that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionResult {
    /// Cluster id per node, numbered by first appearance.
    pub assignment: Vec<usize>,
    pub k: usize,
    pub ncut_value: f64,
    pub p: f64,
    /// Sweep threshold on `D^{-1/2} ψ` (two-class cuts).
    pub threshold: Option<f64>,
    /// Eigenvalues of `L` used to build the embedding, ascending.
    pub eigenvalues: Vec<f64>,
    /// `R_p^{(2)}` at the warm start and at the end of descent.
    pub rayleigh_initial: Option<f64>,
    pub rayleigh_final: Option<f64>,
    pub seed: Option<u64>,
    pub descent_iterations: usize,
    /// The descent met its stopping rule (always true without descent).
    pub converged: bool,
    /// The line search failed at the warm start; the p = 2 cut was returned.
    pub no_descent: bool,
    /// k-means inertia of the winning restart.
    pub inertia: Option<f64>,
}

impl PartitionResult {
    fn new(assignment: Vec<usize>, k: usize, ncut_value: f64, p: f64) -> Self {
        Self {
            assignment,
            k,
            ncut_value,
            p,
            threshold: None,
            eigenvalues: Vec::new(),
            rayleigh_initial: None,
            rayleigh_final: None,
            seed: None,
            descent_iterations: 0,
            converged: true,
            no_descent: false,
            inertia: None,
        }
    }
}

/// Relabels clusters in order of first appearance.
pub fn canonicalize(assignment: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    assignment
        .iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

fn sweep_result(h: &Hypergraph, psi: &[f64], p: f64) -> Result<PartitionResult> {
    let scores: Vec<f64> = psi
        .iter()
        .zip(h.degrees())
        .map(|(x, d)| x / d.sqrt())
        .collect();
    let cut = sweep_cut(h, &scores)?;
    let raw: Vec<usize> = cut.in_a.iter().map(|&a| usize::from(!a)).collect();
    let mut out = PartitionResult::new(canonicalize(&raw), 2, cut.ncut, p);
    out.threshold = Some(cut.threshold);
    Ok(out)
}

fn second_eigenvector(h: &Hypergraph) -> Result<(Vec<f64>, Vec<f64>)> {
    if h.num_nodes() < 2 {
        return Err(Error::DegeneratePartition);
    }
    let pairs = smallest_eigenpairs(&laplacian_p2(h), 2, &h.sqrt_degrees())?;
    Ok((pairs.vectors[1].to_vec(), pairs.values))
}

/// Best threshold cut of `D^{-1/2} v₂`, with `v₂` the second eigenvector of `L`.
///
/// ```
/// use hyperlap::{spectral::two_class_cut_p2, Hypergraph};
/// let h = Hypergraph::new(
///     6,
///     vec![vec![0, 1, 2], vec![3, 4, 5], vec![2, 3]],
///     vec![1.0, 1.0, 0.1],
/// )
/// .unwrap();
/// let cut = two_class_cut_p2(&h).unwrap();
/// assert_eq!(cut.assignment, vec![0, 0, 0, 1, 1, 1]);
/// ```
pub fn two_class_cut_p2(h: &Hypergraph) -> Result<PartitionResult> {
    let (v2, values) = second_eigenvector(h)?;
    let mut out = sweep_result(h, &v2, 2.0)?;
    out.eigenvalues = values;
    Ok(out)
}

/// Two-class cut from descent on `R_p^{(2)}`, warm-started at the p = 2
/// second eigenvector.
///
/// `p = 2` returns [`two_class_cut_p2`]. For `1 ≤ p < 1.1` the descent runs at
/// 1.1 and the result is labelled with the requested `p`.
pub fn two_class_cut_p(h: &Hypergraph, p: f64, opts: &DescentOptions) -> Result<PartitionResult> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidP {
            p,
            reason: "cuts need a finite p ≥ 1",
        });
    }
    let (v2, values) = second_eigenvector(h)?;
    let mut base = sweep_result(h, &v2, 2.0)?;
    base.eigenvalues = values;
    if p == 2.0 {
        return Ok(base);
    }
    descend_and_cut(h, &v2, p, opts, base)
}

/// [`two_class_cut_p`] from a caller-supplied warm start.
pub fn two_class_cut_p_from(
    h: &Hypergraph,
    init: &[f64],
    p: f64,
    opts: &DescentOptions,
) -> Result<PartitionResult> {
    h.check_len(init)?;
    let base = two_class_cut_p2(h)?;
    if p == 2.0 {
        return Ok(base);
    }
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidP {
            p,
            reason: "cuts need a finite p ≥ 1",
        });
    }
    descend_and_cut(h, init, p, opts, base)
}

fn descend_and_cut(
    h: &Hypergraph,
    init: &[f64],
    p: f64,
    opts: &DescentOptions,
    base: PartitionResult,
) -> Result<PartitionResult> {
    let p_run = p.max(CONTINUATION_P);
    let outcome = minimize_rayleigh2(h, init, p_run, opts)?;
    if outcome.no_descent {
        let mut out = base;
        out.p = p;
        out.no_descent = true;
        out.rayleigh_initial = Some(outcome.initial_value);
        out.rayleigh_final = Some(outcome.initial_value);
        return Ok(out);
    }
    let mut out = sweep_result(h, &outcome.psi, p)?;
    out.eigenvalues = base.eigenvalues;
    out.rayleigh_initial = Some(outcome.initial_value);
    out.rayleigh_final = Some(rayleigh2(h, &outcome.psi, p_run)?);
    out.descent_iterations = outcome.iterations;
    out.converged = outcome.converged;
    Ok(out)
}

/// k-way cut: k-means on the rows of the `n × k` matrix of the `k` smallest
/// eigenvectors of `L`.
pub fn multiclass_cut_p2(
    h: &Hypergraph,
    k: usize,
    seed: u64,
    restarts: usize,
) -> Result<PartitionResult> {
    let n = h.num_nodes();
    if k < 2 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    if k == n {
        let assignment: Vec<usize> = (0..n).collect();
        let value = multiclass_ncut(h, &assignment)?;
        let mut out = PartitionResult::new(assignment, k, value, 2.0);
        out.seed = Some(seed);
        return Ok(out);
    }
    let pairs = smallest_eigenpairs(&laplacian_p2(h), k, &h.sqrt_degrees())?;
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|v| pairs.vectors.iter().map(|x| x[v]).collect())
        .collect();
    let km = kmeans(&rows, k, seed, restarts)?;
    let assignment = canonicalize(&km.assignment);
    let value = multiclass_ncut(h, &assignment)?;
    let mut out = PartitionResult::new(assignment, k, value, 2.0);
    out.eigenvalues = pairs.values;
    out.seed = Some(seed);
    out.inertia = Some(km.inertia);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::ncut::{brute_force_min_ncut, ncut};

    fn g2() -> Hypergraph {
        Hypergraph::new(4, vec![vec![0, 1, 2], vec![2, 3]], vec![1.0, 1.0]).unwrap()
    }

    fn planted(k: usize, size: usize) -> Hypergraph {
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for c in 0..k {
            let base = c * size;
            for i in 0..size {
                for j in i + 1..size {
                    edges.push(vec![base + i, base + j]);
                    weights.push(1.0);
                }
            }
            edges.push(vec![base + size - 1, (base + size) % (k * size)]);
            weights.push(0.05);
        }
        Hypergraph::new(k * size, edges, weights).unwrap()
    }

    #[test]
    fn g2_sweep_is_optimal() {
        let cut = two_class_cut_p2(&g2()).unwrap();
        assert!((cut.ncut_value - brute_force_min_ncut(&g2(), 2).unwrap()).abs() < 1e-12);
        let a: Vec<usize> = (0..4).filter(|&v| cut.assignment[v] == 0).collect();
        assert!((ncut(&g2(), &a).unwrap() - cut.ncut_value).abs() < 1e-12);
    }

    #[test]
    fn p2_descent_path_is_the_eigen_cut() {
        let h = planted(2, 4);
        let a = two_class_cut_p(&h, 2.0, &DescentOptions::default()).unwrap();
        assert_eq!(a, two_class_cut_p2(&h).unwrap());
    }

    #[test]
    fn planted_two_class_at_p25() {
        let h = planted(2, 4);
        let cut = two_class_cut_p(&h, 2.5, &DescentOptions::default()).unwrap();
        assert_eq!(cut.assignment, vec![0, 0, 0, 0, 1, 1, 1, 1]);
        assert!(cut.rayleigh_final.unwrap() <= cut.rayleigh_initial.unwrap());
        let low = two_class_cut_p(&h, 1.0, &DescentOptions::default()).unwrap();
        assert_eq!(low.assignment, cut.assignment);
        assert!(two_class_cut_p(&h, 0.5, &DescentOptions::default()).is_err());
    }

    #[test]
    fn planted_multiclass() {
        let h = planted(3, 4);
        let a = multiclass_cut_p2(&h, 3, 42, 5).unwrap();
        let expect: Vec<usize> = (0..12).map(|v| v / 4).collect();
        assert_eq!(a.assignment, expect);
        assert_eq!(a, multiclass_cut_p2(&h, 3, 42, 5).unwrap());
        let s = multiclass_cut_p2(&h, 12, 0, 1).unwrap();
        assert_eq!(s.assignment, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn canonical_ids() {
        assert_eq!(canonicalize(&[5, 5, 2, 7, 2]), vec![0, 0, 1, 2, 1]);
    }
}
