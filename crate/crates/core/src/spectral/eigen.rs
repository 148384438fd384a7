//! Smallest eigenpairs of symmetric positive semi-definite operators.
//!
//! Up to [`DENSE_LIMIT`] nodes the operator is materialized and handed to a
//! dense symmetric eigensolver. Above that a Lanczos iteration with full
//! reorthogonalization runs on the complement of the already-converged
//! vectors. A known kernel vector (for the Laplacians here, `D^{1/2} 1`) is
//! locked up front when it checks out as an eigenvector.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::NodeFunction;
use crate::laplacians::{dense_by_columns, LinearOperator, DENSE_LIMIT};
use crate::linalg::{axpy, dot, norm};

/// Eigenvalues in ascending order with unit-norm eigenvectors.
#[derive(Clone, Debug)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: Vec<NodeFunction>,
}

/// Tuning for [`smallest_eigenpairs_with`].
#[derive(Clone, Debug)]
pub struct EigenOptions {
    /// Dense solve at or below this dimension.
    pub dense_limit: usize,
    /// Residual `‖Ax − λx‖₂` required to accept a pair.
    pub tol: f64,
    /// Lanczos restarts before giving up.
    pub max_restarts: usize,
    /// Seed for the Lanczos start vector.
    pub seed: u64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            dense_limit: DENSE_LIMIT,
            tol: 1e-8,
            max_restarts: 60,
            seed: 0x5eed,
        }
    }
}

/// The `k` smallest eigenpairs of `op`, with `kernel_hint` a candidate
/// eigenvector for the eigenvalue 0 (pass an empty slice for none).
///
/// ```
/// use hyperlap::{laplacians::laplacian_p2, spectral::smallest_eigenpairs, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// let pairs = smallest_eigenpairs(&laplacian_p2(&t3), 3, &t3.sqrt_degrees()).unwrap();
/// assert!(pairs.values[0].abs() < 1e-12);
/// assert!((pairs.values[1] - 1.5).abs() < 1e-12 && (pairs.values[2] - 1.5).abs() < 1e-12);
/// ```
pub fn smallest_eigenpairs<A: LinearOperator + ?Sized>(
    op: &A,
    k: usize,
    kernel_hint: &[f64],
) -> Result<EigenPairs> {
    smallest_eigenpairs_with(op, k, kernel_hint, &EigenOptions::default())
}

/// [`smallest_eigenpairs`] with explicit options.
pub fn smallest_eigenpairs_with<A: LinearOperator + ?Sized>(
    op: &A,
    k: usize,
    kernel_hint: &[f64],
    opts: &EigenOptions,
) -> Result<EigenPairs> {
    let n = op.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    if n <= opts.dense_limit {
        dense_pairs(op, k)
    } else {
        lanczos_pairs(op, k, kernel_hint, opts)
    }
}

fn dense_pairs<A: LinearOperator + ?Sized>(op: &A, k: usize) -> Result<EigenPairs> {
    let m = op.to_dense().unwrap_or_else(|| dense_by_columns(op));
    let sym = (&m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut values = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    for &i in order.iter().take(k) {
        values.push(eig.eigenvalues[i]);
        let mut v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
        let s = norm(&v);
        v.iter_mut().for_each(|x| *x /= s);
        fix_sign(&mut v);
        vectors.push(v.into());
    }
    Ok(EigenPairs { values, vectors })
}

/// Flips `v` so that its largest-magnitude entry (first on ties) is positive.
pub(crate) fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i].abs() > v[best].abs() * (1.0 + 1e-9) {
            best = i;
        }
    }
    if v.get(best).is_some_and(|x| *x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    // two passes keep the loss of orthogonality at machine precision
    for _ in 0..2 {
        for b in basis {
            let c = dot(v, b);
            axpy(-c, b, v);
        }
    }
}

fn residual<A: LinearOperator + ?Sized>(op: &A, x: &[f64], theta: f64) -> f64 {
    let ax = op.apply(x);
    ax.iter()
        .zip(x)
        .map(|(a, b)| (a - theta * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn lanczos_pairs<A: LinearOperator + ?Sized>(
    op: &A,
    k: usize,
    hint: &[f64],
    opts: &EigenOptions,
) -> Result<EigenPairs> {
    let n = op.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut locked: Vec<Vec<f64>> = Vec::new();
    let mut values = Vec::new();

    if hint.len() == n && norm(hint) > 0.0 {
        let s = norm(hint);
        let u: Vec<f64> = hint.iter().map(|x| x / s).collect();
        let theta = dot(&op.apply(&u), &u);
        if residual(op, &u, theta) < opts.tol {
            values.push(theta);
            locked.push(u);
        }
    }

    let mut start: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    let mut width = 40usize.max(3 * k + 20);
    let mut restarts = 0;
    while locked.len() < k {
        let room = n - locked.len();
        let m = width.min(room);
        let (basis, alpha, beta) = lanczos_run(op, &start, &locked, m);
        let steps = alpha.len();
        if steps == 0 {
            start = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
            restarts += 1;
            if restarts > opts.max_restarts {
                return Err(Error::NoConvergence(
                    "Lanczos start vector collapsed".into(),
                ));
            }
            continue;
        }
        let mut t = DMatrix::zeros(steps, steps);
        for i in 0..steps {
            t[(i, i)] = alpha[i];
            if i + 1 < steps {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let mut order: Vec<usize> = (0..steps).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

        let ritz = |i: usize, locked: &[Vec<f64>]| {
            let mut x = vec![0.0; n];
            for (j, q) in basis.iter().enumerate() {
                axpy(eig.eigenvectors[(j, i)], q, &mut x);
            }
            orthogonalize(&mut x, locked);
            let s = norm(&x);
            x.iter_mut().for_each(|v| *v /= s);
            x
        };
        let mut progressed = false;
        let mut next_start = None;
        for (pos, &i) in order.iter().enumerate() {
            if locked.len() == k {
                break;
            }
            let x = ritz(i, &locked);
            let theta = dot(&op.apply(&x), &x);
            if residual(op, &x, theta) < opts.tol {
                values.push(theta);
                locked.push(x);
                progressed = true;
            } else {
                // restart from the sum of the wanted, unconverged Ritz vectors
                let need = k - locked.len();
                let mut acc = x;
                for &j in order.iter().skip(pos + 1).take(need.saturating_sub(1)) {
                    axpy(1.0, &ritz(j, &locked), &mut acc);
                }
                next_start = Some(acc);
                break;
            }
        }
        if locked.len() == k {
            break;
        }
        restarts += 1;
        if restarts > opts.max_restarts {
            return Err(Error::NoConvergence(format!(
                "{} of {k} eigenpairs after {restarts} Lanczos restarts",
                locked.len()
            )));
        }
        if !progressed {
            width = (width * 2).min(n);
        }
        start = next_start.unwrap_or_else(|| (0..n).map(|_| rng.random::<f64>() - 0.5).collect());
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out_values = Vec::with_capacity(k);
    let mut out_vectors = Vec::with_capacity(k);
    for i in order {
        let mut v = locked[i].clone();
        fix_sign(&mut v);
        out_values.push(values[i]);
        out_vectors.push(v.into());
    }
    Ok(EigenPairs {
        values: out_values,
        vectors: out_vectors,
    })
}

/// Lanczos with full reorthogonalization against `locked` and the basis.
fn lanczos_run<A: LinearOperator + ?Sized>(
    op: &A,
    start: &[f64],
    locked: &[Vec<f64>],
    m: usize,
) -> (Vec<Vec<f64>>, Vec<f64>, Vec<f64>) {
    let n = op.dim();
    let mut q = start.to_vec();
    orthogonalize(&mut q, locked);
    let s = norm(&q);
    if s < 1e-14 {
        return (Vec::new(), Vec::new(), Vec::new());
    }
    q.iter_mut().for_each(|x| *x /= s);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut alpha = Vec::with_capacity(m);
    let mut beta: Vec<f64> = Vec::with_capacity(m);
    let mut w = vec![0.0; n];
    for j in 0..m {
        op.apply_into(&q, &mut w);
        let a = dot(&w, &q);
        axpy(-a, &q, &mut w);
        if j > 0 {
            axpy(-beta[j - 1], &basis[j - 1], &mut w);
        }
        basis.push(q.clone());
        alpha.push(a);
        orthogonalize(&mut w, locked);
        orthogonalize(&mut w, &basis);
        let b = norm(&w);
        if j + 1 == m || b < 1e-12 {
            break;
        }
        beta.push(b);
        q = w.iter().map(|x| x / b).collect();
    }
    (basis, alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;
    use crate::laplacians::laplacian_p2;

    fn ring(n: usize) -> Hypergraph {
        let mut edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        for i in (0..n).step_by(7) {
            edges.push(vec![i, (i + 3) % n, (i + 11) % n]);
        }
        let w = (0..edges.len())
            .map(|i| 1.0 + (i % 5) as f64 * 0.3)
            .collect();
        Hypergraph::new(n, edges, w).unwrap()
    }

    #[test]
    fn path_graph_spectrum() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]], vec![1.0, 1.0]).unwrap();
        let pairs = smallest_eigenpairs(&laplacian_p2(&h), 3, &h.sqrt_degrees()).unwrap();
        // I − D^{−1/2} A D^{−1/2} of the 3-path has spectrum {0, 1, 2}
        for (got, want) in pairs.values.iter().zip([0.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-10);
        }
        let s = h.sqrt_degrees();
        let c = dot(&pairs.vectors[0], &s) / norm(&s);
        assert!((c - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lanczos_matches_dense() {
        let h = ring(90);
        let op = laplacian_p2(&h);
        let dense = smallest_eigenpairs(&op, 5, &h.sqrt_degrees()).unwrap();
        let opts = EigenOptions {
            dense_limit: 10,
            ..EigenOptions::default()
        };
        let lz = smallest_eigenpairs_with(&op, 5, &h.sqrt_degrees(), &opts).unwrap();
        for i in 0..5 {
            assert!(
                (dense.values[i] - lz.values[i]).abs() < 1e-9,
                "{:?} {:?}",
                dense.values,
                lz.values
            );
            assert!(residual(&op, &lz.vectors[i], lz.values[i]) < 1e-8);
        }
    }

    #[test]
    fn invalid_k() {
        let h = ring(10);
        assert!(matches!(
            smallest_eigenpairs(&laplacian_p2(&h), 11, &[]),
            Err(Error::InvalidK { .. })
        ));
    }
}
