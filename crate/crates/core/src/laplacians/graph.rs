//! Reference p-Laplacians on ordinary weighted graphs.
//!
//! These are comparison oracles, evaluated on a dense adjacency matrix `A`
//! with degrees `d(v) = Σ_u a(u,v)`:
//!
//! * Zhou–Schölkopf: with `f̂ = ψ/√d` and `n(v)² = Σ_u a(u,v)(f̂(u) − f̂(v))²`,
//!   `Δ(v) = ½ Σ_u a(u,v)/√d(v) · (n(u)^{p−2} + n(v)^{p−2}) (f̂(v) − f̂(u))`.
//! * Bühler–Hein unnormalized: `Σ_u a(u,v) ξ_p(ψ(v) − ψ(u))`.
//! * Bühler–Hein normalized: the unnormalized value divided by `d(v)`.
//!
//! All three are signed so that they are positive where `ψ` peaks, matching
//! the hypergraph operator.

use nalgebra::DMatrix;

use super::xi;
use crate::calculus::{check_p, NORM_FLOOR};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Values of the three reference operators at one node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphOperatorValues {
    pub zhou06: f64,
    pub buhler_unnormalized: f64,
    pub buhler_normalized: f64,
}

/// Reduced graph `a(u,v) = Σ_{e∋u,v} w(e)/(δ_e−1)` of a hypergraph.
pub fn clique_adjacency(h: &Hypergraph) -> DMatrix<f64> {
    let n = h.num_nodes();
    let mut a = DMatrix::zeros(n, n);
    for (_, members, w) in h.edges() {
        let c = w / (members.len() as f64 - 1.0);
        for &u in members {
            for &v in members {
                if u != v {
                    a[(u, v)] += c;
                }
            }
        }
    }
    a
}

/// Evaluates the reference graph p-Laplacians of `ψ` at node `v`.
pub fn graph_comparison_operators(
    adjacency: &DMatrix<f64>,
    psi: &[f64],
    p: f64,
    v: usize,
) -> Result<GraphOperatorValues> {
    check_p(p)?;
    let n = adjacency.nrows();
    if adjacency.ncols() != n {
        return Err(Error::AsymmetricInput(format!(
            "matrix is {}x{}",
            n,
            adjacency.ncols()
        )));
    }
    if psi.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: psi.len(),
        });
    }
    if v >= n {
        return Err(Error::NodeIdOutOfRange {
            node: v,
            num_nodes: n,
        });
    }
    for i in 0..n {
        if adjacency[(i, i)] != 0.0 {
            return Err(Error::AsymmetricInput(format!("nonzero diagonal at {i}")));
        }
        for j in 0..n {
            let (a, b) = (adjacency[(i, j)], adjacency[(j, i)]);
            if !(a >= 0.0 && a.is_finite()) {
                return Err(Error::AsymmetricInput(format!("entry ({i},{j}) = {a}")));
            }
            if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
                return Err(Error::AsymmetricInput(format!("({i},{j}) != ({j},{i})")));
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| adjacency.row(i).sum()).collect();
    if let Some(i) = d.iter().position(|&x| x <= 0.0) {
        return Err(Error::AsymmetricInput(format!("node {i} has zero degree")));
    }
    let hat: Vec<f64> = psi.iter().zip(&d).map(|(x, d)| x / d.sqrt()).collect();
    let q: Vec<f64> = (0..n)
        .map(|i| {
            let sq: f64 = (0..n)
                .map(|j| adjacency[(i, j)] * (hat[j] - hat[i]).powi(2))
                .sum();
            sq.sqrt().max(NORM_FLOOR).powf(p - 2.0)
        })
        .collect();

    let mut zhou06 = 0.0;
    let mut buhler = 0.0;
    for u in 0..n {
        let a = adjacency[(u, v)];
        if a == 0.0 {
            continue;
        }
        zhou06 += 0.5 * a / d[v].sqrt() * (q[u] + q[v]) * (hat[v] - hat[u]);
        buhler += a * xi(psi[v] - psi[u], p);
    }
    Ok(GraphOperatorValues {
        zhou06,
        buhler_unnormalized: buhler,
        buhler_normalized: buhler / d[v],
    })
}
