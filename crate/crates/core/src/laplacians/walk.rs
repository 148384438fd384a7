//! The random walk `p(u,v) = w(u,v)/d(u)` and its stationary distribution.
//!
//! `P = D^{−1} W = I − D^{−1/2} L D^{1/2}`, so the walk is reversible with
//! respect to `π(v) = d(v)/vol(V)`.

use nalgebra::DMatrix;

use super::{LinearOperator, DENSE_LIMIT};
use crate::hypergraph::{Hypergraph, NodeFunction};

/// Transition operator `x ↦ P x`.
#[derive(Clone, Debug)]
pub struct TransitionMatrix<'a> {
    h: &'a Hypergraph,
}

impl TransitionMatrix<'_> {
    /// `(Pᵀ μ)(v) = Σ_u μ(u) p(u,v)`, the one-step evolution of a distribution.
    pub fn apply_transpose(&self, mu: &[f64]) -> NodeFunction {
        let d = self.h.degrees();
        let scaled: Vec<f64> = mu.iter().zip(d).map(|(m, d)| m / d).collect();
        let mut out = vec![0.0; mu.len()];
        for (_, members, w) in self.h.edges() {
            let c = w / (members.len() as f64 - 1.0);
            let s: f64 = members.iter().map(|&u| scaled[u]).sum();
            for &v in members {
                out[v] += c * (s - scaled[v]);
            }
        }
        out.into()
    }

    /// `p(u,v)`.
    pub fn probability(&self, u: usize, v: usize) -> f64 {
        if u == v {
            return 0.0;
        }
        let mut total = 0.0;
        for &e in self.h.incident_edges(u) {
            let members = self.h.edge(e);
            if members.binary_search(&v).is_ok() {
                total += self.h.weight(e) / (members.len() as f64 - 1.0);
            }
        }
        total / self.h.degrees()[u]
    }
}

impl LinearOperator for TransitionMatrix<'_> {
    fn dim(&self) -> usize {
        self.h.num_nodes()
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (_, members, w) in self.h.edges() {
            let c = w / (members.len() as f64 - 1.0);
            let s: f64 = members.iter().map(|&u| x[u]).sum();
            for &u in members {
                out[u] += c * (s - x[u]);
            }
        }
        for (o, d) in out.iter_mut().zip(self.h.degrees()) {
            *o /= d;
        }
    }

    fn to_dense(&self) -> Option<DMatrix<f64>> {
        let n = self.h.num_nodes();
        if n > DENSE_LIMIT {
            return None;
        }
        let d = self.h.degrees();
        let mut m = DMatrix::zeros(n, n);
        for (_, members, w) in self.h.edges() {
            let c = w / (members.len() as f64 - 1.0);
            for &u in members {
                for &v in members {
                    if u != v {
                        m[(u, v)] += c / d[u];
                    }
                }
            }
        }
        Some(m)
    }
}

/// The transition operator and `π(v) = d(v)/vol(V)`.
///
/// ```
/// use hyperlap::{laplacians::random_walk, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// let (p, pi) = random_walk(&t3);
/// assert_eq!(p.probability(0, 1), 0.5);
/// assert!((pi[2] - 1.0 / 3.0).abs() < 1e-15);
/// ```
pub fn random_walk(h: &Hypergraph) -> (TransitionMatrix<'_>, NodeFunction) {
    let vol = h.total_volume();
    let pi = h.degrees().iter().map(|d| d / vol).collect();
    (TransitionMatrix { h }, pi)
}
