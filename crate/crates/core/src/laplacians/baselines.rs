//! The p = 2 Laplacian and the Zhou and Rodriguez baselines.
//!
//! | operator | pair weight `u ≠ v` | normalizing degree | self pairs |
//! |---|---|---|---|
//! | `L` | `Σ_e w/(δ−1)` | `d(v)` | no |
//! | `L_Z` | `Σ_e w/δ` | `d(v)` | yes |
//! | `L_R` | `Σ_e w` | `d_R(v) = Σ_e w (δ−1)` | no |
//!
//! Each is `I − N^{−1/2} W N^{−1/2}` for its weight matrix `W` and
//! normalizing degree `N`.

use nalgebra::DMatrix;

use super::plap::rodriguez_quadratic;
use super::{LinearOperator, DENSE_LIMIT};
use crate::calculus::check_p;
use crate::error::Result;
use crate::hypergraph::{Hypergraph, NodeFunction};

#[derive(Clone, Copy, Debug)]
enum Kind {
    Proposed,
    Zhou,
    Rodriguez,
}

#[derive(Clone, Debug)]
struct CliqueOperator<'a> {
    h: &'a Hypergraph,
    kind: Kind,
    inv_sqrt: Vec<f64>,
}

impl<'a> CliqueOperator<'a> {
    fn new(h: &'a Hypergraph, kind: Kind) -> Self {
        let norm: Vec<f64> = match kind {
            Kind::Proposed | Kind::Zhou => h.degrees().to_vec(),
            Kind::Rodriguez => rodriguez_degrees_of(h).into_vec(),
        };
        Self {
            h,
            kind,
            inv_sqrt: norm.iter().map(|d| 1.0 / d.sqrt()).collect(),
        }
    }

    /// Per-edge pair weight and whether the self pair is included.
    fn edge_weight(&self, w: f64, delta: f64) -> (f64, bool) {
        match self.kind {
            Kind::Proposed => (w / (delta - 1.0), false),
            Kind::Zhou => (w / delta, true),
            Kind::Rodriguez => (w, false),
        }
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        let hat: Vec<f64> = x.iter().zip(&self.inv_sqrt).map(|(a, b)| a * b).collect();
        let mut acc = vec![0.0; x.len()];
        for (_, members, w) in self.h.edges() {
            let (c, self_pair) = self.edge_weight(w, members.len() as f64);
            let s: f64 = members.iter().map(|&u| hat[u]).sum();
            for &u in members {
                acc[u] += c * if self_pair { s } else { s - hat[u] };
            }
        }
        for i in 0..x.len() {
            out[i] = x[i] - self.inv_sqrt[i] * acc[i];
        }
    }

    fn dense(&self) -> Option<DMatrix<f64>> {
        let n = self.h.num_nodes();
        if n > DENSE_LIMIT {
            return None;
        }
        let mut m = DMatrix::identity(n, n);
        for (_, members, w) in self.h.edges() {
            let (c, self_pair) = self.edge_weight(w, members.len() as f64);
            for &u in members {
                for &v in members {
                    if u != v || self_pair {
                        m[(u, v)] -= c * self.inv_sqrt[u] * self.inv_sqrt[v];
                    }
                }
            }
        }
        Some(m)
    }
}

macro_rules! clique_operator {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug)]
        pub struct $name<'a>(CliqueOperator<'a>);

        impl LinearOperator for $name<'_> {
            fn dim(&self) -> usize {
                self.0.h.num_nodes()
            }
            fn apply_into(&self, x: &[f64], out: &mut [f64]) {
                self.0.apply_into(x, out)
            }
            fn to_dense(&self) -> Option<DMatrix<f64>> {
                self.0.dense()
            }
        }
    };
}

clique_operator!(
    /// `L = I − D^{−1/2} W D^{−1/2}` with `w(u,v) = Σ_{e∋u,v} w(e)/(δ_e−1)`.
    NormalizedLaplacian
);
clique_operator!(
    /// Zhou's `L_Z = I − D_v^{−1/2} H W_e D_e^{−1} Hᵀ D_v^{−1/2}`.
    ZhouLaplacian
);
clique_operator!(
    /// Rodriguez's `L_R = I − D_R^{−1/2} W_R D_R^{−1/2}` with `w_R(u,v) = Σ_{e∋u,v} w(e)`.
    RodriguezLaplacian
);

impl RodriguezLaplacian<'_> {
    /// `d_R(v) = Σ_u w_R(u,v)`.
    pub fn degrees(&self) -> NodeFunction {
        rodriguez_degrees_of(self.0.h)
    }
}

fn rodriguez_degrees_of(h: &Hypergraph) -> NodeFunction {
    let mut d = vec![0.0; h.num_nodes()];
    for (_, members, w) in h.edges() {
        for &v in members {
            d[v] += w * (members.len() as f64 - 1.0);
        }
    }
    d.into()
}

/// The p = 2 Laplacian `L`.
///
/// ```
/// use hyperlap::{laplacians::{laplacian_p2, LinearOperator}, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// let l = laplacian_p2(&t3).to_dense().unwrap();
/// assert!((l[(0, 0)] - 1.0).abs() < 1e-15 && (l[(0, 1)] + 0.5).abs() < 1e-15);
/// ```
pub fn laplacian_p2(h: &Hypergraph) -> NormalizedLaplacian<'_> {
    NormalizedLaplacian(CliqueOperator::new(h, Kind::Proposed))
}

/// Zhou's normalized hypergraph Laplacian.
pub fn zhou_laplacian(h: &Hypergraph) -> ZhouLaplacian<'_> {
    ZhouLaplacian(CliqueOperator::new(h, Kind::Zhou))
}

/// Rodriguez's clique-expansion Laplacian.
pub fn rodriguez_laplacian(h: &Hypergraph) -> RodriguezLaplacian<'_> {
    RodriguezLaplacian(CliqueOperator::new(h, Kind::Rodriguez))
}

/// `ψᵀ D^{−1/2} (D_{R_p} − W_{R_p}) D^{−1/2} ψ`, the Rodriguez analogue of `S_p`.
pub fn rodriguez_p_quadratic(h: &Hypergraph, psi: &[f64], p: f64) -> Result<f64> {
    rodriguez_quadratic(h, psi, p)
}

/// `Σ_e w(e) (max_{v∈e} ψ(v) − min_{v∈e} ψ(v))^p`.
pub fn hein_regularizer(h: &Hypergraph, psi: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    h.check_len(psi)?;
    Ok(h.edges()
        .map(|(_, members, w)| {
            let (lo, hi) = members
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                    (lo.min(psi[v]), hi.max(psi[v]))
                });
            w * (hi - lo).powf(p)
        })
        .sum())
}
