//! The hypergraph p-Laplacian.
//!
//! With `q_v = max(‖∇ψ(v)‖, ε)^{p−2}` and `m_e = mean_{u∈e} q_u`, the
//! operator has the coefficient form
//!
//! ```text
//! w_p(u,v) = Σ_{e∋u,v} w(e)/(δ_e−1) · (−m_e + q_u + q_v)
//! d_p(v)   = d(v) q_v − Σ_{e∋v} w(e)/(δ_e−1) · (q_v − m_e)
//! L_p      = D^{−1/2} (D_p − W_p) D^{−1/2}
//! ```
//!
//! and `Δ_p ψ = L_p(ψ) ψ`. Per edge the row sums collapse to
//! `w/(δ−1) · (m_e S − T + q_v (δ x̂_v − S))` with `S = Σ x̂`, `T = Σ q x̂`,
//! which is what [`LinearizedPLaplacian`] evaluates.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::{LinearOperator, DENSE_LIMIT};
use crate::calculus::{
    check_p, divergence, gradient_norms, normalized, EdgeVertexField, GradientProfile, NORM_FLOOR,
};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeFunction};

fn floored_powers(norms: &[f64], p: f64) -> Vec<f64> {
    norms
        .iter()
        .map(|n| n.max(NORM_FLOOR).powf(p - 2.0))
        .collect()
}

fn edge_means(h: &Hypergraph, q: &[f64]) -> Vec<f64> {
    h.edges()
        .map(|(_, m, _)| m.iter().map(|&u| q[u]).sum::<f64>() / m.len() as f64)
        .collect()
}

/// `L_p(ψ)` with coefficients frozen at a given `ψ`, applied matrix-free.
#[derive(Clone, Debug)]
pub struct LinearizedPLaplacian<'a> {
    h: &'a Hypergraph,
    p: f64,
    q: Vec<f64>,
    means: Vec<f64>,
    sqrt_d: Vec<f64>,
}

impl<'a> LinearizedPLaplacian<'a> {
    /// Freezes the coefficients of `L_p` at `ψ`.
    pub fn new(h: &'a Hypergraph, psi: &[f64], p: f64) -> Result<Self> {
        check_p(p)?;
        let norms = gradient_norms(h, psi)?;
        let q = floored_powers(&norms, p);
        let means = edge_means(h, &q);
        let sqrt_d = h.degrees().iter().map(|d| d.sqrt()).collect();
        Ok(Self {
            h,
            p,
            q,
            means,
            sqrt_d,
        })
    }

    /// The exponent.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Floored `‖∇ψ(v)‖^{p−2}` per node.
    pub fn node_powers(&self) -> &[f64] {
        &self.q
    }

    /// Diagonal entries `l_p(v,v) = d_p(v)/d(v)`.
    pub fn diagonal(&self) -> NodeFunction {
        let mut dp = vec![0.0; self.h.num_nodes()];
        for (e, members, w) in self.h.edges() {
            let delta = members.len() as f64;
            let c = w / (delta - 1.0);
            for &v in members {
                dp[v] += c * (self.means[e] + (delta - 2.0) * self.q[v]);
            }
        }
        dp.iter()
            .zip(self.h.degrees())
            .map(|(a, d)| a / d)
            .collect()
    }
}

impl LinearOperator for LinearizedPLaplacian<'_> {
    fn dim(&self) -> usize {
        self.h.num_nodes()
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        let hat: Vec<f64> = x.iter().zip(&self.sqrt_d).map(|(a, b)| a / b).collect();
        for (e, members, w) in self.h.edges() {
            let delta = members.len() as f64;
            let c = w / (delta - 1.0);
            // constants are in the per-edge kernel; centre to avoid cancellation
            let centre = members.iter().map(|&u| hat[u]).sum::<f64>() / delta;
            let (mut s, mut t) = (0.0, 0.0);
            for &u in members {
                s += hat[u] - centre;
                t += self.q[u] * (hat[u] - centre);
            }
            let base = self.means[e] * s - t;
            for &v in members {
                out[v] += c * (base + self.q[v] * (delta * (hat[v] - centre) - s));
            }
        }
        for (o, s) in out.iter_mut().zip(&self.sqrt_d) {
            *o /= s;
        }
    }
}

/// `Δ_p ψ`, evaluated matrix-free in `O(Σ_e δ_e)`.
///
/// ```
/// use hyperlap::{laplacians::apply_p_laplacian, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// let d1 = apply_p_laplacian(&t3, &[1.0, 0.0, 0.0], 1.0).unwrap();
/// assert!((d1[0] - 4.0 / 6f64.sqrt()).abs() < 1e-12);
/// ```
pub fn apply_p_laplacian(h: &Hypergraph, psi: &[f64], p: f64) -> Result<NodeFunction> {
    Ok(LinearizedPLaplacian::new(h, psi, p)?.apply(psi))
}

/// `Δ_p ψ = −div(‖∇ψ‖^{p−2} ∇ψ)` straight from the definition.
pub fn p_laplacian_by_divergence(h: &Hypergraph, psi: &[f64], p: f64) -> Result<NodeFunction> {
    check_p(p)?;
    let profile = GradientProfile::new(h, psi)?;
    let q = floored_powers(&profile.node_norms, p);
    let mut k = 0;
    let mut values = Vec::with_capacity(h.num_incidences());
    for (_, members, _) in h.edges() {
        for &v in members {
            values.push(q[v] * profile.field.values()[k]);
            k += 1;
        }
    }
    let phi = EdgeVertexField::from_values(h, values)?;
    Ok(divergence(h, &phi)?.iter().map(|x| -x).collect())
}

/// Explicit `(W_p, D_p)` for a fixed `ψ`.
///
/// Building the pair map costs `O(Σ_e δ_e²)`; use [`LinearizedPLaplacian`]
/// for large inputs.
#[derive(Clone, Debug)]
pub struct PLaplacianCoefficients {
    pub p: f64,
    pub psi: NodeFunction,
    /// `w_p(u,v)` keyed by `(min, max)`.
    pub pair_weights: BTreeMap<(usize, usize), f64>,
    /// `d_p(v)`.
    pub node_coeffs: NodeFunction,
}

impl PLaplacianCoefficients {
    /// `w_p(u,v)`; zero on the diagonal and for pairs sharing no edge.
    pub fn pair_weight(&self, u: usize, v: usize) -> f64 {
        let key = if u < v { (u, v) } else { (v, u) };
        if u == v {
            return 0.0;
        }
        self.pair_weights.get(&key).copied().unwrap_or(0.0)
    }

    /// `d_p(v)`.
    pub fn node_coeff(&self, v: usize) -> f64 {
        self.node_coeffs[v]
    }

    /// `l_p(u,v)`: `d_p(v)/d(v)` on the diagonal, `−w_p(u,v)/√(d(u)d(v))` off it.
    pub fn laplacian_entry(&self, h: &Hypergraph, u: usize, v: usize) -> f64 {
        let d = h.degrees();
        if u == v {
            self.node_coeffs[v] / d[v]
        } else {
            -self.pair_weight(u, v) / (d[u] * d[v]).sqrt()
        }
    }

    /// Dense `L_p`.
    pub fn to_dense(&self, h: &Hypergraph) -> Result<DMatrix<f64>> {
        let n = h.num_nodes();
        if n > DENSE_LIMIT {
            return Err(Error::TooLarge {
                what: "nodes",
                size: n,
                limit: DENSE_LIMIT,
            });
        }
        let d = h.degrees();
        let mut m = DMatrix::zeros(n, n);
        for v in 0..n {
            m[(v, v)] = self.node_coeffs[v] / d[v];
        }
        for (&(u, v), w) in &self.pair_weights {
            let x = -w / (d[u] * d[v]).sqrt();
            m[(u, v)] = x;
            m[(v, u)] = x;
        }
        Ok(m)
    }
}

/// The coefficients `w_p`, `d_p` of `L_p(ψ)`.
///
/// ```
/// use hyperlap::{laplacians::p_coefficients, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// let c = p_coefficients(&t3, &[1.0, 0.0, 0.0], 2.0).unwrap();
/// assert!((c.pair_weight(0, 1) - 0.5).abs() < 1e-15);
/// assert!((c.node_coeff(2) - 1.0).abs() < 1e-15);
/// ```
pub fn p_coefficients(h: &Hypergraph, psi: &[f64], p: f64) -> Result<PLaplacianCoefficients> {
    check_p(p)?;
    let norms = gradient_norms(h, psi)?;
    let q = floored_powers(&norms, p);
    let means = edge_means(h, &q);
    let mut pair_weights = BTreeMap::new();
    let mut node_coeffs: Vec<f64> = h.degrees().iter().zip(&q).map(|(d, qv)| d * qv).collect();
    for (e, members, w) in h.edges() {
        let c = w / (members.len() as f64 - 1.0);
        for (i, &u) in members.iter().enumerate() {
            node_coeffs[u] -= c * (q[u] - means[e]);
            for &v in &members[i + 1..] {
                *pair_weights.entry((u, v)).or_insert(0.0) += c * (-means[e] + q[u] + q[v]);
            }
        }
    }
    Ok(PLaplacianCoefficients {
        p,
        psi: psi.into(),
        pair_weights,
        node_coeffs: node_coeffs.into(),
    })
}

/// `x̂ᵀ (D − W) x̂` summed edge by edge for pair weights `c_e (−m_e + q_u + q_v)`.
pub(crate) fn edge_quadratic(
    h: &Hypergraph,
    hat: &[f64],
    q: &[f64],
    means: &[f64],
    scale: impl Fn(f64, f64) -> f64,
) -> f64 {
    let mut total = 0.0;
    for (e, members, w) in h.edges() {
        let delta = members.len() as f64;
        // shift-invariant per edge; centring avoids cancellation
        let centre = members.iter().map(|&u| hat[u]).sum::<f64>() / delta;
        let (mut a, mut s, mut qs, mut b, mut c) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &u in members {
            let x = hat[u] - centre;
            a += x * x;
            s += x;
            qs += q[u];
            b += q[u] * x * x;
            c += q[u] * x;
        }
        total +=
            scale(w, delta) * (-means[e] * (delta * a - s * s) + delta * b - 2.0 * c * s + qs * a);
    }
    total
}

/// `ψᵀ L_p(ψ) ψ` through the pair weights, without forming them.
pub fn p_quadratic_form(h: &Hypergraph, psi: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    let q = floored_powers(&gradient_norms(h, psi)?, p);
    let means = edge_means(h, &q);
    let hat = normalized(h, psi);
    Ok(edge_quadratic(h, &hat, &q, &means, |w, delta| {
        w / (delta - 1.0)
    }))
}

pub(crate) fn rodriguez_quadratic(h: &Hypergraph, psi: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    let q = floored_powers(&gradient_norms(h, psi)?, p);
    let means = edge_means(h, &q);
    let hat = normalized(h, psi);
    Ok(edge_quadratic(h, &hat, &q, &means, |w, _| w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::dirichlet_sum;

    fn t3() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap()
    }

    #[test]
    fn t3_values() {
        let h = t3();
        let psi = [1.0, 0.0, 0.0];
        let s6 = 6f64.sqrt();
        let d1 = apply_p_laplacian(&h, &psi, 1.0).unwrap();
        assert!((d1[0] - 4.0 / s6).abs() < 1e-12);
        let d2 = apply_p_laplacian(&h, &psi, 2.0).unwrap();
        assert!((d2[0] - 1.0).abs() < 1e-12);
        let c1 = p_coefficients(&h, &psi, 1.0).unwrap();
        assert!((c1.pair_weight(0, 1) - s6 / 3.0).abs() < 1e-12);
        assert!((c1.laplacian_entry(&h, 0, 1) + s6 / 3.0).abs() < 1e-12);
        assert!((c1.laplacian_entry(&h, 0, 0) - 2.0 * s6 / 3.0).abs() < 1e-12);
        let c2 = p_coefficients(&h, &psi, 2.0).unwrap();
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            assert!((c2.pair_weight(u, v) - 0.5).abs() < 1e-15);
        }
        for v in 0..3 {
            assert!((c2.node_coeff(v) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn routes_agree() {
        let h = Hypergraph::new(
            5,
            vec![vec![0, 1, 2], vec![1, 3], vec![2, 3, 4], vec![0, 4]],
            vec![1.0, 0.6, 1.7, 1.2],
        )
        .unwrap();
        let psi = [0.4, -1.1, 0.9, 0.2, -0.3];
        for p in [1.0, 1.5, 2.0, 2.5, 3.0] {
            let a = apply_p_laplacian(&h, &psi, p).unwrap();
            let b = p_laplacian_by_divergence(&h, &psi, p).unwrap();
            let m = p_coefficients(&h, &psi, p).unwrap().to_dense(&h).unwrap();
            let c = &m * nalgebra::DVector::from_column_slice(&psi);
            for v in 0..5 {
                assert!((a[v] - b[v]).abs() < 1e-12, "p={p}");
                assert!((a[v] - c[v]).abs() < 1e-12, "p={p}");
            }
            let sp = dirichlet_sum(&h, &psi, p).unwrap();
            assert!((p_quadratic_form(&h, &psi, p).unwrap() - sp).abs() < 1e-12 * sp.max(1.0));
        }
    }

    #[test]
    fn diagonal_matches_explicit() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 2, 3], vec![1, 2]], vec![1.3, 0.4]).unwrap();
        let psi = [1.0, 0.5, -0.7, 0.1];
        for p in [1.5, 2.0, 3.0] {
            let lin = LinearizedPLaplacian::new(&h, &psi, p).unwrap();
            let c = p_coefficients(&h, &psi, p).unwrap();
            let diag = lin.diagonal();
            for v in 0..4 {
                assert!((diag[v] - c.laplacian_entry(&h, v, v)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn invalid_p_rejected() {
        let h = t3();
        assert!(matches!(
            apply_p_laplacian(&h, &[1.0, 0.0, 0.0], 0.9),
            Err(Error::InvalidP { .. })
        ));
        assert!(p_coefficients(&h, &[1.0, 0.0, 0.0], f64::NAN).is_err());
    }
}
