//! Gradient, divergence, inner products and p-Dirichlet sums.
//!
//! Edge functions are stored per `(edge, anchor)` pair. The gradient of a
//! node function only depends on the edge and its anchor node, so the sums
//! over all orderings of an edge reduce to sums over members with weight
//! `1/δ_e`.
//!
//! | quantity | formula |
//! |---|---|
//! | gradient | `(∇ψ)(e,v) = √(w/(δ−1)) (Σ_{u∈e} ψ̂(u) − δ ψ̂(v))`, `ψ̂ = ψ/√d` |
//! | node norm | `‖∇ψ(v)‖² = Σ_{e∋v} (∇ψ)(e,v)² / δ_e` |
//! | edge product | `⟨f,g⟩_E = Σ_e Σ_{v∈e} f(e,v) g(e,v) / δ_e` |
//! | divergence | `div φ(v) = Σ_{e∋v} √(w/(δ−1)) / √d(v) · (φ(e,v) − mean_{u∈e} φ(e,u))` |
//!
//! The divergence is the negative adjoint of the gradient:
//! `⟨∇ψ, φ⟩_E + ⟨ψ, div φ⟩_V = 0`.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeFunction};

/// Floor applied to gradient norms before raising them to negative powers.
pub const NORM_FLOOR: f64 = 1e-12;

/// One real value per `(edge, member)` pair, laid out edge by edge.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeVertexField {
    values: Vec<f64>,
}

impl EdgeVertexField {
    /// The zero field on `h`.
    pub fn zeros(h: &Hypergraph) -> Self {
        Self {
            values: vec![0.0; h.num_incidences()],
        }
    }

    /// Builds a field from `f(edge, anchor)`.
    pub fn from_fn(h: &Hypergraph, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(h.num_incidences());
        for (e, members, _) in h.edges() {
            values.extend(members.iter().map(|&v| f(e, v)));
        }
        Self { values }
    }

    /// Wraps a flat vector in the layout of `h`.
    pub fn from_values(h: &Hypergraph, values: Vec<f64>) -> Result<Self> {
        if values.len() != h.num_incidences() {
            return Err(Error::FieldMismatch {
                expected: h.num_incidences(),
                actual: values.len(),
            });
        }
        Ok(Self { values })
    }

    /// Flat values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Values of edge `e`, aligned with `h.edge(e)`.
    pub fn edge_values<'a>(&'a self, h: &Hypergraph, e: usize) -> &'a [f64] {
        let start = h.edge_offset(e);
        &self.values[start..start + h.edge(e).len()]
    }

    /// Value at `(e, anchor)`, or `None` if `anchor ∉ e`.
    pub fn get(&self, h: &Hypergraph, e: usize, anchor: usize) -> Option<f64> {
        let pos = h.edge(e).binary_search(&anchor).ok()?;
        Some(self.values[h.edge_offset(e) + pos])
    }

    fn check(&self, h: &Hypergraph) -> Result<()> {
        if self.values.len() != h.num_incidences() {
            return Err(Error::FieldMismatch {
                expected: h.num_incidences(),
                actual: self.values.len(),
            });
        }
        Ok(())
    }
}

/// The gradient of a function together with its node norms.
#[derive(Clone, Debug)]
pub struct GradientProfile {
    pub field: EdgeVertexField,
    pub node_norms: NodeFunction,
}

impl GradientProfile {
    /// Computes `∇ψ` and `‖∇ψ(v)‖` for every node.
    pub fn new(h: &Hypergraph, psi: &[f64]) -> Result<Self> {
        let field = gradient(h, psi)?;
        let node_norms = field_node_norms(h, &field);
        Ok(Self { field, node_norms })
    }

    /// `‖∇ψ_e‖` for every edge at exponent `p`.
    pub fn edge_p_means(&self, h: &Hypergraph, p: f64) -> Vec<f64> {
        (0..h.num_edges())
            .map(|e| edge_p_mean(h, &self.node_norms, e, p))
            .collect()
    }
}

/// The degree-normalized function `ψ̂ = ψ/√d`.
pub(crate) fn normalized(h: &Hypergraph, psi: &[f64]) -> Vec<f64> {
    psi.iter()
        .zip(h.degrees())
        .map(|(x, d)| x / d.sqrt())
        .collect()
}

/// `√(w(e)/(δ_e − 1))` for every edge.
pub(crate) fn edge_scales(h: &Hypergraph) -> Vec<f64> {
    h.edges()
        .map(|(_, m, w)| (w / (m.len() as f64 - 1.0)).sqrt())
        .collect()
}

/// The hypergraph gradient `∇ψ`.
///
/// ```
/// use hyperlap::{calculus::gradient, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// let g = gradient(&t3, &[1.0, 0.0, 0.0]).unwrap();
/// assert!((g.get(&t3, 0, 0).unwrap() + 2f64.sqrt()).abs() < 1e-15);
/// ```
pub fn gradient(h: &Hypergraph, psi: &[f64]) -> Result<EdgeVertexField> {
    h.check_len(psi)?;
    let hat = normalized(h, psi);
    let scales = edge_scales(h);
    let mut values = Vec::with_capacity(h.num_incidences());
    for (e, members, _) in h.edges() {
        let delta = members.len() as f64;
        let s: f64 = members.iter().map(|&u| hat[u]).sum();
        values.extend(members.iter().map(|&v| scales[e] * (s - delta * hat[v])));
    }
    Ok(EdgeVertexField { values })
}

fn field_node_norms(h: &Hypergraph, field: &EdgeVertexField) -> NodeFunction {
    let mut sq = vec![0.0; h.num_nodes()];
    for (e, members, _) in h.edges() {
        let delta = members.len() as f64;
        for (&v, g) in members.iter().zip(field.edge_values(h, e)) {
            sq[v] += g * g / delta;
        }
    }
    sq.into_iter().map(f64::sqrt).collect()
}

/// `‖∇ψ(v)‖` at every node.
pub fn gradient_norms(h: &Hypergraph, psi: &[f64]) -> Result<NodeFunction> {
    Ok(field_node_norms(h, &gradient(h, psi)?))
}

/// `‖∇ψ(v)‖` at a single node.
pub fn gradient_norm(h: &Hypergraph, psi: &[f64], v: usize) -> Result<f64> {
    h.node_degree(v)?;
    Ok(gradient_norms(h, psi)?[v])
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidP {
            p,
            reason: "expected a finite p >= 1",
        });
    }
    Ok(())
}

/// The p-Dirichlet sum `S_p(ψ) = Σ_v ‖∇ψ(v)‖^p`.
///
/// ```
/// use hyperlap::{calculus::dirichlet_sum, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// let s2 = dirichlet_sum(&t3, &[1.0, 0.0, 0.0], 2.0).unwrap();
/// assert!((s2 - 1.0).abs() < 1e-15);
/// ```
pub fn dirichlet_sum(h: &Hypergraph, psi: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(gradient_norms(h, psi)?.iter().map(|n| n.powf(p)).sum())
}

/// `‖∇ψ_e‖ = (mean_{v∈e} ‖∇ψ(v)‖^p)^{1/p}`.
///
/// Panics if `e` is out of range or `node_norms` is shorter than the node count.
pub fn edge_p_mean(h: &Hypergraph, node_norms: &[f64], e: usize, p: f64) -> f64 {
    let members = h.edge(e);
    let mean = members.iter().map(|&v| node_norms[v].powf(p)).sum::<f64>() / members.len() as f64;
    mean.powf(1.0 / p)
}

/// `⟨f, g⟩_V = Σ_v f(v) g(v)`.
pub fn inner_product_nodes(f: &[f64], g: &[f64]) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            actual: g.len(),
        });
    }
    Ok(f.iter().zip(g).map(|(a, b)| a * b).sum())
}

/// `⟨f, g⟩_E = Σ_e Σ_{v∈e} f(e,v) g(e,v) / δ_e`.
pub fn inner_product_edges(
    h: &Hypergraph,
    f: &EdgeVertexField,
    g: &EdgeVertexField,
) -> Result<f64> {
    f.check(h)?;
    g.check(h)?;
    let mut total = 0.0;
    for (e, members, _) in h.edges() {
        let dot: f64 = f
            .edge_values(h, e)
            .iter()
            .zip(g.edge_values(h, e))
            .map(|(a, b)| a * b)
            .sum();
        total += dot / members.len() as f64;
    }
    Ok(total)
}

/// The divergence of an edge field.
pub fn divergence(h: &Hypergraph, phi: &EdgeVertexField) -> Result<NodeFunction> {
    phi.check(h)?;
    let scales = edge_scales(h);
    let mut out = vec![0.0; h.num_nodes()];
    for (e, members, _) in h.edges() {
        let vals = phi.edge_values(h, e);
        let mean = vals.iter().sum::<f64>() / members.len() as f64;
        for (&v, x) in members.iter().zip(vals) {
            out[v] += scales[e] * (x - mean);
        }
    }
    for (o, d) in out.iter_mut().zip(h.degrees()) {
        *o /= d.sqrt();
    }
    Ok(out.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t3() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap()
    }

    fn g2() -> Hypergraph {
        Hypergraph::new(4, vec![vec![0, 1, 2], vec![2, 3]], vec![1.0, 1.0]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn t3_gradient_and_norms() {
        let h = t3();
        let psi = [1.0, 0.0, 0.0];
        let g = gradient(&h, &psi).unwrap();
        assert!(close(g.get(&h, 0, 0).unwrap(), -2f64.sqrt(), 1e-15));
        assert_eq!(g.get(&h, 0, 5), None);
        let n = gradient_norms(&h, &psi).unwrap();
        let s6 = 6f64.sqrt();
        assert!(close(n[0], 2.0 / s6, 1e-15));
        assert!(close(n[1], 1.0 / s6, 1e-15));
        assert!(close(gradient_norm(&h, &psi, 2).unwrap(), 1.0 / s6, 1e-15));
        assert!(close(
            dirichlet_sum(&h, &psi, 1.0).unwrap(),
            4.0 / s6,
            1e-15
        ));
        assert!(close(dirichlet_sum(&h, &psi, 2.0).unwrap(), 1.0, 1e-15));
        assert!(matches!(
            dirichlet_sum(&h, &psi, 0.5),
            Err(Error::InvalidP { .. })
        ));
    }

    #[test]
    fn g2_gradient_by_hand() {
        let h = g2();
        let g = gradient(&h, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        // edge {0,1,2}, anchor 2: √(1/2)·(1/1 + 0 + 0 − 3·0)
        assert!(close(g.get(&h, 0, 2).unwrap(), 0.5f64.sqrt(), 1e-15));
        // anchor 0: √(1/2)·(1 − 3)
        assert!(close(g.get(&h, 0, 0).unwrap(), -2.0 * 0.5f64.sqrt(), 1e-15));
        assert_eq!(g.get(&h, 1, 2).unwrap(), 0.0);
    }

    #[test]
    fn constant_direction_has_zero_gradient() {
        let h = g2();
        let psi: Vec<f64> = h.sqrt_degrees().iter().map(|x| 2.5 * x).collect();
        let g = gradient(&h, &psi).unwrap();
        assert!(g.values().iter().all(|x| x.abs() < 1e-14));
        for p in [1.0, 1.5, 2.0, 3.0] {
            assert!(dirichlet_sum(&h, &psi, p).unwrap() < 1e-20);
        }
    }

    #[test]
    fn edge_p_mean_values() {
        let h = t3();
        let n = gradient_norms(&h, &[1.0, 0.0, 0.0]).unwrap();
        assert!(close(
            edge_p_mean(&h, &n, 0, 1.0),
            4.0 / (3.0 * 6f64.sqrt()),
            1e-15
        ));
        let uniform = [0.7, 0.7, 0.7];
        for p in [1.0, 1.5, 2.0, 3.0] {
            assert!(close(edge_p_mean(&h, &uniform, 0, p), 0.7, 1e-15));
        }
        let g = g2();
        let n = gradient_norms(&g, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let expected = ((n[2] * n[2] + n[3] * n[3]) / 2.0).sqrt();
        assert!(close(edge_p_mean(&g, &n, 1, 2.0), expected, 1e-15));
        let profile = GradientProfile::new(&g, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(close(profile.edge_p_means(&g, 2.0)[1], expected, 1e-15));
    }

    #[test]
    fn node_inner_products() {
        assert_eq!(inner_product_nodes(&[1.0; 3], &[1.0; 3]).unwrap(), 3.0);
        assert_eq!(
            inner_product_nodes(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap(),
            0.0
        );
        assert_eq!(inner_product_nodes(&[1.0, 2.0], &[3.0, -1.0]).unwrap(), 1.0);
        assert!(matches!(
            inner_product_nodes(&[1.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn edge_inner_products() {
        let h = t3();
        let g = gradient(&h, &[1.0, 0.0, 0.0]).unwrap();
        assert!(close(inner_product_edges(&h, &g, &g).unwrap(), 1.0, 1e-15));
        let zero = EdgeVertexField::zeros(&h);
        assert_eq!(inner_product_edges(&h, &zero, &g).unwrap(), 0.0);
        let single = EdgeVertexField::from_fn(&h, |_, v| if v == 1 { 3.0 } else { 0.0 });
        assert!(close(
            inner_product_edges(&h, &single, &single).unwrap(),
            3.0,
            1e-15
        ));
        let g2f = EdgeVertexField::zeros(&g2());
        assert!(matches!(
            inner_product_edges(&h, &g2f, &g),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn divergence_cases() {
        let h = t3();
        let g = gradient(&h, &[1.0, 0.0, 0.0]).unwrap();
        let div = divergence(&h, &g).unwrap();
        assert!(close(-div[0], 1.0, 1e-15));
        let g2h = g2();
        let undirected = EdgeVertexField::from_fn(&g2h, |e, _| 1.0 + e as f64);
        assert!(divergence(&g2h, &undirected).unwrap().norm_inf() < 1e-15);
        assert_eq!(
            divergence(&h, &EdgeVertexField::zeros(&h))
                .unwrap()
                .into_vec(),
            vec![0.0; 3]
        );
    }

    #[test]
    fn stokes_on_g2() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![2, 3]], vec![0.7, 1.9]).unwrap();
        let psi = [0.3, -1.2, 0.8, 2.0];
        let phi = EdgeVertexField::from_values(&h, vec![0.5, -0.25, 1.5, 2.0, -3.0]).unwrap();
        let lhs = inner_product_edges(&h, &gradient(&h, &psi).unwrap(), &phi).unwrap();
        let rhs = inner_product_nodes(&psi, &divergence(&h, &phi).unwrap()).unwrap();
        assert!((lhs + rhs).abs() < 1e-14);
    }
}
