//! Hypergraph Laplacians as matrix-free linear operators.
//!
//! * [`plap`]: the p-Laplacian `Δ_p ψ = −div(‖∇ψ‖^{p−2} ∇ψ)` and its
//!   coefficient form `L_p = D^{−1/2}(D_p − W_p)D^{−1/2}`.
//! * [`baselines`]: the p = 2 operator `L`, plus the Zhou and Rodriguez
//!   Laplacians and the Hein regularizer.
//! * [`walk`]: the random walk `P = D^{−1}W` and its stationary law.
//! * [`graph`]: reference p-Laplacians on ordinary weighted graphs.
//!
//! Operators apply by accumulating over edges in `O(Σ_e δ_e)`. Dense matrices
//! are built only up to [`DENSE_LIMIT`] nodes.

pub mod baselines;
pub mod graph;
pub mod plap;
pub mod walk;

use nalgebra::DMatrix;

use crate::hypergraph::NodeFunction;

pub use baselines::{
    hein_regularizer, laplacian_p2, rodriguez_laplacian, rodriguez_p_quadratic, zhou_laplacian,
    NormalizedLaplacian, RodriguezLaplacian, ZhouLaplacian,
};
pub use graph::{clique_adjacency, graph_comparison_operators, GraphOperatorValues};
pub use plap::{
    apply_p_laplacian, p_coefficients, p_laplacian_by_divergence, p_quadratic_form,
    LinearizedPLaplacian, PLaplacianCoefficients,
};
pub use walk::{random_walk, TransitionMatrix};

/// Largest dimension for which dense matrices are materialized.
pub const DENSE_LIMIT: usize = 512;

/// A linear map on node functions.
pub trait LinearOperator: Sync {
    /// Number of nodes.
    fn dim(&self) -> usize;

    /// Writes `A x` into `out`. Both slices must have length [`dim`](Self::dim).
    fn apply_into(&self, x: &[f64], out: &mut [f64]);

    /// Returns `A x`. Panics if `x.len() != self.dim()`.
    fn apply(&self, x: &[f64]) -> NodeFunction {
        assert_eq!(x.len(), self.dim(), "operator dimension mismatch");
        let mut out = vec![0.0; self.dim()];
        self.apply_into(x, &mut out);
        out.into()
    }

    /// Explicit matrix, or `None` above [`DENSE_LIMIT`].
    fn to_dense(&self) -> Option<DMatrix<f64>> {
        (self.dim() <= DENSE_LIMIT).then(|| dense_by_columns(self))
    }
}

/// Materializes an operator by applying it to every basis vector.
pub fn dense_by_columns<A: LinearOperator + ?Sized>(op: &A) -> DMatrix<f64> {
    let n = op.dim();
    let mut m = DMatrix::zeros(n, n);
    let mut e = vec![0.0; n];
    let mut col = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        op.apply_into(&e, &mut col);
        m.column_mut(j).copy_from_slice(&col);
        e[j] = 0.0;
    }
    m
}

/// `ξ_p(x) = |x|^{p−1} sgn(x)`, with `ξ_p(0) = 0`.
pub fn xi(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum() * x.abs().powf(p - 1.0)
    }
}
