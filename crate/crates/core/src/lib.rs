//! Hypergraph calculus, p-Laplacians, semi-supervised learning and
//! normalized cuts.
//!
//! A [`Hypergraph`] carries weighted edges of any size at least two. On it
//! live node functions ([`NodeFunction`]) and edge-anchored fields
//! ([`calculus::EdgeVertexField`]); the gradient and divergence between them
//! are adjoint, and the p-Laplacian `Δ_p ψ = −div(‖∇ψ‖^{p−2} ∇ψ)` follows.
//!
//! | module | contents |
//! |---|---|
//! | [`hypergraph`] | validated CSR storage, degrees, volumes, components |
//! | [`calculus`] | gradient, divergence, inner products, `S_p` |
//! | [`laplacians`] | `L`, `Δ_p`, its linearization, baselines, random walk |
//! | [`ssl`] | regularized label propagation and its solvers |
//! | [`spectral`] | eigenpairs, Ncut, sweeps, k-means, p-descent |
//! | [`dataio`] | ingestion, file format, experiments, CSV |
//!
//! ```
//! use hyperlap::{calculus::dirichlet_sum, spectral::two_class_cut_p2, Hypergraph};
//!
//! let h = Hypergraph::new(
//!     6,
//!     vec![vec![0, 1, 2], vec![3, 4, 5], vec![2, 3]],
//!     vec![1.0, 1.0, 0.2],
//! )?;
//! let psi = [1.0, 1.0, 1.0, -1.0, -1.0, -1.0];
//! assert!(dirichlet_sum(&h, &psi, 2.0)? > 0.0);
//! assert_eq!(two_class_cut_p2(&h)?.assignment, vec![0, 0, 0, 1, 1, 1]);
//! # Ok::<(), hyperlap::Error>(())
//! ```

pub mod calculus;
pub mod dataio;
pub mod error;
pub mod hypergraph;
pub mod laplacians;
mod linalg;
pub mod spectral;
pub mod ssl;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, NodeFunction};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hypergraphs.md")]
    mod hypergraphs {}
    #[doc = include_str!("../../../book/src/calculus.md")]
    mod calculus {}
    #[doc = include_str!("../../../book/src/laplacians.md")]
    mod laplacians {}
    #[doc = include_str!("../../../book/src/ssl.md")]
    mod ssl {}
    #[doc = include_str!("../../../book/src/cuts.md")]
    mod cuts {}
    #[doc = include_str!("../../../book/src/data.md")]
    mod data {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
