//! Normalized cuts on hypergraphs.
//!
//! The p = 2 pipeline takes eigenvectors of `L` and rounds them, by a
//! threshold sweep for two classes or by k-means for more. For other `p` the
//! second eigenvector warm-starts a descent on the centered Rayleigh quotient
//! `R_p^{(2)}` before the same sweep.

mod assignment;
mod cut;
mod eigen;
mod kmeans;
mod ncut;
mod rayleigh;

pub use assignment::{error_rate, hungarian};
pub use cut::{
    canonicalize, multiclass_cut_p2, two_class_cut_p, two_class_cut_p2, two_class_cut_p_from,
    PartitionResult, CONTINUATION_P,
};
pub use eigen::{smallest_eigenpairs, smallest_eigenpairs_with, EigenOptions, EigenPairs};
pub use kmeans::{kmeans, KMeansResult, KMEANS_MAX_ITER, KMEANS_REL_TOL};
pub use ncut::{
    boundary, brute_force_min_ncut, brute_force_partition, multiclass_ncut, ncut, ncut_mask,
    sweep_cut, SweepCut, BRUTE_FORCE_LIMIT,
};
pub use rayleigh::{
    minimize_rayleigh2, p_eigen_residual, p_mean, p_var, rayleigh, rayleigh2, rayleigh2_gradient,
    DescentOptions, DescentOutcome,
};
