//! Identities that must hold on any valid hypergraph, evaluated at seeded
//! random functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::{
    dirichlet_sum, divergence, gradient, inner_product_edges, inner_product_nodes, EdgeVertexField,
};
use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::laplacians::{
    apply_p_laplacian, laplacian_p2, p_quadratic_form, random_walk, LinearOperator,
};
use crate::spectral::smallest_eigenpairs;

/// Outcome of one identity.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// Largest observed violation, relative where the check is relative.
    pub value: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// Runs every identity with `draws` random functions each.
pub fn run_checks(h: &Hypergraph, seed: u64, draws: usize) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = h.num_nodes();
    let mut random =
        |len: usize| -> Vec<f64> { (0..len).map(|_| rng.random_range(-1.0..1.0)).collect() };

    let mut stokes = 0.0f64;
    let mut forms = 0.0f64;
    for _ in 0..draws {
        let psi = random(n);
        let phi = EdgeVertexField::from_values(h, random(h.num_incidences()))?;
        let lhs = inner_product_edges(h, &gradient(h, &psi)?, &phi)?;
        let rhs = inner_product_nodes(&psi, &divergence(h, &phi)?)?;
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        stokes = stokes.max((lhs + rhs).abs() / scale);
        for p in [1.5, 2.0, 2.5, 3.0] {
            let s = dirichlet_sum(h, &psi, p)?;
            let lap = apply_p_laplacian(h, &psi, p)?;
            forms = forms
                .max(rel(s, inner_product_nodes(&psi, &lap)?))
                .max(rel(s, p_quadratic_form(h, &psi, p)?));
        }
    }

    let sd = h.sqrt_degrees();
    let kernel = laplacian_p2(h).apply(&sd).norm_inf() / sd.norm_inf();

    let (walk, pi) = random_walk(h);
    let stationary = walk
        .apply_transpose(&pi)
        .iter()
        .zip(pi.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let pairs = smallest_eigenpairs(&laplacian_p2(h), 1, &sd)?;
    let lowest = pairs.values[0].abs();

    Ok(vec![
        CheckOutcome {
            name: "stokes adjointness",
            value: stokes,
            tolerance: 1e-10,
        },
        CheckOutcome {
            name: "dirichlet sum = <psi, lap_p psi> = quadratic form",
            value: forms,
            tolerance: 1e-10,
        },
        CheckOutcome {
            name: "L D^{1/2} 1 = 0",
            value: kernel,
            tolerance: 1e-12,
        },
        CheckOutcome {
            name: "P^T pi = pi",
            value: stationary,
            tolerance: 1e-12,
        },
        CheckOutcome {
            name: "smallest eigenvalue of L is 0",
            value: lowest,
            tolerance: 1e-8,
        },
    ])
}
