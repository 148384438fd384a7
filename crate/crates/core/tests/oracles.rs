//! Hand-derived values on the small fixtures, through the public API.

mod common;

use common::{g2, t3};
use hyperlap::calculus::{
    dirichlet_sum, divergence, edge_p_mean, gradient, gradient_norms, inner_product_edges,
    EdgeVertexField,
};
use hyperlap::laplacians::{
    apply_p_laplacian, hein_regularizer, laplacian_p2, p_coefficients, rodriguez_laplacian,
    rodriguez_p_quadratic, zhou_laplacian, LinearOperator,
};
use hyperlap::spectral::{
    brute_force_min_ncut, multiclass_cut_p2, multiclass_ncut, ncut, p_mean, p_var, rayleigh,
    rayleigh2, smallest_eigenpairs, sweep_cut, two_class_cut_p2,
};
use hyperlap::ssl::{
    closed_form_p2, cross_validate_mu, gauss_jacobi_step, objective, predict, SslProblem,
};
use hyperlap::Hypergraph;
use nalgebra::DMatrix;

const E1: [f64; 3] = [1.0, 0.0, 0.0];

fn close(a: f64, b: f64) {
    assert!((a - b).abs() < 1e-12, "{a} != {b}");
}

fn close_matrix(a: &DMatrix<f64>, b: &DMatrix<f64>) {
    assert!((a - b).abs().max() < 1e-12, "{a} != {b}");
}

#[test]
fn degrees() {
    assert_eq!(t3().node_degree(0).unwrap(), 1.0);
    assert_eq!(g2().node_degree(2).unwrap(), 2.0);
}

#[test]
fn gradient_values() {
    let g = gradient(&t3(), &E1).unwrap();
    close(g.get(&t3(), 0, 0).unwrap(), -2f64.sqrt());
    let h = g2();
    let g = gradient(&h, &[1.0, 0.0, 0.0, 0.0]).unwrap();
    close(g.get(&h, 0, 2).unwrap(), 1.0 / 2f64.sqrt());
    let flat = gradient(&h, &h.sqrt_degrees()).unwrap();
    assert!(flat.values().iter().all(|&x| x == 0.0));
}

#[test]
fn norms_sums_and_edge_means() {
    let h = t3();
    let s6 = 6f64.sqrt();
    let n = gradient_norms(&h, &E1).unwrap();
    close(n[0], 2.0 / s6);
    close(n[1], 1.0 / s6);
    close(dirichlet_sum(&h, &E1, 1.0).unwrap(), 4.0 / s6);
    close(dirichlet_sum(&h, &E1, 2.0).unwrap(), 1.0);
    close(edge_p_mean(&h, &n, 0, 1.0), 4.0 / (3.0 * s6));

    let h = g2();
    let n = gradient_norms(&h, &[1.0, 0.0, 0.0, 0.0]).unwrap();
    close(
        edge_p_mean(&h, &n, 1, 2.0),
        ((n[2] * n[2] + n[3] * n[3]) / 2.0).sqrt(),
    );
}

#[test]
fn edge_inner_product_and_divergence() {
    let h = t3();
    let g = gradient(&h, &E1).unwrap();
    close(inner_product_edges(&h, &g, &g).unwrap(), 1.0);
    let single = EdgeVertexField::from_fn(&h, |_, v| if v == 1 { 3.0 } else { 0.0 });
    close(inner_product_edges(&h, &single, &single).unwrap(), 3.0);
    close(-divergence(&h, &g).unwrap()[0], 1.0);

    let h = g2();
    let undirected = EdgeVertexField::from_fn(&h, |e, _| [0.7, -1.3][e]);
    assert!(divergence(&h, &undirected).unwrap().norm_inf() < 1e-15);
}

#[test]
fn p_laplacian_coefficients() {
    let h = t3();
    let c2 = p_coefficients(&h, &E1, 2.0).unwrap();
    for (u, v) in [(0, 1), (0, 2), (1, 2)] {
        close(c2.pair_weight(u, v), 0.5);
    }
    for v in 0..3 {
        close(c2.node_coeff(v), 1.0);
    }
    close(
        p_coefficients(&h, &E1, 1.0).unwrap().pair_weight(0, 1),
        6f64.sqrt() / 3.0,
    );
    close(
        apply_p_laplacian(&h, &E1, 1.0).unwrap()[0],
        4.0 / 6f64.sqrt(),
    );
    close(apply_p_laplacian(&h, &E1, 2.0).unwrap()[0], 1.0);
}

#[test]
fn explicit_t3_matrices() {
    let h = t3();
    let j = DMatrix::from_element(3, 3, 1.0);
    let i = DMatrix::identity(3, 3);
    close_matrix(
        &laplacian_p2(&h).to_dense().unwrap(),
        &(&i - (&j - &i) * 0.5),
    );
    close_matrix(&zhou_laplacian(&h).to_dense().unwrap(), &(&i - &j / 3.0));
    close_matrix(
        &rodriguez_laplacian(&h).to_dense().unwrap(),
        &(&i - (&j - &i) * 0.5),
    );
    close(rodriguez_p_quadratic(&h, &E1, 2.0).unwrap(), 2.0);
}

#[test]
fn hein_regularizer_values() {
    close(hein_regularizer(&t3(), &E1, 2.0).unwrap(), 1.0);
    close(
        hein_regularizer(&g2(), &[1.0, 0.0, 0.0, 0.0], 1.0).unwrap(),
        1.0,
    );
    close(hein_regularizer(&g2(), &[2.0; 4], 1.5).unwrap(), 0.0);
}

#[test]
fn ssl_values() {
    let h = t3();
    let y = [1.0, -1.0, 0.0];
    let prob = SslProblem::new(&h, y.to_vec(), 1.0, 2.0).unwrap();
    close(objective(&prob, &[0.0; 3]).unwrap(), 2.0);
    close(
        objective(&prob, &y).unwrap(),
        dirichlet_sum(&h, &y, 2.0).unwrap(),
    );

    // ψ = ½ (I − Q/2)⁻¹ y with Q = (J − I)/2
    let q = (DMatrix::from_element(3, 3, 1.0) - DMatrix::identity(3, 3)) * 0.5;
    let dense = (DMatrix::identity(3, 3) - q * 0.5).try_inverse().unwrap()
        * nalgebra::DVector::from_row_slice(&y)
        * 0.5;
    let psi = closed_form_p2(&h, &y, 1.0).unwrap();
    for v in 0..3 {
        assert!((psi[v] - dense[v]).abs() < 1e-10);
    }
    let stiff = closed_form_p2(&h, &y, 1e4).unwrap();
    assert!(stiff
        .iter()
        .zip(y.iter())
        .all(|(a, b)| (a - b).abs() < 1e-3));

    assert_eq!(predict(&[0.3, -2.0]), vec![1, -1]);
    assert_eq!(predict(&[0.0, 0.0]), vec![1, 1]);
}

#[test]
fn cross_validation_prefers_small_mu_on_ties() {
    let h = Hypergraph::new(
        6,
        vec![vec![0, 1, 2], vec![3, 4, 5], vec![2, 3]],
        vec![1.0, 1.0, 0.01],
    )
    .unwrap();
    let labeled = [(0, 1), (1, 1), (2, 1), (3, -1), (4, -1), (5, -1)];
    let grid = [1.0, 10.0, 100.0];
    assert_eq!(
        cross_validate_mu(&h, &labeled, 2.0, &grid, 3, 0).unwrap(),
        1.0
    );
    assert_eq!(
        cross_validate_mu(&h, &labeled, 2.0, &[10.0], 3, 0).unwrap(),
        10.0
    );
    assert_eq!(
        cross_validate_mu(&h, &labeled, 2.5, &grid, 3, 9).unwrap(),
        cross_validate_mu(&h, &labeled, 2.5, &grid, 3, 9).unwrap()
    );
}

#[test]
fn ncut_values() {
    close(ncut(&g2(), &[0, 1]).unwrap(), 5.0 / 6.0);
    close(ncut(&t3(), &[0]).unwrap(), 1.5);
    assert!(ncut(&t3(), &[0, 1, 2]).is_err());
    close(multiclass_ncut(&t3(), &[0, 1, 2]).unwrap(), 3.0);
    assert!(multiclass_ncut(&t3(), &[0, 0, 0]).is_err());
    close(brute_force_min_ncut(&t3(), 2).unwrap(), 1.5);
    close(brute_force_min_ncut(&t3(), 1).unwrap(), 0.0);
}

#[test]
fn cuts_on_planted_structure() {
    let tri = Hypergraph::new(
        6,
        vec![
            vec![0, 1],
            vec![1, 2],
            vec![0, 2],
            vec![3, 4],
            vec![4, 5],
            vec![3, 5],
            vec![2, 3],
        ],
        vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.1],
    )
    .unwrap();
    let cut = two_class_cut_p2(&tri).unwrap();
    assert_eq!(cut.assignment, vec![0, 0, 0, 1, 1, 1]);
    close(cut.ncut_value, brute_force_min_ncut(&tri, 2).unwrap());

    let h = g2();
    let v2 = smallest_eigenpairs(&laplacian_p2(&h), 2, &h.sqrt_degrees())
        .unwrap()
        .vectors[1]
        .clone();
    let scores: Vec<f64> = v2
        .iter()
        .zip(h.sqrt_degrees().iter())
        .map(|(x, s)| x / s)
        .collect();
    close(
        sweep_cut(&h, &scores).unwrap().ncut,
        brute_force_min_ncut(&h, 2).unwrap(),
    );

    let singletons = multiclass_cut_p2(&t3(), 3, 0, 1).unwrap();
    assert_eq!(singletons.assignment, vec![0, 1, 2]);
}

#[test]
fn t3_spectrum_and_quotients() {
    let h = t3();
    let pairs = smallest_eigenpairs(&laplacian_p2(&h), 3, &h.sqrt_degrees()).unwrap();
    for (got, want) in pairs.values.iter().zip([0.0, 1.5, 1.5]) {
        assert!((got - want).abs() < 1e-10);
    }
    close(rayleigh(&h, &E1, 2.0).unwrap(), 1.0);
    close(p_mean(&h, &E1, 2.0).unwrap(), 1.0 / 3.0);
    close(p_var(&h, &E1, 2.0).unwrap(), 2.0 / 3.0);
    close(rayleigh2(&h, &E1, 2.0).unwrap(), 1.5);
    for p in [1.0, 1.5, 3.0] {
        close(p_mean(&h, &[2.5; 3], p).unwrap(), 2.5);
        assert!(p_var(&h, &[2.5; 3], p).unwrap().abs() < 1e-12);
    }
}

#[test]
fn min_max_bound_needs_equal_degrees() {
    // star: the hub's row of D^{-1/2} W D^{-1/2} sums to √5 > 1
    let star = Hypergraph::new(6, (1..6).map(|v| vec![0, v]).collect(), vec![1.0; 5]).unwrap();
    let y = vec![1.0, 1.0, 1.0, 1.0, 1.0, -1.0];
    let prob = SslProblem::new(&star, y.clone(), 1.0, 2.0).unwrap();
    let next = gauss_jacobi_step(&prob, &y).unwrap();
    close(next[0], 0.5 * 3.0 / 5f64.sqrt() + 0.5);
    assert!(next[0] > 1.0);
}
