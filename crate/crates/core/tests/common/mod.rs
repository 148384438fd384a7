//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use hyperlap::Hypergraph;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn t3() -> Hypergraph {
    Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap()
}

pub fn g2() -> Hypergraph {
    Hypergraph::new(4, vec![vec![0, 1, 2], vec![2, 3]], vec![1.0, 1.0]).unwrap()
}

/// Connected hypergraph on `n` nodes: a random spanning family of edges of
/// size at most `max_delta`, then `extra` random edges. Weights in `[0.5, 2]`.
pub fn connected(rng: &mut ChaCha8Rng, n: usize, max_delta: usize, extra: usize) -> Hypergraph {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let mut edges = Vec::new();
    let mut covered = 1;
    while covered < n {
        let fresh = rng.random_range(1..max_delta).min(n - covered);
        let mut e = vec![order[rng.random_range(0..covered)]];
        e.extend_from_slice(&order[covered..covered + fresh]);
        covered += fresh;
        edges.push(e);
    }
    for _ in 0..extra {
        let size = rng.random_range(2..=max_delta.min(n));
        edges.push(sample(rng, n, size).into_vec());
    }
    let weights = (0..edges.len())
        .map(|_| rng.random_range(0.5..2.0))
        .collect();
    Hypergraph::new(n, edges, weights).unwrap()
}

/// A connected instance with `n ∈ [lo, hi]` and `δ_e ≤ 4`.
pub fn random_instance(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Hypergraph {
    let n = rng.random_range(lo..=hi);
    let extra = rng.random_range(0..=n);
    connected(rng, n, 4, extra)
}

/// Graph (all `δ_e = 2`) on `n` nodes.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Hypergraph {
    let extra = rng.random_range(0..=n);
    connected(rng, n, 2, extra)
}

pub fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Repository `data/` directory.
pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
