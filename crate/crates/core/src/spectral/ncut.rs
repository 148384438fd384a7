//! Normalized cuts, threshold sweeps and exhaustive minimization.
//!
//! The boundary of a node set counts every crossing co-edge pair with weight
//! `w(e)/(δ_e−1)`. An edge with `a` members inside `A` therefore contributes
//! `w(e)/(δ_e−1) · a (δ_e − a)`.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

fn mask_of(h: &Hypergraph, set: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; h.num_nodes()];
    for &v in set {
        if v >= h.num_nodes() {
            return Err(Error::NodeIdOutOfRange {
                node: v,
                num_nodes: h.num_nodes(),
            });
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// `∂V(A, V∖A)`.
pub fn boundary(h: &Hypergraph, in_a: &[bool]) -> f64 {
    h.edges()
        .map(|(_, members, w)| {
            let delta = members.len() as f64;
            let a = members.iter().filter(|&&v| in_a[v]).count() as f64;
            w / (delta - 1.0) * a * (delta - a)
        })
        .sum()
}

/// `Ncut(A, V∖A)` for a membership mask.
pub fn ncut_mask(h: &Hypergraph, in_a: &[bool]) -> Result<f64> {
    if in_a.len() != h.num_nodes() {
        return Err(Error::LengthMismatch {
            expected: h.num_nodes(),
            actual: in_a.len(),
        });
    }
    let vol_a: f64 = (0..in_a.len())
        .filter(|&v| in_a[v])
        .map(|v| h.degrees()[v])
        .sum();
    let count = in_a.iter().filter(|&&x| x).count();
    if count == 0 || count == in_a.len() {
        return Err(Error::DegeneratePartition);
    }
    let vol_b = h.total_volume() - vol_a;
    Ok(boundary(h, in_a) * (1.0 / vol_a + 1.0 / vol_b))
}

/// `Ncut(A, V∖A) = ∂V(A, V∖A) (1/vol A + 1/vol(V∖A))`.
///
/// ```
/// use hyperlap::{spectral::ncut, Hypergraph};
/// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
/// assert!((ncut(&t3, &[0]).unwrap() - 1.5).abs() < 1e-15);
/// ```
pub fn ncut(h: &Hypergraph, a: &[usize]) -> Result<f64> {
    ncut_mask(h, &mask_of(h, a)?)
}

/// `Σ_i ∂V(V_i, V∖V_i) / vol(V_i)` for an assignment onto clusters `0..k`.
pub fn multiclass_ncut(h: &Hypergraph, assignment: &[usize]) -> Result<f64> {
    if assignment.len() != h.num_nodes() {
        return Err(Error::LengthMismatch {
            expected: h.num_nodes(),
            actual: assignment.len(),
        });
    }
    let k = assignment.iter().max().map_or(0, |m| m + 1);
    if k < 2 {
        return Err(Error::DegeneratePartition);
    }
    let mut vol = vec![0.0; k];
    for (v, &c) in assignment.iter().enumerate() {
        vol[c] += h.degrees()[v];
    }
    if let Some(c) = vol.iter().position(|&x| x == 0.0) {
        return Err(Error::EmptyCluster(c));
    }
    Ok(multiclass_value(h, assignment, &vol))
}

fn multiclass_value(h: &Hypergraph, assignment: &[usize], vol: &[f64]) -> f64 {
    let mut bnd = vec![0.0; vol.len()];
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for (_, members, w) in h.edges() {
        let delta = members.len();
        counts.clear();
        for &v in members {
            let c = assignment[v];
            match counts.iter_mut().find(|(id, _)| *id == c) {
                Some(entry) => entry.1 += 1,
                None => counts.push((c, 1)),
            }
        }
        let scale = w / (delta as f64 - 1.0);
        for &(c, a) in &counts {
            bnd[c] += scale * (a * (delta - a)) as f64;
        }
    }
    bnd.iter().zip(vol).map(|(b, v)| b / v).sum()
}

/// Result of a threshold sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepCut {
    /// Membership of the low side.
    pub in_a: Vec<bool>,
    pub ncut: f64,
    /// Largest score on the low side.
    pub threshold: f64,
}

/// Best of the `n − 1` cuts `{v : score(v) ≤ t}` by Ncut.
///
/// Nodes are ordered by score, ties by id. Ties in Ncut keep the smaller side.
pub fn sweep_cut(h: &Hypergraph, scores: &[f64]) -> Result<SweepCut> {
    h.check_len(scores)?;
    let n = h.num_nodes();
    if n < 2 {
        return Err(Error::DegeneratePartition);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    let total = h.total_volume();
    let mut inside = vec![0usize; h.num_edges()];
    let (mut bnd, mut vol_a) = (0.0, 0.0);
    let mut best = (f64::INFINITY, 0usize);
    for (s, &v) in order.iter().enumerate().take(n - 1) {
        for &e in h.incident_edges(v) {
            let delta = h.edge(e).len() as f64;
            let a = inside[e] as f64;
            bnd += h.weight(e) / (delta - 1.0) * (delta - 2.0 * a - 1.0);
            inside[e] += 1;
        }
        vol_a += h.degrees()[v];
        let value = bnd * (1.0 / vol_a + 1.0 / (total - vol_a));
        if value < best.0 {
            best = (value, s + 1);
        }
    }
    let mut in_a = vec![false; n];
    for &v in &order[..best.1] {
        in_a[v] = true;
    }
    let ncut = ncut_mask(h, &in_a)?;
    Ok(SweepCut {
        in_a,
        ncut,
        threshold: scores[order[best.1 - 1]],
    })
}

/// Largest input accepted by the exhaustive search.
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Exact `min Ncut` over all assignments onto exactly `k` nonempty clusters.
pub fn brute_force_min_ncut(h: &Hypergraph, k: usize) -> Result<f64> {
    Ok(brute_force_partition(h, k)?.0)
}

/// [`brute_force_min_ncut`] together with a minimizing assignment.
pub fn brute_force_partition(h: &Hypergraph, k: usize) -> Result<(f64, Vec<usize>)> {
    let n = h.num_nodes();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "nodes",
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    if k == 1 {
        return Ok((0.0, vec![0; n]));
    }
    let mut best = (f64::INFINITY, Vec::new());
    let mut labels = vec![0usize; n];
    let mut vol = vec![0.0; k];
    enumerate(h, k, 1, 1, &mut labels, &mut vol, &mut best);
    Ok(best)
}

/// Restricted-growth enumeration: `labels[i] ≤ max(labels[..i]) + 1`.
fn enumerate(
    h: &Hypergraph,
    k: usize,
    i: usize,
    used: usize,
    labels: &mut [usize],
    vol: &mut [f64],
    best: &mut (f64, Vec<usize>),
) {
    let n = labels.len();
    if i == n {
        if used == k {
            vol.fill(0.0);
            for (v, &c) in labels.iter().enumerate() {
                vol[c] += h.degrees()[v];
            }
            let value = multiclass_value(h, labels, vol);
            if value < best.0 {
                *best = (value, labels.to_vec());
            }
        }
        return;
    }
    // not enough nodes left to open the remaining clusters
    if used + (n - i) < k {
        return;
    }
    for c in 0..=used.min(k - 1) {
        labels[i] = c;
        enumerate(h, k, i + 1, used.max(c + 1), labels, vol, best);
    }
}
