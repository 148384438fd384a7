//! Optimal cluster-to-label matching and the resulting error rate.

use crate::error::{Error, Result};

/// Minimum-cost perfect matching on a square cost matrix.
///
/// Returns `col[i]`, the column matched to row `i`. Shortest augmenting paths
/// with potentials, `O(n³)`.
pub fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    // 1-based arrays; index 0 is the virtual source
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col = vec![0; n];
    for j in 1..=n {
        col[owner[j] - 1] = j - 1;
    }
    col
}

/// Fraction of nodes misclassified under the best bijection between predicted
/// clusters and true classes.
///
/// Ids on either side are arbitrary; a side with fewer distinct ids gets
/// dummy partners.
///
/// ```
/// use hyperlap::spectral::error_rate;
/// assert_eq!(error_rate(&[1, 1, 0, 0], &[0, 0, 1, 1]).unwrap(), 0.0);
/// assert_eq!(error_rate(&[0, 0, 1, 0], &[0, 0, 1, 1]).unwrap(), 0.25);
/// ```
pub fn error_rate(pred: &[usize], truth: &[usize]) -> Result<f64> {
    if pred.len() != truth.len() {
        return Err(Error::SizeMismatch(pred.len(), truth.len()));
    }
    if pred.is_empty() {
        return Ok(0.0);
    }
    let kp = pred.iter().max().map_or(0, |m| m + 1);
    let kt = truth.iter().max().map_or(0, |m| m + 1);
    let size = kp.max(kt);
    let mut confusion = vec![vec![0usize; size]; size];
    for (&a, &b) in pred.iter().zip(truth) {
        confusion[a][b] += 1;
    }
    let cost: Vec<Vec<f64>> = confusion
        .iter()
        .map(|row| row.iter().map(|&c| -(c as f64)).collect())
        .collect();
    let matched: usize = hungarian(&cost)
        .iter()
        .enumerate()
        .map(|(i, &j)| confusion[i][j])
        .sum();
    Ok(1.0 - matched as f64 / pred.len() as f64)
}
