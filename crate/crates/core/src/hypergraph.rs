//! Hypergraph data model: validated edge sets, degrees, volumes and connectivity.
//!
//! A [`Hypergraph`] stores undirected hyperedges as sorted node-id lists with
//! positive weights. Construction rejects singleton edges, duplicate members,
//! non-positive weights and disconnected inputs, so every node has positive
//! degree afterwards.

use std::ops::{Deref, DerefMut};

use crate::error::{Error, Result};

/// Real-valued function on the nodes of a hypergraph, indexed by node id.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NodeFunction(Vec<f64>);

impl NodeFunction {
    /// All-zero function on `n` nodes.
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    /// Constant function on `n` nodes.
    pub fn constant(n: usize, value: f64) -> Self {
        Self(vec![value; n])
    }

    /// Consumes the function and returns the underlying vector.
    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Euclidean norm.
    pub fn norm2(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest absolute entry.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Deref for NodeFunction {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for NodeFunction {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for NodeFunction {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl From<&[f64]> for NodeFunction {
    fn from(v: &[f64]) -> Self {
        Self(v.to_vec())
    }
}

impl FromIterator<f64> for NodeFunction {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// A connected, weighted hypergraph with dense node ids.
///
/// Edge members are stored sorted. Incidences are laid out edge by edge, so an
/// [`EdgeVertexField`](crate::calculus::EdgeVertexField) is a flat vector with
/// one slot per `(edge, member)` pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypergraph {
    num_nodes: usize,
    members: Vec<usize>,
    offsets: Vec<usize>,
    weights: Vec<f64>,
    degrees: Vec<f64>,
    node_offsets: Vec<usize>,
    node_edges: Vec<usize>,
}

impl Hypergraph {
    /// Builds and validates a hypergraph.
    ///
    /// ```
    /// use hyperlap::Hypergraph;
    /// let t3 = Hypergraph::new(3, vec![vec![0, 1, 2]], vec![1.0]).unwrap();
    /// assert_eq!(t3.edge_degree(0).unwrap(), 3);
    /// assert!(Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]], vec![1.0, 1.0]).is_err());
    /// ```
    pub fn new(num_nodes: usize, edges: Vec<Vec<usize>>, weights: Vec<f64>) -> Result<Self> {
        if edges.len() != weights.len() {
            return Err(Error::LengthMismatch {
                expected: edges.len(),
                actual: weights.len(),
            });
        }
        if num_nodes == 0 || edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut members = Vec::with_capacity(edges.iter().map(Vec::len).sum());
        let mut offsets = Vec::with_capacity(edges.len() + 1);
        offsets.push(0);
        for (e, (edge, &w)) in edges.iter().zip(&weights).enumerate() {
            if edge.len() < 2 {
                return Err(Error::SingletonEdge {
                    edge: e,
                    size: edge.len(),
                });
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::NonPositiveWeight { edge: e, weight: w });
            }
            let mut sorted = edge.clone();
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::DuplicateNode {
                        edge: e,
                        node: pair[0],
                    });
                }
            }
            if let Some(&last) = sorted.last() {
                if last >= num_nodes {
                    return Err(Error::NodeIdOutOfRange {
                        node: last,
                        num_nodes,
                    });
                }
            }
            members.extend_from_slice(&sorted);
            offsets.push(members.len());
        }

        let components = count_components(num_nodes, &members, &offsets);
        if components > 1 {
            return Err(Error::Disconnected { components });
        }

        let mut degrees = vec![0.0; num_nodes];
        let mut counts = vec![0usize; num_nodes];
        for e in 0..weights.len() {
            for &v in &members[offsets[e]..offsets[e + 1]] {
                degrees[v] += weights[e];
                counts[v] += 1;
            }
        }
        let mut node_offsets = Vec::with_capacity(num_nodes + 1);
        node_offsets.push(0);
        for c in &counts {
            node_offsets.push(node_offsets.last().unwrap() + c);
        }
        let mut fill = node_offsets.clone();
        let mut node_edges = vec![0; members.len()];
        for e in 0..weights.len() {
            for &v in &members[offsets[e]..offsets[e + 1]] {
                node_edges[fill[v]] = e;
                fill[v] += 1;
            }
        }

        Ok(Self {
            num_nodes,
            members,
            offsets,
            weights,
            degrees,
            node_offsets,
            node_edges,
        })
    }

    /// Number of nodes.
    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    /// Number of hyperedges (parallel edges counted separately).
    pub fn num_edges(&self) -> usize {
        self.weights.len()
    }

    /// Total number of incidences, `Σ_e |e|`.
    pub fn num_incidences(&self) -> usize {
        self.members.len()
    }

    /// Sorted members of edge `e`. Panics if `e` is out of range.
    pub fn edge(&self, e: usize) -> &[usize] {
        &self.members[self.offsets[e]..self.offsets[e + 1]]
    }

    /// Offset of edge `e` in the flat incidence layout.
    pub fn edge_offset(&self, e: usize) -> usize {
        self.offsets[e]
    }

    /// Iterator over `(edge index, members, weight)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, &[usize], f64)> + '_ {
        (0..self.num_edges()).map(move |e| (e, self.edge(e), self.weights[e]))
    }

    /// Weight of edge `e`. Panics if `e` is out of range.
    pub fn weight(&self, e: usize) -> f64 {
        self.weights[e]
    }

    /// All edge weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Edge degree `δ_e = |e|`.
    pub fn edge_degree(&self, e: usize) -> Result<usize> {
        if e >= self.num_edges() {
            return Err(Error::EdgeIndexOutOfRange {
                edge: e,
                num_edges: self.num_edges(),
            });
        }
        Ok(self.offsets[e + 1] - self.offsets[e])
    }

    /// Node degree `d(v)`, the total weight of edges containing `v`.
    pub fn node_degree(&self, v: usize) -> Result<f64> {
        self.check_node(v)?;
        Ok(self.degrees[v])
    }

    /// All node degrees.
    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Edges containing node `v`. Panics if `v` is out of range.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.node_edges[self.node_offsets[v]..self.node_offsets[v + 1]]
    }

    /// `vol(S) = Σ_{u∈S} d(u)`. Repeated ids are counted once.
    pub fn volume(&self, set: &[usize]) -> Result<f64> {
        let mut seen = vec![false; self.num_nodes];
        let mut vol = 0.0;
        for &v in set {
            self.check_node(v)?;
            if !seen[v] {
                seen[v] = true;
                vol += self.degrees[v];
            }
        }
        Ok(vol)
    }

    /// `vol(V)`.
    pub fn total_volume(&self) -> f64 {
        self.degrees.iter().sum()
    }

    /// The vector `D^{1/2} 1`, spanning the kernel of every Laplacian here.
    pub fn sqrt_degrees(&self) -> NodeFunction {
        self.degrees.iter().map(|d| d.sqrt()).collect()
    }

    /// Returns an error unless `f` has one entry per node.
    pub fn check_len(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.num_nodes {
            return Err(Error::LengthMismatch {
                expected: self.num_nodes,
                actual: f.len(),
            });
        }
        Ok(())
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.num_nodes {
            return Err(Error::NodeIdOutOfRange {
                node: v,
                num_nodes: self.num_nodes,
            });
        }
        Ok(())
    }
}

/// Unvalidated hypergraph input, as produced by ingestion.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawHypergraph {
    pub num_nodes: usize,
    pub edges: Vec<Vec<usize>>,
    pub weights: Vec<f64>,
}

/// Restricts `raw` to its largest connected component.
///
/// Returns the validated sub-hypergraph and, for each new node id, the
/// original id. Nodes in no edge are singleton components. Ties in component
/// size go to the component holding the smallest original id.
///
/// ```
/// use hyperlap::hypergraph::{largest_component, RawHypergraph};
/// let raw = RawHypergraph {
///     num_nodes: 5,
///     edges: vec![vec![3, 4], vec![0, 1, 2]],
///     weights: vec![1.0, 1.0],
/// };
/// let (h, ids) = largest_component(&raw).unwrap();
/// assert_eq!(h.num_nodes(), 3);
/// assert_eq!(ids, vec![0, 1, 2]);
/// ```
pub fn largest_component(raw: &RawHypergraph) -> Result<(Hypergraph, Vec<usize>)> {
    if raw.num_nodes == 0 || raw.edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if raw.edges.len() != raw.weights.len() {
        return Err(Error::LengthMismatch {
            expected: raw.edges.len(),
            actual: raw.weights.len(),
        });
    }
    for edge in &raw.edges {
        if let Some(&bad) = edge.iter().find(|&&v| v >= raw.num_nodes) {
            return Err(Error::NodeIdOutOfRange {
                node: bad,
                num_nodes: raw.num_nodes,
            });
        }
    }
    let mut uf = UnionFind::new(raw.num_nodes);
    for edge in &raw.edges {
        for pair in edge.windows(2) {
            uf.union(pair[0], pair[1]);
        }
    }
    let mut size = vec![0usize; raw.num_nodes];
    for v in 0..raw.num_nodes {
        size[uf.find(v)] += 1;
    }
    // Scanning in id order and replacing only on strictly larger size keeps the
    // component with the smallest member on ties.
    let mut best_root = uf.find(0);
    for v in 1..raw.num_nodes {
        let r = uf.find(v);
        if size[r] > size[best_root] {
            best_root = r;
        }
    }
    let mut new_id = vec![usize::MAX; raw.num_nodes];
    let mut original = Vec::with_capacity(size[best_root]);
    for v in 0..raw.num_nodes {
        if uf.find(v) == best_root {
            new_id[v] = original.len();
            original.push(v);
        }
    }
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for (edge, &w) in raw.edges.iter().zip(&raw.weights) {
        if edge.first().is_some_and(|&v| new_id[v] != usize::MAX) {
            edges.push(edge.iter().map(|&v| new_id[v]).collect());
            weights.push(w);
        }
    }
    let h = Hypergraph::new(original.len(), edges, weights)?;
    Ok((h, original))
}

fn count_components(n: usize, members: &[usize], offsets: &[usize]) -> usize {
    let mut uf = UnionFind::new(n);
    for e in 0..offsets.len() - 1 {
        for pair in members[offsets[e]..offsets[e + 1]].windows(2) {
            uf.union(pair[0], pair[1]);
        }
    }
    (0..n).filter(|&v| uf.find(v) == v).count()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
