//! Strategic network formation over arbitrary geography.
//!
//! Nodes are locales and a state is a connected component. A link between
//! `i` and `j` is worth `(1 - delta) - eta G_ij - h N_ij`, where `N_ij` is
//! the size of the component holding both once linked.

mod formation;

pub use formation::{
    equilibrium_counts, equilibrium_probability, simulate_formation, simulate_run, EquilibriumDistribution, LinkShocks,
};

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::math::sqrt;
use crate::{Error, Result};

/// Link parameters, shock width and master seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams {
    /// Delivery rate between unlinked nodes, in `(0, 1]`.
    pub delta: f64,
    /// Link cost per unit distance.
    pub eta: f64,
    /// Congestion cost per component member.
    pub h: f64,
    /// Half-width of the uniform link shocks.
    pub eps_max: f64,
    pub seed: u64,
}

impl NetworkParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| Err(Error::InvalidParameter { name, value, reason });
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return bad("delta", self.delta, "must lie in (0, 1]");
        }
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return bad("eta", self.eta, "must be positive");
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return bad("h", self.h, "must be positive");
        }
        if !(self.eps_max >= 0.0 && self.eps_max.is_finite()) {
            return bad("eps_max", self.eps_max, "must be finite and non-negative");
        }
        Ok(())
    }
}

/// Nodes with a symmetric distance matrix and link parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    ids: Vec<String>,
    dist: Vec<f64>,
    params: NetworkParams,
}

impl NetworkConfig {
    /// Nodes at 2-D points, with Euclidean distances.
    pub fn from_points(ids: Vec<String>, points: &[(f64, f64)], params: NetworkParams) -> Result<Self> {
        if ids.len() != points.len() {
            return Err(Error::InvalidNetwork("one point per node id is required"));
        }
        let n = points.len();
        let mut dist = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
                dist[i * n + j] = sqrt(dx * dx + dy * dy);
            }
        }
        Self::build(ids, dist, params)
    }

    /// Nodes with an explicit distance matrix, given row by row.
    pub fn from_matrix(ids: Vec<String>, matrix: &[Vec<f64>], params: NetworkParams) -> Result<Self> {
        let n = ids.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidNetwork(
                "distance matrix must be square with one row per node",
            ));
        }
        Self::build(ids, matrix.concat(), params)
    }

    fn build(ids: Vec<String>, dist: Vec<f64>, params: NetworkParams) -> Result<Self> {
        params.validate()?;
        let n = ids.len();
        let unique: BTreeSet<&String> = ids.iter().collect();
        if unique.len() != n {
            return Err(Error::InvalidNetwork("node ids must be unique"));
        }
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(Error::InvalidNetwork("distance matrix diagonal must be zero"));
            }
            for j in 0..n {
                let d = dist[i * n + j];
                if !(d >= 0.0 && d.is_finite()) {
                    return Err(Error::InvalidNetwork("distances must be finite and non-negative"));
                }
                if d != dist[j * n + i] {
                    return Err(Error::InvalidNetwork("distance matrix must be symmetric"));
                }
            }
        }
        Ok(NetworkConfig { ids, dist, params })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn params(&self) -> &NetworkParams {
        &self.params
    }

    /// Same nodes with different parameters.
    pub fn with_params(&self, params: NetworkParams) -> Result<Self> {
        params.validate()?;
        Ok(NetworkConfig { params, ..self.clone() })
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    /// Total connection cost `TC_i = sum_j G_ij`.
    pub fn total_cost(&self, i: usize) -> f64 {
        self.dist[i * self.len()..(i + 1) * self.len()].iter().sum()
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode(i))
        }
    }
}

/// Undirected graph over node indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            if i >= n {
                return Err(Error::UnknownNode(i));
            }
            if j >= n {
                return Err(Error::UnknownNode(j));
            }
            if i == j {
                return Err(Error::InvalidNetwork("self-links are not allowed"));
            }
            g.edges.insert(ordered(i, j));
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Edges as `(i, j)` with `i < j`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&ordered(i, j))
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        debug_assert!(i != j && i < self.n && j < self.n);
        self.edges.insert(ordered(i, j));
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        self.edges.remove(&ordered(i, j));
    }

    /// Component label per node. Labels are the smallest node index of
    /// each component.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(i, j) in &self.edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                let (lo, hi) = ordered(a, b);
                parent[hi] = lo;
            }
        }
        (0..self.n).map(|x| find(&mut parent, x)).collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let labels = self.component_labels();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = alloc::vec![usize::MAX; self.n];
        for (node, &label) in labels.iter().enumerate() {
            if slot[label] == usize::MAX {
                slot[label] = out.len();
                out.push(Vec::new());
            }
            out[slot[label]].push(node);
        }
        out
    }

    /// Size of the component containing each node.
    pub fn component_sizes(&self) -> Vec<usize> {
        let labels = self.component_labels();
        let mut count = alloc::vec![0usize; self.n];
        for &l in &labels {
            count[l] += 1;
        }
        labels.iter().map(|&l| count[l]).collect()
    }

    /// Sorted list of sorted id pairs, the graph's canonical encoding.
    pub fn canonical_key(&self, config: &NetworkConfig) -> Vec<(String, String)> {
        let mut key: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (&config.ids[i], &config.ids[j]);
                if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            })
            .collect();
        key.sort();
        key
    }
}

/// Size of the component that would hold `i` and `j` once linked.
fn merged_size(labels: &[usize], sizes: &[usize], i: usize, j: usize) -> usize {
    if labels[i] == labels[j] {
        sizes[i]
    } else {
        sizes[i] + sizes[j]
    }
}

fn base_utility(config: &NetworkConfig, i: usize, j: usize, merged: usize) -> f64 {
    let p = &config.params;
    (1.0 - p.delta) - p.eta * config.distance(i, j) - p.h * merged as f64
}

/// Utility of the link `(i, j)` in `graph`, whether or not it exists.
pub fn link_utility(
    i: usize,
    j: usize,
    graph: &Graph,
    config: &NetworkConfig,
    shocks: Option<&LinkShocks>,
) -> Result<f64> {
    config.check(i)?;
    config.check(j)?;
    if i == j {
        return Err(Error::InvalidNetwork("a link needs two distinct nodes"));
    }
    if graph.node_count() != config.len() {
        return Err(Error::InvalidNetwork("graph and config have different node counts"));
    }
    let labels = graph.component_labels();
    let sizes = graph.component_sizes();
    let u = base_utility(config, i, j, merged_size(&labels, &sizes, i, j));
    Ok(u + shocks.map_or(0.0, |s| s.get(i, j)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMargin {
    pub i: usize,
    pub j: usize,
    pub linked: bool,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Every pair `i < j`, in ascending order.
    pub margins: Vec<PairMargin>,
    /// Linked pairs whose link is not worth keeping.
    pub within_violations: Vec<PairMargin>,
    /// Unlinked pairs that would both gain from linking.
    pub between_violations: Vec<PairMargin>,
    pub stable: bool,
}

/// Pairwise stability of `graph` under the unshocked utility.
///
/// A linked pair needs a non-negative margin at its current component
/// size. An unlinked pair needs a non-positive margin at the size its
/// component would have once linked: `N_i + N_j` across components, or the
/// shared component's size if both already belong to one.
pub fn check_pairwise_stable(graph: &Graph, config: &NetworkConfig) -> Result<StabilityReport> {
    if graph.node_count() != config.len() {
        return Err(Error::InvalidNetwork("graph and config have different node counts"));
    }
    let labels = graph.component_labels();
    let sizes = graph.component_sizes();
    let n = config.len();
    let mut margins = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            margins.push(PairMargin {
                i,
                j,
                linked: graph.has_edge(i, j),
                margin: base_utility(config, i, j, merged_size(&labels, &sizes, i, j)),
            });
        }
    }
    let within_violations: Vec<_> = margins.iter().filter(|m| m.linked && m.margin < 0.0).copied().collect();
    let between_violations: Vec<_> = margins
        .iter()
        .filter(|m| !m.linked && m.margin > 0.0)
        .copied()
        .collect();
    let stable = within_violations.is_empty() && between_violations.is_empty();
    Ok(StabilityReport {
        margins,
        within_violations,
        between_violations,
        stable,
    })
}
