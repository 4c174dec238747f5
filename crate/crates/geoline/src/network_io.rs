//! Network config and graph files.

use serde::{Deserialize, Serialize};

use geoline_core::network::{Graph, NetworkConfig, NetworkParams, PairMargin, StabilityReport};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

/// Nodes either as points or as ids with a distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<NodeDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_matrix: Option<Vec<Vec<f64>>>,
    pub delta: f64,
    pub eta: f64,
    pub h: f64,
    pub eps_max: f64,
    #[serde(default)]
    pub seed: u64,
}

impl NetworkDocument {
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| CliError::invalid(format!("network config: {e}")))
    }

    pub fn to_config(&self) -> Result<NetworkConfig> {
        let params = NetworkParams {
            delta: self.delta,
            eta: self.eta,
            h: self.h,
            eps_max: self.eps_max,
            seed: self.seed,
        };
        let config = match (&self.nodes, &self.ids, &self.distance_matrix) {
            (Some(nodes), None, None) => {
                let ids = nodes.iter().map(|n| n.id.clone()).collect();
                let pts: Vec<(f64, f64)> = nodes.iter().map(|n| (n.x, n.y)).collect();
                NetworkConfig::from_points(ids, &pts, params)
            }
            (None, Some(ids), Some(matrix)) => NetworkConfig::from_matrix(ids.clone(), matrix, params),
            _ => {
                return Err(CliError::invalid(
                    "network config: give either `nodes` or both `ids` and `distance_matrix`",
                ))
            }
        };
        config.map_err(|e| CliError::invalid(format!("network config: {e}")))
    }
}

/// Undirected edges by node id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub edges: Vec<[String; 2]>,
}

impl GraphDocument {
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| CliError::invalid(format!("graph: {e}")))
    }

    /// Edges in canonical order: sorted pairs of sorted ids.
    pub fn from_graph(graph: &Graph, config: &NetworkConfig) -> Self {
        GraphDocument {
            edges: graph.canonical_key(config).into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_graph(&self, config: &NetworkConfig) -> Result<Graph> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, [a, b]) in self.edges.iter().enumerate() {
            let lookup = |id: &str| {
                config
                    .index_of(id)
                    .ok_or_else(|| CliError::invalid(format!("graph: edges[{k}] names unknown node `{id}`")))
            };
            edges.push((lookup(a)?, lookup(b)?));
        }
        Graph::from_edges(config.len(), &edges).map_err(|e| CliError::invalid(format!("graph: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginDoc {
    pub i: String,
    pub j: String,
    pub linked: bool,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityDoc {
    pub stable: bool,
    pub within_violations: Vec<MarginDoc>,
    pub between_violations: Vec<MarginDoc>,
    pub margins: Vec<MarginDoc>,
}

impl StabilityDoc {
    pub fn new(report: &StabilityReport, config: &NetworkConfig) -> Self {
        let ids = config.ids();
        let conv = |v: &[PairMargin]| -> Vec<MarginDoc> {
            v.iter()
                .map(|m| MarginDoc {
                    i: ids[m.i].clone(),
                    j: ids[m.j].clone(),
                    linked: m.linked,
                    margin: m.margin,
                })
                .collect()
        };
        StabilityDoc {
            stable: report.stable,
            within_violations: conv(&report.within_violations),
            between_violations: conv(&report.between_violations),
            margins: conv(&report.margins),
        }
    }
}
