//! Network topologies and cluster analysis.
//!
//! A [`QuantumNetwork`] is a multigraph over dense node ids `0..node_count`
//! with a flat edge list. Parallel edges between the same pair of nodes are
//! separate entangled pairs, each with its own SCP. Lattice generators also
//! record node coordinates and, for the honeycomb, the A/B sublattice.

mod components;
mod io;
mod lattice;
mod random;

pub use components::{components, percolation_strength, ClassicalGraph, ComponentReport, DisjointSet};
pub use io::NetworkFile;
pub use lattice::{honeycomb_dims, make_honeycomb, make_square, make_triangular};
pub use random::{make_erdos_renyi, make_watts_strogatz};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TopoError {
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("{what} = {value} is outside [0, 1]")]
    ProbabilityOutOfRange { what: &'static str, value: f64 },
    #[error("ring degree {0} must be even")]
    OddRingDegree(usize),
    #[error("ring degree {degree} must be smaller than the node count {n}")]
    RingDegreeTooLarge { degree: usize, n: usize },
    #[error("edge ({u}, {v}) references a node outside 0..{node_count}")]
    NodeOutOfRange { u: usize, v: usize, node_count: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has SCP {scp} outside [0, 1]")]
    ScpOutOfRange { u: usize, v: usize, scp: f64 },
    #[error("percolation strength is undefined for an empty graph")]
    EmptyGraph,
    #[error("node metadata has {got} entries for {node_count} nodes")]
    MetaLength { got: usize, node_count: usize },
    #[error("unknown topology {0:?}")]
    UnknownTopology(String),
    #[error("malformed network file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Square,
    Honeycomb,
    Triangular,
    ErdosRenyi,
    WattsStrogatz,
    Custom,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Square => "square",
            Topology::Honeycomb => "honeycomb",
            Topology::Triangular => "triangular",
            Topology::ErdosRenyi => "erdos_renyi",
            Topology::WattsStrogatz => "watts_strogatz",
            Topology::Custom => "custom",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Topology {
    type Err = TopoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "square" => Topology::Square,
            "honeycomb" => Topology::Honeycomb,
            "triangular" => Topology::Triangular,
            "erdos_renyi" | "er" => Topology::ErdosRenyi,
            "watts_strogatz" | "ws" => Topology::WattsStrogatz,
            "custom" => Topology::Custom,
            other => return Err(TopoError::UnknownTopology(other.to_string())),
        })
    }
}

/// Honeycomb sublattice label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sublattice {
    A,
    B,
}

/// One entangled pair shared by nodes `u` and `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub scp: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, scp: f64) -> Self {
        Self { u, v, scp }
    }

    /// Unordered node pair, smaller id first.
    #[inline]
    pub fn key(&self) -> (usize, usize) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }
}

/// A multigraph quantum network.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumNetwork {
    node_count: usize,
    edges: Vec<Edge>,
    topology: Topology,
    bonds_per_link: usize,
    coords: Option<Vec<(i64, i64)>>,
    sublattice: Option<Vec<Sublattice>>,
    scps_assigned: bool,
}

impl QuantumNetwork {
    /// A `Custom` network; SCPs are taken as given and marked assigned.
    pub fn new(node_count: usize, edges: Vec<Edge>) -> Result<Self, TopoError> {
        let net = Self {
            node_count,
            edges,
            topology: Topology::Custom,
            bonds_per_link: 1,
            coords: None,
            sublattice: None,
            scps_assigned: true,
        };
        net.validate()?;
        Ok(net)
    }

    pub(crate) fn from_parts(node_count: usize, edges: Vec<Edge>, topology: Topology, bonds_per_link: usize) -> Self {
        Self {
            node_count,
            edges,
            topology,
            bonds_per_link,
            coords: None,
            sublattice: None,
            scps_assigned: false,
        }
    }

    pub fn with_topology(mut self, topology: Topology, bonds_per_link: usize) -> Self {
        self.topology = topology;
        self.bonds_per_link = bonds_per_link.max(1);
        self
    }

    pub fn with_coords(mut self, coords: Vec<(i64, i64)>) -> Result<Self, TopoError> {
        if coords.len() != self.node_count {
            return Err(TopoError::MetaLength {
                got: coords.len(),
                node_count: self.node_count,
            });
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn with_sublattice(mut self, labels: Vec<Sublattice>) -> Result<Self, TopoError> {
        if labels.len() != self.node_count {
            return Err(TopoError::MetaLength {
                got: labels.len(),
                node_count: self.node_count,
            });
        }
        self.sublattice = Some(labels);
        Ok(self)
    }

    pub(crate) fn set_scps_assigned(&mut self, assigned: bool) {
        self.scps_assigned = assigned;
    }

    pub(crate) fn edges_mut(&mut self) -> &mut [Edge] {
        &mut self.edges
    }

    pub fn validate(&self) -> Result<(), TopoError> {
        for e in &self.edges {
            if e.u >= self.node_count || e.v >= self.node_count {
                return Err(TopoError::NodeOutOfRange {
                    u: e.u,
                    v: e.v,
                    node_count: self.node_count,
                });
            }
            if e.u == e.v {
                return Err(TopoError::SelfLoop(e.u));
            }
            if !(0.0..=1.0).contains(&e.scp) {
                return Err(TopoError::ScpOutOfRange {
                    u: e.u,
                    v: e.v,
                    scp: e.scp,
                });
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn bonds_per_link(&self) -> usize {
        self.bonds_per_link
    }

    pub fn coords(&self) -> Option<&[(i64, i64)]> {
        self.coords.as_deref()
    }

    pub fn sublattice(&self) -> Option<&[Sublattice]> {
        self.sublattice.as_deref()
    }

    pub fn scps_assigned(&self) -> bool {
        self.scps_assigned
    }

    /// Number of distinct node pairs joined by at least one edge.
    pub fn link_count(&self) -> usize {
        let mut keys: Vec<(usize, usize)> = self.edges.iter().map(Edge::key).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.len()
    }

    /// Distinct neighbours of every node, sorted.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Every edge treated as open; handy for connectivity checks of the bare
    /// topology.
    pub fn as_classical(&self) -> ClassicalGraph {
        ClassicalGraph {
            node_count: self.node_count,
            open_edges: self.edges.iter().map(|e| (e.u, e.v)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn custom_network_validation() {
        assert!(QuantumNetwork::new(3, vec![Edge::new(0, 1, 0.5), Edge::new(1, 2, 1.0)]).is_ok());
        assert_eq!(
            QuantumNetwork::new(2, vec![Edge::new(1, 1, 0.5)]),
            Err(TopoError::SelfLoop(1))
        );
        assert!(matches!(
            QuantumNetwork::new(2, vec![Edge::new(0, 2, 0.5)]),
            Err(TopoError::NodeOutOfRange { .. })
        ));
        assert!(matches!(
            QuantumNetwork::new(2, vec![Edge::new(0, 1, 1.5)]),
            Err(TopoError::ScpOutOfRange { .. })
        ));
    }

    #[test]
    fn parallel_edges_count_as_one_link() {
        let net = QuantumNetwork::new(
            3,
            vec![Edge::new(0, 1, 0.2), Edge::new(1, 0, 0.7), Edge::new(1, 2, 0.1)],
        )
        .unwrap();
        assert_eq!(net.edge_count(), 3);
        assert_eq!(net.link_count(), 2);
        assert_eq!(net.neighbors()[1], vec![0, 2]);
    }

    #[test]
    fn topology_names_round_trip() {
        for t in [
            Topology::Square,
            Topology::Honeycomb,
            Topology::Triangular,
            Topology::ErdosRenyi,
            Topology::WattsStrogatz,
            Topology::Custom,
        ] {
            assert_eq!(t.as_str().parse::<Topology>().unwrap(), t);
        }
        assert!("hexagonal".parse::<Topology>().is_err());
    }
}
