//! Network JSON:
//!
//! ```json
//! {"node_count": 4, "topology": "square",
//!  "edges": [[0, 1, 0.5], ...],
//!  "meta": {"bonds_per_link": 1, "scps_assigned": true,
//!           "coords": [[0, 0], ...], "sublattice": "ABBA..."}}
//! ```
//!
//! `coords` and `sublattice` are optional. Unknown `meta` keys are ignored.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Edge, QuantumNetwork, Sublattice, TopoError, Topology};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub node_count: usize,
    pub topology: String,
    pub edges: Vec<(usize, usize, f64)>,
    #[serde(default)]
    pub meta: NetworkMeta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkMeta {
    #[serde(default = "one")]
    pub bonds_per_link: usize,
    #[serde(default = "yes")]
    pub scps_assigned: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<(i64, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sublattice: Option<String>,
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

impl Default for NetworkMeta {
    fn default() -> Self {
        Self {
            bonds_per_link: 1,
            scps_assigned: true,
            coords: None,
            sublattice: None,
        }
    }
}

impl From<&QuantumNetwork> for NetworkFile {
    fn from(net: &QuantumNetwork) -> Self {
        NetworkFile {
            node_count: net.node_count(),
            topology: net.topology().as_str().to_string(),
            edges: net.edges().iter().map(|e| (e.u, e.v, e.scp)).collect(),
            meta: NetworkMeta {
                bonds_per_link: net.bonds_per_link(),
                scps_assigned: net.scps_assigned(),
                coords: net.coords().map(<[_]>::to_vec),
                sublattice: net.sublattice().map(|s| {
                    s.iter()
                        .map(|l| match l {
                            Sublattice::A => 'A',
                            Sublattice::B => 'B',
                        })
                        .collect()
                }),
            },
        }
    }
}

impl TryFrom<NetworkFile> for QuantumNetwork {
    type Error = TopoError;

    fn try_from(file: NetworkFile) -> Result<Self, Self::Error> {
        let topology: Topology = file.topology.parse()?;
        let edges = file.edges.into_iter().map(|(u, v, p)| Edge::new(u, v, p)).collect();
        let mut net = QuantumNetwork::new(file.node_count, edges)?.with_topology(topology, file.meta.bonds_per_link);
        net.set_scps_assigned(file.meta.scps_assigned);
        if let Some(coords) = file.meta.coords {
            net = net.with_coords(coords)?;
        }
        if let Some(labels) = file.meta.sublattice {
            let labels = labels
                .chars()
                .map(|c| match c {
                    'A' | 'a' => Ok(Sublattice::A),
                    'B' | 'b' => Ok(Sublattice::B),
                    other => Err(TopoError::Format(format!("bad sublattice label {other:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            net = net.with_sublattice(labels)?;
        }
        Ok(net)
    }
}

impl QuantumNetwork {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&NetworkFile::from(self)).expect("network serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, TopoError> {
        let file: NetworkFile = serde_json::from_str(s).map_err(|e| TopoError::Format(e.to_string()))?;
        file.try_into()
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        serde_json::to_writer(&mut w, &NetworkFile::from(self))?;
        w.flush()
    }

    pub fn read_json<R: Read>(mut r: R) -> Result<Self, TopoError> {
        let mut s = String::new();
        r.read_to_string(&mut s).map_err(|e| TopoError::Format(e.to_string()))?;
        Self::from_json(&s)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TopoError> {
        let f = std::fs::File::open(path.as_ref())
            .map_err(|e| TopoError::Format(format!("{}: {e}", path.as_ref().display())))?;
        Self::read_json(std::io::BufReader::new(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topo::{make_honeycomb, make_square};

    #[test]
    fn field_names_are_fixed() {
        let net = QuantumNetwork::new(2, vec![Edge::new(0, 1, 0.25)]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&net.to_json()).unwrap();
        assert_eq!(v["node_count"], 2);
        assert_eq!(v["topology"], "custom");
        assert_eq!(v["edges"], serde_json::json!([[0, 1, 0.25]]));
        assert!(v["meta"].is_object());
    }

    #[test]
    fn lattice_round_trip_keeps_metadata() {
        let net = make_honeycomb(3, 2).unwrap();
        let back = QuantumNetwork::from_json(&net.to_json()).unwrap();
        assert_eq!(back, net);
        let net = make_square(4, 1).unwrap();
        assert_eq!(QuantumNetwork::from_json(&net.to_json()).unwrap(), net);
    }

    #[test]
    fn minimal_file_is_accepted() {
        let net = QuantumNetwork::from_json(
            r#"{"node_count": 3, "topology": "custom", "edges": [[0, 1, 1.0], [1, 2, 0.5]], "meta": {"note": "x"}}"#,
        )
        .unwrap();
        assert_eq!(net.edge_count(), 2);
        assert!(net.scps_assigned());
    }

    #[test]
    fn invalid_files_are_rejected() {
        assert!(
            QuantumNetwork::from_json(r#"{"node_count": 2, "topology": "custom", "edges": [[0, 0, 0.5]]}"#).is_err()
        );
        assert!(QuantumNetwork::from_json(r#"{"node_count": 2, "topology": "blob", "edges": []}"#).is_err());
        assert!(QuantumNetwork::from_json(r#"{"node_count": 2, "edges": []}"#).is_err());
    }
}
