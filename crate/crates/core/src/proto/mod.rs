//! Entanglement percolation protocols.
//!
//! * [`assign_scps`] draws edge SCPs from a law, per link or per edge.
//! * [`cep`] converts every link to a singlet with its optimal (distilled)
//!   probability and keeps the survivors as a [`ClassicalGraph`].
//! * [`q_swap`] and [`qep_honeycomb`] rewrite the network with entanglement
//!   swaps before CEP.

mod qswap;

pub use qswap::{q_swap, q_swap_with, qep_honeycomb, qep_honeycomb_with, BondPairing, QepPlan};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dist::ScpDistribution;
use crate::states::{distill_equal, distill_many_raw, Scp};
use crate::topo::{components, ClassicalGraph, ComponentReport, DisjointSet, QuantumNetwork, TopoError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProtoError {
    #[error("network SCPs were never assigned")]
    Unassigned,
    #[error("QEP needs a double-bond honeycomb with sublattice labels: {0}")]
    NotHoneycomb(String),
    #[error("node {center} is outside 0..{node_count}")]
    NodeOutOfRange { center: usize, node_count: usize },
    #[error("q-swap at node {center} needs at least 2 neighbours, found {q}")]
    TooFewNeighbors { center: usize, q: usize },
    #[error("q-swap at node {center}: neighbours have different multiplicities {multiplicities:?}")]
    InconsistentMultiplicity { center: usize, multiplicities: Vec<usize> },
    #[error("q-swap at node {center}: multiplicity {m} with {q} neighbours cannot form a cycle")]
    UnsupportedStar { center: usize, q: usize, m: usize },
    #[error(transparent)]
    Topo(#[from] TopoError),
}

/// How parallel edges of one link get their SCPs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiedgeMode {
    /// One draw per link, copied to all of its parallel edges.
    Equal,
    /// One draw per edge.
    Independent,
}

impl std::str::FromStr for MultiedgeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "equal" => Ok(Self::Equal),
            "independent" => Ok(Self::Independent),
            other => Err(format!(
                "unknown multiedge mode {other:?} (expected equal or independent)"
            )),
        }
    }
}

impl std::fmt::Display for MultiedgeMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Equal => "equal",
            Self::Independent => "independent",
        })
    }
}

/// Edges grouped by unordered node pair. Links are ordered by `(min, max)`
/// node id; edges inside a link keep their stored order.
#[derive(Debug, Clone)]
pub struct LinkIndex {
    /// `None` when the edge list is already grouped and sorted.
    order: Option<Vec<u32>>,
    links: Vec<Link>,
}

#[derive(Debug, Clone, Copy)]
struct Link {
    u: u32,
    v: u32,
    start: u32,
    end: u32,
}

impl LinkIndex {
    pub fn new(network: &QuantumNetwork) -> Self {
        let edges = network.edges();
        let sorted = edges.windows(2).all(|w| w[0].key() <= w[1].key());
        let order: Option<Vec<u32>> = if sorted {
            None
        } else {
            let mut idx: Vec<u32> = (0..edges.len() as u32).collect();
            idx.sort_by_key(|&i| (edges[i as usize].key(), i));
            Some(idx)
        };
        let at = |pos: usize| match &order {
            Some(o) => o[pos] as usize,
            None => pos,
        };
        let mut links = Vec::new();
        let mut start = 0;
        while start < edges.len() {
            let key = edges[at(start)].key();
            let mut end = start + 1;
            while end < edges.len() && edges[at(end)].key() == key {
                end += 1;
            }
            links.push(Link {
                u: key.0 as u32,
                v: key.1 as u32,
                start: start as u32,
                end: end as u32,
            });
            start = end;
        }
        Self { order, links }
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    #[inline]
    fn edge_at(&self, pos: u32) -> usize {
        match &self.order {
            Some(o) => o[pos as usize] as usize,
            None => pos as usize,
        }
    }

    /// Edge indices of every link, in link order.
    pub fn groups(&self) -> impl Iterator<Item = ((usize, usize), Vec<usize>)> + '_ {
        self.links.iter().map(move |l| {
            (
                (l.u as usize, l.v as usize),
                (l.start..l.end).map(|p| self.edge_at(p)).collect(),
            )
        })
    }
}

/// Draws SCPs for every edge of `network`; topology is unchanged.
pub fn assign_scps<R: Rng + ?Sized>(
    network: &QuantumNetwork,
    dist: &ScpDistribution,
    mode: MultiedgeMode,
    rng: &mut R,
) -> QuantumNetwork {
    let mut out = network.clone();
    let index = LinkIndex::new(network);
    assign_scps_in_place(&mut out, &index, dist, mode, rng);
    out
}

/// In-place variant for callers that reuse a [`LinkIndex`] across trials.
pub fn assign_scps_in_place<R: Rng + ?Sized>(
    network: &mut QuantumNetwork,
    index: &LinkIndex,
    dist: &ScpDistribution,
    mode: MultiedgeMode,
    rng: &mut R,
) {
    match mode {
        MultiedgeMode::Independent => {
            for e in network.edges_mut() {
                e.scp = dist.sample(rng);
            }
        }
        MultiedgeMode::Equal => {
            let edges = network.edges_mut();
            for l in &index.links {
                let p = dist.sample(rng);
                for pos in l.start..l.end {
                    edges[index.edge_at(pos)].scp = p;
                }
            }
        }
    }
    network.set_scps_assigned(true);
}

/// Optimal probability of extracting one singlet from the parallel edges of
/// a link.
pub fn link_conversion_probability(scps: &[f64]) -> f64 {
    match scps {
        [] => 0.0,
        [p] => *p,
        [first, rest @ ..] if rest.iter().all(|p| p == first) => {
            distill_equal(Scp::clamped(*first), scps.len() as u32).value()
        }
        _ => distill_many_raw(scps.iter().copied()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolOutcome {
    pub open_graph: ClassicalGraph,
    pub report: ComponentReport,
    /// Links that were put through conversion (parallel edges count once).
    pub edges_attempted: usize,
    /// Links that became singlets.
    pub edges_converted: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CepOptions {
    /// Refuse networks whose SCPs were never assigned instead of treating
    /// them as 0.
    pub strict: bool,
}

/// Classical entanglement percolation with default options.
pub fn cep<R: Rng + ?Sized>(network: &QuantumNetwork, rng: &mut R) -> ProtocolOutcome {
    cep_with(network, rng, CepOptions::default()).expect("non-strict CEP cannot fail")
}

pub fn cep_with<R: Rng + ?Sized>(
    network: &QuantumNetwork,
    rng: &mut R,
    options: CepOptions,
) -> Result<ProtocolOutcome, ProtoError> {
    if options.strict && !network.scps_assigned() {
        return Err(ProtoError::Unassigned);
    }
    let index = LinkIndex::new(network);
    let mut open_edges = Vec::new();
    convert_links(network, &index, rng, |u, v| open_edges.push((u, v)));
    let open_graph = ClassicalGraph {
        node_count: network.node_count(),
        open_edges,
    };
    let report = components(&open_graph);
    Ok(ProtocolOutcome {
        edges_attempted: index.link_count(),
        edges_converted: open_graph.open_edges.len(),
        open_graph,
        report,
    })
}

/// Summary of one CEP run without materialising the open graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CepSummary {
    pub largest_size: usize,
    pub percolation_strength: f64,
    pub edges_attempted: usize,
    pub edges_converted: usize,
}

/// Same random decisions as [`cep`], returning only the cluster summary.
pub fn cep_summary<R: Rng + ?Sized>(network: &QuantumNetwork, index: &LinkIndex, rng: &mut R) -> CepSummary {
    let n = network.node_count();
    let mut dsu = DisjointSet::new(n);
    let mut converted = 0;
    convert_links(network, index, rng, |u, v| {
        converted += 1;
        dsu.union(u, v);
    });
    let largest = dsu.largest();
    CepSummary {
        largest_size: largest,
        percolation_strength: if n == 0 { 0.0 } else { largest as f64 / n as f64 },
        edges_attempted: index.link_count(),
        edges_converted: converted,
    }
}

fn convert_links<R: Rng + ?Sized>(
    network: &QuantumNetwork,
    index: &LinkIndex,
    rng: &mut R,
    mut on_open: impl FnMut(usize, usize),
) {
    let edges = network.edges();
    let mut scratch = Vec::with_capacity(4);
    for l in &index.links {
        let q = if l.end - l.start == 1 {
            edges[index.edge_at(l.start)].scp
        } else {
            scratch.clear();
            scratch.extend((l.start..l.end).map(|p| edges[index.edge_at(p)].scp));
            link_conversion_probability(&scratch)
        };
        if rng.random::<f64>() < q {
            on_open(l.u as usize, l.v as usize);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use crate::topo::{make_honeycomb, make_square, make_triangular, Edge};

    fn constant(p: f64) -> ScpDistribution {
        ScpDistribution::degenerate(p).unwrap()
    }

    #[test]
    fn degenerate_assignment() {
        let net = make_honeycomb(3, 2).unwrap();
        for mode in [MultiedgeMode::Equal, MultiedgeMode::Independent] {
            let out = assign_scps(&net, &constant(0.37), mode, &mut seeded(1));
            assert!(out.edges().iter().all(|e| e.scp == 0.37));
            assert!(out.scps_assigned());
            assert_eq!(out.node_count(), net.node_count());
            assert!(out.edges().iter().zip(net.edges()).all(|(a, b)| a.key() == b.key()));
        }
    }

    #[test]
    fn equal_mode_copies_within_link() {
        let net = make_square(6, 2).unwrap();
        let u = ScpDistribution::uniform(0.0, 1.0).unwrap();
        let out = assign_scps(&net, &u, MultiedgeMode::Equal, &mut seeded(2));
        for (_, idx) in LinkIndex::new(&out).groups() {
            assert_eq!(idx.len(), 2);
            assert_eq!(out.edges()[idx[0]].scp, out.edges()[idx[1]].scp);
        }
        let out = assign_scps(&net, &u, MultiedgeMode::Independent, &mut seeded(2));
        let differing = LinkIndex::new(&out)
            .groups()
            .filter(|(_, idx)| out.edges()[idx[0]].scp != out.edges()[idx[1]].scp)
            .count();
        assert_eq!(differing, out.link_count());
    }

    #[test]
    fn equal_mode_handles_unsorted_edges() {
        let net = QuantumNetwork::new(
            3,
            vec![Edge::new(1, 2, 0.0), Edge::new(0, 1, 0.0), Edge::new(2, 1, 0.0)],
        )
        .unwrap();
        let out = assign_scps(
            &net,
            &ScpDistribution::uniform(0.0, 1.0).unwrap(),
            MultiedgeMode::Equal,
            &mut seeded(3),
        );
        assert_eq!(out.edges()[0].scp, out.edges()[2].scp);
        assert_ne!(out.edges()[0].scp, out.edges()[1].scp);
    }

    #[test]
    fn independent_mode_mean() {
        let net = make_square(224, 1).unwrap(); // 99 904 edges
        let out = assign_scps(
            &net,
            &ScpDistribution::uniform(0.0, 1.0).unwrap(),
            MultiedgeMode::Independent,
            &mut seeded(4),
        );
        let mean = out.edges().iter().map(|e| e.scp).sum::<f64>() / out.edge_count() as f64;
        assert!((mean - 0.5).abs() < 0.005, "{mean}");
    }

    #[test]
    fn cep_extremes() {
        let net = make_square(12, 1).unwrap();
        let ones = assign_scps(&net, &constant(1.0), MultiedgeMode::Independent, &mut seeded(0));
        let o = cep(&ones, &mut seeded(1));
        assert_eq!(o.edges_converted, net.link_count());
        assert_eq!(o.report.percolation_strength, 1.0);

        let zeros = assign_scps(&net, &constant(0.0), MultiedgeMode::Independent, &mut seeded(0));
        let o = cep(&zeros, &mut seeded(1));
        assert_eq!(o.edges_converted, 0);
        assert_eq!(o.report.percolation_strength, 1.0 / 144.0);
        assert!(o.edges_converted <= o.edges_attempted);
    }

    #[test]
    fn strict_mode_refuses_unassigned() {
        let net = make_square(4, 1).unwrap();
        assert_eq!(
            cep_with(&net, &mut seeded(0), CepOptions { strict: true }),
            Err(ProtoError::Unassigned)
        );
        let o = cep(&net, &mut seeded(0));
        assert_eq!(o.edges_converted, 0);
    }

    #[test]
    fn summary_matches_full_outcome() {
        let net = make_triangular(20).unwrap();
        let net = assign_scps(
            &net,
            &ScpDistribution::uniform(0.1, 0.6).unwrap(),
            MultiedgeMode::Independent,
            &mut seeded(8),
        );
        let index = LinkIndex::new(&net);
        for seed in 0..10 {
            let full = cep(&net, &mut seeded(seed));
            let fast = cep_summary(&net, &index, &mut seeded(seed));
            assert_eq!(full.report.largest_size, fast.largest_size);
            assert_eq!(full.edges_converted, fast.edges_converted);
            assert_eq!(full.report.percolation_strength, fast.percolation_strength);
        }
    }

    #[test]
    fn link_probability_rules() {
        assert_eq!(link_conversion_probability(&[0.3]), 0.3);
        assert!((link_conversion_probability(&[0.4, 0.4]) - 0.72).abs() < 1e-12);
        assert!((link_conversion_probability(&[0.4, 0.6]) - 0.88).abs() < 1e-12);
        assert_eq!(link_conversion_probability(&[1.0, 0.3]), 1.0);
        assert_eq!(link_conversion_probability(&[]), 0.0);
    }

    #[test]
    fn open_fraction_is_bernoulli_of_the_mean() {
        // Single-bond links with SCP ~ D open with probability E[D].
        let net = make_square(224, 1).unwrap();
        for d in [
            ScpDistribution::uniform(0.1, 0.9).unwrap(),
            ScpDistribution::HaarQubitPair,
            ScpDistribution::bimodal(0.2, 0.8, 0.3).unwrap(),
        ] {
            let mut rng = seeded(21);
            let assigned = assign_scps(&net, &d, MultiedgeMode::Independent, &mut rng);
            let o = cep(&assigned, &mut rng);
            let n = o.edges_attempted as f64;
            let frac = o.edges_converted as f64 / n;
            let m = d.mean();
            let se = (m * (1.0 - m) / n).sqrt();
            assert!((frac - m).abs() < 3.0 * se, "{d:?}: {frac} vs {m}");
        }
    }
}
