//! q-swaps and the honeycomb to triangular transformation.
//!
//! A q-swap at `center` with `q` neighbours, each attached by two bonds,
//! performs entanglement swaps that replace the star by the cycle
//! `n_0 - n_1 - ... - n_{q-1} - n_0` (neighbours in ascending id order) and
//! erase the center. Cycle edge `k` joins `n_k` and `n_{k+1}` and consumes one
//! bond of each; its SCP is the minimum of the two. Each neighbour gives its
//! first bond to the lower-indexed of its two cycle edges. With single bonds
//! only `q = 2` is allowed, which is a plain swap.

use std::collections::BTreeMap;

use super::ProtoError;
use crate::states::{swap_scp, Scp};
use crate::topo::{Edge, QuantumNetwork, Sublattice, Topology};

/// Which bond of a neighbour feeds which cycle edge.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BondPairing {
    /// Stored edge order.
    #[default]
    StoredOrder,
    /// Experimental: each neighbour's stronger bond goes to its
    /// lower-indexed cycle edge.
    Sorted,
}

#[derive(Debug, Clone, Copy)]
struct WorkEdge {
    u: usize,
    v: usize,
    scp: f64,
    /// Original edges whose minimum this edge carries.
    source: [usize; 2],
}

/// Mutable multigraph for sequences of swaps.
struct WorkingGraph {
    edges: Vec<Option<WorkEdge>>,
    incident: Vec<Vec<usize>>,
    alive: Vec<bool>,
}

impl WorkingGraph {
    fn new(net: &QuantumNetwork) -> Self {
        let mut incident = vec![Vec::new(); net.node_count()];
        let edges = net
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                incident[e.u].push(i);
                incident[e.v].push(i);
                Some(WorkEdge {
                    u: e.u,
                    v: e.v,
                    scp: e.scp,
                    source: [i, i],
                })
            })
            .collect();
        Self {
            edges,
            incident,
            alive: vec![true; net.node_count()],
        }
    }

    fn add_edge(&mut self, e: WorkEdge) {
        let id = self.edges.len();
        self.incident[e.u].push(id);
        self.incident[e.v].push(id);
        self.edges.push(Some(e));
    }

    /// Live incident edges grouped by neighbour, ascending.
    fn star(&self, center: usize) -> BTreeMap<usize, Vec<usize>> {
        let mut by_neighbor: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &id in &self.incident[center] {
            if let Some(e) = &self.edges[id] {
                let other = if e.u == center { e.v } else { e.u };
                by_neighbor.entry(other).or_default().push(id);
            }
        }
        by_neighbor
    }

    fn delete_node(&mut self, center: usize) {
        for id in std::mem::take(&mut self.incident[center]) {
            self.edges[id] = None;
        }
        self.alive[center] = false;
    }

    fn q_swap(&mut self, center: usize, pairing: BondPairing) -> Result<(), ProtoError> {
        let star = self.star(center);
        let q = star.len();
        if q < 2 {
            return Err(ProtoError::TooFewNeighbors { center, q });
        }
        let multiplicities: Vec<usize> = star.values().map(Vec::len).collect();
        let m = multiplicities[0];
        if multiplicities.iter().any(|&x| x != m) {
            return Err(ProtoError::InconsistentMultiplicity { center, multiplicities });
        }
        let neighbors: Vec<usize> = star.keys().copied().collect();
        let mut bonds: Vec<Vec<WorkEdge>> = star
            .values()
            .map(|ids| ids.iter().map(|&id| self.edges[id].expect("live edge")).collect())
            .collect();
        if pairing == BondPairing::Sorted {
            for b in &mut bonds {
                b.sort_by(|x, y| y.scp.total_cmp(&x.scp));
            }
        }
        let joined = |a: WorkEdge, b: WorkEdge, u: usize, v: usize| WorkEdge {
            u,
            v,
            scp: swap_scp(Scp::clamped(a.scp), Scp::clamped(b.scp)).value(),
            source: [a.source[0], b.source[0]],
        };
        let new_edges: Vec<WorkEdge> = match (m, q) {
            (1, 2) => vec![joined(bonds[0][0], bonds[1][0], neighbors[0], neighbors[1])],
            (2, _) => (0..q)
                .map(|k| {
                    let j = (k + 1) % q;
                    // n_0 uses its first bond on edge 0; n_k (k >= 1) uses its
                    // second bond on edge k. On the far side, n_j uses its
                    // first bond on edge j - 1, except n_0 which closes the
                    // cycle with its second bond.
                    let from_k = if k == 0 { bonds[0][0] } else { bonds[k][1] };
                    let from_j = if j == 0 { bonds[0][1] } else { bonds[j][0] };
                    joined(from_k, from_j, neighbors[k], neighbors[j])
                })
                .collect(),
            _ => return Err(ProtoError::UnsupportedStar { center, q, m }),
        };
        self.delete_node(center);
        for e in new_edges {
            self.add_edge(e);
        }
        Ok(())
    }

    /// Live nodes renumbered densely, plus the live edges in creation order.
    fn compact(&self) -> (Vec<usize>, Vec<WorkEdge>) {
        let mut new_id = vec![usize::MAX; self.alive.len()];
        let mut kept = Vec::new();
        for (old, _) in self.alive.iter().enumerate().filter(|(_, a)| **a) {
            new_id[old] = kept.len();
            kept.push(old);
        }
        let edges = self
            .edges
            .iter()
            .flatten()
            .map(|e| WorkEdge {
                u: new_id[e.u],
                v: new_id[e.v],
                ..*e
            })
            .collect();
        (kept, edges)
    }
}

fn pick<T: Copy>(values: Option<&[T]>, kept: &[usize]) -> Option<Vec<T>> {
    values.map(|v| kept.iter().map(|&i| v[i]).collect())
}

fn rebuild(
    source: &QuantumNetwork,
    kept: &[usize],
    edges: Vec<WorkEdge>,
    topology: Topology,
    bonds_per_link: usize,
    keep_sublattice: bool,
) -> Result<QuantumNetwork, ProtoError> {
    let edges = edges.into_iter().map(|e| Edge::new(e.u, e.v, e.scp)).collect();
    let assigned = source.scps_assigned();
    let mut net = QuantumNetwork::new(kept.len(), edges)?.with_topology(topology, bonds_per_link);
    if let Some(c) = pick(source.coords(), kept) {
        net = net.with_coords(c)?;
    }
    if keep_sublattice {
        if let Some(s) = pick(source.sublattice(), kept) {
            net = net.with_sublattice(s)?;
        }
    }
    net.set_scps_assigned(assigned);
    Ok(net)
}

/// Applies one q-swap at `center` and removes it; node ids above `center`
/// shift down by one.
pub fn q_swap(network: &QuantumNetwork, center: usize) -> Result<QuantumNetwork, ProtoError> {
    q_swap_with(network, center, BondPairing::StoredOrder)
}

pub fn q_swap_with(
    network: &QuantumNetwork,
    center: usize,
    pairing: BondPairing,
) -> Result<QuantumNetwork, ProtoError> {
    if center >= network.node_count() {
        return Err(ProtoError::NodeOutOfRange {
            center,
            node_count: network.node_count(),
        });
    }
    let mut g = WorkingGraph::new(network);
    g.q_swap(center, pairing)?;
    let (kept, edges) = g.compact();
    rebuild(network, &kept, edges, Topology::Custom, network.bonds_per_link(), true)
}

fn check_honeycomb(network: &QuantumNetwork) -> Result<&[Sublattice], ProtoError> {
    if network.topology() != Topology::Honeycomb {
        return Err(ProtoError::NotHoneycomb(format!("topology is {}", network.topology())));
    }
    if network.bonds_per_link() != 2 {
        return Err(ProtoError::NotHoneycomb(format!(
            "{} bond(s) per link",
            network.bonds_per_link()
        )));
    }
    network
        .sublattice()
        .ok_or_else(|| ProtoError::NotHoneycomb("missing sublattice labels".into()))
}

fn run_honeycomb_swaps(network: &QuantumNetwork, pairing: BondPairing) -> Result<WorkingGraph, ProtoError> {
    let labels = check_honeycomb(network)?;
    let mut g = WorkingGraph::new(network);
    for (node, _) in labels.iter().enumerate().filter(|(_, l)| **l == Sublattice::B) {
        // B nodes only touch A nodes, so earlier swaps never change a later
        // B node's star.
        if g.star(node).len() >= 2 {
            g.q_swap(node, pairing)?;
        } else {
            g.delete_node(node);
        }
    }
    Ok(g)
}

/// Swaps every B node of a double-bond honeycomb in ascending id order
/// (3-swaps in the bulk, plain swaps of the double bonds on the boundary,
/// dangling B nodes dropped). The surviving A nodes form a triangular
/// lattice; each new edge carries the minimum of two original bonds.
pub fn qep_honeycomb(network: &QuantumNetwork) -> Result<QuantumNetwork, ProtoError> {
    qep_honeycomb_with(network, BondPairing::StoredOrder)
}

pub fn qep_honeycomb_with(network: &QuantumNetwork, pairing: BondPairing) -> Result<QuantumNetwork, ProtoError> {
    let g = run_honeycomb_swaps(network, pairing)?;
    let (kept, edges) = g.compact();
    rebuild(network, &kept, edges, Topology::Triangular, 1, false)
}

/// The honeycomb QEP rewrite with stored-order pairing reduced to index
/// arithmetic: output edge `k` joins `nodes[k]` with SCP
/// `min(scp[first], scp[second])` of the input edges. Build once per
/// lattice, apply to every SCP assignment.
#[derive(Debug, Clone)]
pub struct QepPlan {
    node_count: usize,
    edges: Vec<(usize, usize, usize, usize)>,
    template: QuantumNetwork,
}

impl QepPlan {
    pub fn new(honeycomb: &QuantumNetwork) -> Result<Self, ProtoError> {
        let g = run_honeycomb_swaps(honeycomb, BondPairing::StoredOrder)?;
        let (kept, edges) = g.compact();
        let plan_edges = edges.iter().map(|e| (e.u, e.v, e.source[0], e.source[1])).collect();
        let template = rebuild(honeycomb, &kept, edges, Topology::Triangular, 1, false)?;
        Ok(Self {
            node_count: kept.len(),
            edges: plan_edges,
            template,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// `honeycomb` must be the lattice the plan was built from, with any SCPs.
    pub fn apply(&self, honeycomb: &QuantumNetwork) -> QuantumNetwork {
        let mut out = self.template.clone();
        self.apply_into(honeycomb, &mut out);
        out
    }

    /// Overwrites the SCPs of a network previously produced by [`apply`](Self::apply).
    pub fn apply_into(&self, honeycomb: &QuantumNetwork, out: &mut QuantumNetwork) {
        let src = honeycomb.edges();
        for (dst, &(_, _, a, b)) in out.edges_mut().iter_mut().zip(&self.edges) {
            dst.scp = src[a].scp.min(src[b].scp);
        }
        out.set_scps_assigned(honeycomb.scps_assigned());
    }
}
