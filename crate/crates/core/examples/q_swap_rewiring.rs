//! A q-swap replaces a star by a cycle; applied to every B site of a
//! double-bond honeycomb it yields a triangular lattice.
//!
//! cargo run --example q_swap_rewiring

use entperc::proto::{assign_scps, q_swap, qep_honeycomb};
use entperc::rng::seeded;
use entperc::topo::{make_honeycomb, Edge};
use entperc::{MultiedgeMode, QuantumNetwork, ScpDistribution};

fn main() {
    // Star with centre 0 and three double-bond arms.
    let scps = [0.9, 0.8, 0.7, 0.6, 0.5, 0.4];
    let edges: Vec<Edge> = (0..6).map(|i| Edge::new(0, 1 + i / 2, scps[i])).collect();
    let star = QuantumNetwork::new(4, edges).unwrap();
    let cycle = q_swap(&star, 0).unwrap();
    for e in cycle.edges() {
        println!("{} - {}  scp {}", e.u, e.v, e.scp);
    }

    let honeycomb = assign_scps(
        &make_honeycomb(4, 2).unwrap(),
        &ScpDistribution::degenerate(0.5).unwrap(),
        MultiedgeMode::Independent,
        &mut seeded(1),
    );
    let tri = qep_honeycomb(&honeycomb).unwrap();
    let degrees = {
        let mut d = vec![0usize; tri.node_count()];
        for e in tri.edges() {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    };
    println!(
        "honeycomb {} nodes / {} bonds -> {} {} nodes / {} edges, max degree {}",
        honeycomb.node_count(),
        honeycomb.edge_count(),
        tri.topology(),
        tri.node_count(),
        tri.edge_count(),
        degrees.iter().max().unwrap()
    );
}
