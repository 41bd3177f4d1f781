//! CEP on Erdős–Rényi and Watts–Strogatz graphs, and a network written to
//! and read back from JSON.
//!
//! cargo run --release --example random_graphs

use entperc::proto::{assign_scps, cep};
use entperc::rng::seeded;
use entperc::topo::{make_erdos_renyi, make_watts_strogatz};
use entperc::{MultiedgeMode, QuantumNetwork, ScpDistribution};

fn main() {
    let mut rng = seeded(11);
    let law: ScpDistribution = "uniform:a=0.3,b=0.9".parse().unwrap();
    let graphs = [
        ("erdos_renyi n=2000 p=0.002", make_erdos_renyi(2000, 0.002, 5).unwrap()),
        (
            "watts_strogatz n=2000 k=4 beta=0.1",
            make_watts_strogatz(2000, 4, 0.1, 5).unwrap(),
        ),
    ];
    for (name, graph) in graphs {
        let net = assign_scps(&graph, &law, MultiedgeMode::Independent, &mut rng);
        let out = cep(&net, &mut rng);
        println!(
            "{name}: {} edges, {} converted, largest cluster {} ({:.3})",
            net.edge_count(),
            out.edges_converted,
            out.report.largest_size,
            out.report.percolation_strength
        );
    }

    let small = assign_scps(
        &make_watts_strogatz(8, 2, 0.0, 1).unwrap(),
        &law,
        MultiedgeMode::Independent,
        &mut rng,
    );
    let json = small.to_json();
    println!("{json}");
    assert_eq!(QuantumNetwork::from_json(&json).unwrap(), small);
}
