//! Double-bond honeycomb: classical percolation against the q-swap protocol
//! that turns the lattice into a triangular one.
//!
//! cargo run --release --example honeycomb_cep_vs_qep

use entperc::mc::{
    crossover_width, predict, run_sweep, triangular_threshold, DistFamily, Grid, Protocol, SweepConfig, TopologySpec,
};
use entperc::{MultiedgeMode, Topology};

fn sweep(protocol: Protocol, widths: Vec<f64>) -> entperc::mc::SweepResult {
    run_sweep(&SweepConfig {
        topology: TopologySpec::Honeycomb { cells: 40, bonds: 2 },
        protocol,
        family: DistFamily::Uniform,
        mode: MultiedgeMode::Independent,
        p_grid: Grid::new(0.30, 0.50, 0.005),
        widths,
        trials: 60,
        master_seed: 7,
    })
    .expect("valid sweep")
}

fn main() {
    let cep = sweep(Protocol::Cep, vec![0.0, 0.4]);
    let qep = sweep(Protocol::Qep, vec![0.0, 0.3, 0.6]);
    for (name, res) in [("CEP", &cep), ("QEP", &qep)] {
        for t in &res.thresholds {
            println!(
                "{name} w={:.1}: simulated {:?}, analytic {:.4}",
                t.width,
                t.estimate,
                t.prediction.unwrap_or(f64::NAN)
            );
        }
    }
    let cep_level = predict(Topology::Honeycomb, 2, Protocol::Cep, 0.0).unwrap().value;
    let w = crossover_width(cep_level, triangular_threshold()).unwrap();
    println!("QEP wins for widths below {w:.4}");
}
