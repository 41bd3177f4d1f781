//! CEP on a square lattice with uniformly distributed SCPs: the curves for
//! different widths fall on top of each other and all rise near 0.5.
//!
//! cargo run --release --example square_width_independence

use entperc::mc::{run_sweep, DistFamily, Grid, Protocol, SweepConfig, TopologySpec};
use entperc::MultiedgeMode;

fn main() {
    let widths = vec![0.0, 0.2, 0.4, 0.6, 0.8];
    let cfg = SweepConfig {
        topology: TopologySpec::Square { side: 60, bonds: 1 },
        protocol: Protocol::Cep,
        family: DistFamily::Uniform,
        mode: MultiedgeMode::Independent,
        p_grid: Grid::new(0.3, 0.7, 0.02),
        widths: widths.clone(),
        trials: 40,
        master_seed: 1,
    };
    let res = run_sweep(&cfg).expect("valid sweep");

    print!("p_mean");
    for w in &widths {
        print!("\tw={w}");
    }
    println!();
    for p in cfg.p_grid.values() {
        print!("{p:.2}");
        for &w in &widths {
            match res.rows.iter().find(|r| r.width == w && r.p_mean == p) {
                Some(r) => print!("\t{:.3}", r.p_inf_mean),
                None => print!("\t-"),
            }
        }
        println!();
    }
    for t in &res.thresholds {
        println!(
            "w={}: estimate {:?}, prediction {:?}",
            t.width, t.estimate, t.prediction
        );
    }
}
