//! Parallel links between the same nodes: sharing one SCP ("equal") versus
//! drawing each bond separately ("independent").
//!
//! cargo run --release --example multiedge_distillation

use entperc::dist::ScpDistribution;
use entperc::rng::seeded;
use entperc::states::{
    distill_equal, distill_independent, distill_many, double_bond_cep_threshold, separate_conversion,
};
use entperc::Scp;

fn main() {
    let p = Scp::new(0.4).unwrap();
    let q = Scp::new(0.6).unwrap();
    println!("two copies of 0.4: {:.4}", distill_equal(p, 2).value());
    println!("0.4 and 0.6 jointly: {:.4}", distill_independent(p, q).value());
    println!("0.4 and 0.6 one at a time: {:.4}", separate_conversion(p, q).value());
    println!("0.4, 0.6, 0.4: {:.4}", distill_many(&[p, q, p]).value());

    let law = ScpDistribution::uniform(0.2, 0.8).unwrap();
    let mut rng = seeded(3);
    let n = 100_000;
    let (mut eq, mut ind) = (0.0, 0.0);
    for _ in 0..n {
        let shared = Scp::clamped(law.sample(&mut rng));
        eq += distill_equal(shared, 2).value();
        let (a, b) = (Scp::clamped(law.sample(&mut rng)), Scp::clamped(law.sample(&mut rng)));
        ind += distill_independent(a, b).value();
    }
    println!(
        "Uniform(0.2, 0.8): equal {:.4}, independent {:.4}",
        eq / n as f64,
        ind / n as f64
    );

    let hc = 1.0 - 2.0 * (std::f64::consts::PI / 18.0).sin();
    println!(
        "double-bond honeycomb needs mean SCP {:.4}",
        double_bond_cep_threshold(hc).unwrap()
    );
}
