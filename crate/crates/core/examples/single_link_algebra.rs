//! One link at a time: SCP, optimal conversion, the two-outcome POVM that
//! realises it, and swapping.
//!
//! cargo run --example single_link_algebra

use entperc::states::{majorizes, procrustean_oracle, scp, swap_scp, vidal_probability};
use entperc::{QubitPairState, SchmidtVector};

fn main() {
    let state = QubitPairState::new(0.8, 0.2).unwrap();
    let singlet = SchmidtVector::maximally_entangled(2);
    println!("SCP of (0.8, 0.2): {}", scp(&state).value());
    println!(
        "conversion probability to a singlet: {}",
        vidal_probability(&state.schmidt(), &singlet)
    );

    let outcome = procrustean_oracle(&state).unwrap();
    println!("POVM M1 = {:?}", outcome.m1);
    println!("POVM M2 = {:?}", outcome.m2);
    println!(
        "success {:.3} -> Schmidt {:?}, failure {:.3} leaves a product state: {}",
        outcome.p_success,
        outcome.success_state.coefficients(),
        outcome.p_failure,
        outcome.failure_is_product
    );

    let a = SchmidtVector::new(vec![0.5, 0.3, 0.2]).unwrap();
    let b = SchmidtVector::new(vec![0.7, 0.2, 0.1]).unwrap();
    println!("(0.5,0.3,0.2) -> (0.7,0.2,0.1) deterministic: {}", majorizes(&b, &a));
    println!("reverse succeeds with probability {:.3}", vidal_probability(&b, &a));

    let p = scp(&QubitPairState::from_lambda2(0.3).unwrap());
    let q = scp(&QubitPairState::from_lambda2(0.1).unwrap());
    println!(
        "swapping links with SCP {} and {}: {}",
        p.value(),
        q.value(),
        swap_scp(p, q).value()
    );
}
