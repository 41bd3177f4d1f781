//! SCPs of Haar-random two-qubit states: density 3(1-p)^2, mean 1/4.
//!
//! cargo run --release --example haar_states

use entperc::rng::seeded;
use entperc::ScpDistribution;

fn main() {
    let law = ScpDistribution::HaarQubitPair;
    let mut rng = seeded(2024);
    let n = 200_000;
    let bins = 10;
    let mut hist = vec![0usize; bins];
    let mut sum = 0.0;
    for _ in 0..n {
        let p = law.sample(&mut rng);
        sum += p;
        hist[((p * bins as f64) as usize).min(bins - 1)] += 1;
    }
    println!("sample mean {:.4}, exact {:.4}", sum / n as f64, law.mean());
    println!("min of two Haar links: mean {:.4}", law.min_transform().mean());
    for (i, c) in hist.iter().enumerate() {
        let lo = i as f64 / bins as f64;
        let hi = lo + 1.0 / bins as f64;
        let expected = n as f64 * (law.cdf(hi) - law.cdf(lo));
        println!("[{lo:.1}, {hi:.1})  {c:>6}  expected {expected:>8.0}");
    }
}
