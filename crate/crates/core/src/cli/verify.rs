//! Built-in self checks. Each line compares a measured deviation against a
//! bound.

use std::collections::VecDeque;
use std::fmt;

use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::dist::ScpDistribution;
use crate::rng::{seeded, SimRng};
use crate::states::{
    distill_equal, distill_independent, double_bond_cep_threshold, majorizes, procrustean_oracle, scp,
    vidal_probability, QubitPairState, SchmidtVector, Scp,
};
use crate::topo::{components, ClassicalGraph};

pub const CHECK_NAMES: &[&str] = &["procrustean", "haar", "min2", "vidal", "unionfind", "distill"];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub passed: bool,
}

impl CheckLine {
    fn new(name: &str, measured: f64, bound: f64) -> Self {
        Self {
            name: name.to_string(),
            measured,
            bound,
            passed: measured <= bound,
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} measured {:.3e} <= bound {:.3e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.bound
        )
    }
}

/// Runs the named checks in order. With `fault`, every measurement is
/// pushed past its bound so the harness itself can be tested.
pub fn run_checks(names: &[&str], seed: u64, fault: bool) -> Vec<CheckLine> {
    let mut rng = seeded(seed);
    let mut lines = Vec::new();
    for &name in names {
        match name {
            "procrustean" => lines.extend(procrustean()),
            "haar" => lines.extend(haar(&mut rng)),
            "min2" => lines.extend(min2(&mut rng)),
            "vidal" => lines.extend(vidal(&mut rng)),
            "unionfind" => lines.extend(unionfind(&mut rng)),
            "distill" => lines.extend(distill(&mut rng)),
            other => panic!("unknown check {other}"),
        }
    }
    if fault {
        for l in &mut lines {
            *l = CheckLine::new(&l.name, l.measured + 2.0 * l.bound + 1.0, l.bound);
        }
    }
    lines
}

fn procrustean() -> Vec<CheckLine> {
    let grid = std::iter::once(0.01).chain((1..=10).map(|k| k as f64 * 0.05));
    let (mut residual, mut prob, mut state) = (0.0_f64, 0.0_f64, 0.0_f64);
    for l2 in grid {
        let o = procrustean_oracle(&QubitPairState::from_lambda2(l2).expect("valid grid")).expect("entangled");
        residual = residual.max(o.completeness_residual);
        prob = prob.max((o.p_success - 2.0 * l2).abs());
        for c in o.success_state.coefficients() {
            state = state.max((c - 0.5).abs());
        }
    }
    vec![
        CheckLine::new("procrustean.completeness", residual, 1e-12),
        CheckLine::new("procrustean.p_success", prob, 1e-12),
        CheckLine::new("procrustean.singlet", state, 1e-10),
    ]
}

const HAAR_SAMPLES: usize = 1_000_000;
const HAAR_BINS: usize = 100;

fn haar(rng: &mut SimRng) -> Vec<CheckLine> {
    let law = ScpDistribution::HaarQubitPair;
    let mut counts = vec![0u64; HAAR_BINS];
    let mut sum = 0.0;
    for _ in 0..HAAR_SAMPLES {
        let p = law.sample(rng);
        sum += p;
        let lambda2 = p / 2.0;
        let bin = ((lambda2 / 0.5) * HAAR_BINS as f64) as usize;
        counts[bin.min(HAAR_BINS - 1)] += 1;
    }
    let mean = sum / HAAR_SAMPLES as f64;
    // lambda2 has CDF 1 - (1 - 2 x)^3 on [0, 1/2].
    let cdf = |x: f64| 1.0 - (1.0 - 2.0 * x).powi(3);
    let mut chi2 = 0.0;
    for (i, &c) in counts.iter().enumerate() {
        let lo = 0.5 * i as f64 / HAAR_BINS as f64;
        let hi = 0.5 * (i + 1) as f64 / HAAR_BINS as f64;
        let expected = HAAR_SAMPLES as f64 * (cdf(hi) - cdf(lo));
        chi2 += (c as f64 - expected).powi(2) / expected;
    }
    let critical = ChiSquared::new((HAAR_BINS - 1) as f64)
        .expect("positive dof")
        .inverse_cdf(0.999);
    vec![
        CheckLine::new("haar.mean_scp", (mean - 0.25).abs(), 1e-3),
        CheckLine::new("haar.chi_square", chi2, critical),
    ]
}

fn min2(rng: &mut SimRng) -> Vec<CheckLine> {
    let law = ScpDistribution::min_of_two(ScpDistribution::Uniform { a: 0.3, b: 0.7 });
    let n = 1_000_000;
    let mean = (0..n).map(|_| law.sample(rng)).sum::<f64>() / n as f64;
    vec![
        CheckLine::new("min2.analytic_mean", (law.mean() - (0.5 - 0.4 / 6.0)).abs(), 1e-12),
        CheckLine::new("min2.empirical_mean", (mean - law.mean()).abs(), 1e-3),
    ]
}

fn random_schmidt(rng: &mut SimRng) -> SchmidtVector {
    let len = rng.random_range(1..=4);
    let weights: Vec<f64> = (0..len).map(|_| rng.random::<f64>() + 1e-12).collect();
    SchmidtVector::from_weights(weights).expect("positive weights")
}

fn vidal(rng: &mut SimRng) -> Vec<CheckLine> {
    let singlet = SchmidtVector::maximally_entangled(2);
    let mut dev = 0.0_f64;
    for i in 0..1000 {
        let l2 = 0.5 * i as f64 / 999.0;
        let s = QubitPairState::from_lambda2(l2).expect("valid grid");
        dev = dev.max((vidal_probability(&s.schmidt(), &singlet) - scp(&s).value()).abs());
    }
    let mut maj_dev = 0.0_f64;
    let mut found = 0;
    while found < 10_000 {
        let (a, b) = (random_schmidt(rng), random_schmidt(rng));
        let (source, target) = if majorizes(&b, &a) {
            (a, b)
        } else if majorizes(&a, &b) {
            (b, a)
        } else {
            continue;
        };
        found += 1;
        maj_dev = maj_dev.max(1.0 - vidal_probability(&source, &target));
    }
    vec![
        CheckLine::new("vidal.singlet_vs_scp", dev, 1e-12),
        CheckLine::new("vidal.majorization", maj_dev, 1e-12),
    ]
}

fn bfs_sizes(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

fn unionfind(rng: &mut SimRng) -> Vec<CheckLine> {
    let mut mismatches = 0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=64);
        let m = rng.random_range(0..=2 * n);
        let edges: Vec<(usize, usize)> = (0..m)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .filter(|(u, v)| u != v)
            .collect();
        let expected = bfs_sizes(n, &edges);
        let mut got = components(&ClassicalGraph::new(n, edges).expect("in range")).component_sizes;
        got.sort_unstable();
        if got != expected {
            mismatches += 1;
        }
    }
    vec![CheckLine::new("unionfind.vs_bfs_mismatches", mismatches as f64, 0.0)]
}

fn distill(rng: &mut SimRng) -> Vec<CheckLine> {
    let mut dev = 0.0_f64;
    for i in 0..=1000 {
        let p = Scp::clamped(i as f64 / 1000.0);
        dev = dev.max((distill_independent(p, p).value() - distill_equal(p, 2).value()).abs());
    }
    // Independent minus Equal per link, for Uniform(0.2, 0.8).
    let law = ScpDistribution::Uniform { a: 0.2, b: 0.8 };
    let n = 100_000;
    let diffs: Vec<f64> = (0..n)
        .map(|_| {
            let shared = Scp::clamped(law.sample(rng));
            let (a, b) = (Scp::clamped(law.sample(rng)), Scp::clamped(law.sample(rng)));
            distill_independent(a, b).value() - distill_equal(shared, 2).value()
        })
        .collect();
    let mean = diffs.iter().sum::<f64>() / n as f64;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let se = (var / n as f64).sqrt();
    let hc = 1.0 - 2.0 * (std::f64::consts::PI / 18.0).sin();
    let threshold = double_bond_cep_threshold(hc).expect("valid threshold");
    vec![
        CheckLine::new("distill.independent_eq_equal", dev, 1e-12),
        // Passes when mean difference >= -3 standard errors.
        CheckLine::new("distill.independent_ge_equal", -mean / se, 3.0),
        CheckLine::new("distill.double_bond_threshold", (threshold - 0.358).abs(), 1e-3),
    ]
}
