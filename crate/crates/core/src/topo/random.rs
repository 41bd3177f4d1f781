//! Random graph generators. Both are pure functions of their arguments.

use std::collections::HashSet;

use rand::Rng;

use super::{Edge, QuantumNetwork, TopoError, Topology};
use crate::rng::{index_below, seeded};

/// G(n, p): every unordered pair is present independently with probability
/// `edge_probability`.
///
/// Uses geometric skipping over the pairs (Batagelj and Brandes), so sparse
/// graphs cost `O(n + m)` instead of `O(n^2)`.
pub fn make_erdos_renyi(n: usize, edge_probability: f64, seed: u64) -> Result<QuantumNetwork, TopoError> {
    if !(0.0..=1.0).contains(&edge_probability) {
        return Err(TopoError::ProbabilityOutOfRange {
            what: "edge_probability",
            value: edge_probability,
        });
    }
    let mut edges = Vec::new();
    if edge_probability >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                edges.push(Edge::new(w, v, 0.0));
            }
        }
    } else if edge_probability > 0.0 && n > 1 {
        let mut rng = seeded(seed);
        let log_q = (1.0 - edge_probability).ln();
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let r: f64 = rng.random();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push(Edge::new(w as usize, v, 0.0));
            }
        }
    }
    Ok(QuantumNetwork::from_parts(n, edges, Topology::ErdosRenyi, 1))
}

/// Watts-Strogatz small world.
///
/// Starts from a ring where each node links to its `ring_degree / 2`
/// clockwise neighbours, then visits those links (offset by offset, node by
/// node) and with probability `rewire_probability` moves the far end to a
/// uniformly chosen node, resampling until the new link is neither a
/// self-loop nor a duplicate. Nodes already adjacent to everyone are skipped.
/// The edge count stays `n * ring_degree / 2`.
pub fn make_watts_strogatz(
    n: usize,
    ring_degree: usize,
    rewire_probability: f64,
    seed: u64,
) -> Result<QuantumNetwork, TopoError> {
    if !ring_degree.is_multiple_of(2) {
        return Err(TopoError::OddRingDegree(ring_degree));
    }
    if ring_degree < 2 {
        return Err(TopoError::TooSmall {
            what: "ring_degree",
            min: 2,
            got: ring_degree,
        });
    }
    if ring_degree >= n {
        return Err(TopoError::RingDegreeTooLarge { degree: ring_degree, n });
    }
    if !(0.0..=1.0).contains(&rewire_probability) {
        return Err(TopoError::ProbabilityOutOfRange {
            what: "rewire_probability",
            value: rewire_probability,
        });
    }
    let half = ring_degree / 2;
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::with_capacity(ring_degree + 2); n];
    let mut edges = Vec::with_capacity(n * half);
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
            edges.push((u, v));
        }
    }

    let mut rng = seeded(seed);
    for j in 1..=half {
        for u in 0..n {
            let slot = u * half + (j - 1);
            let v = edges[slot].1;
            if rng.random::<f64>() >= rewire_probability {
                continue;
            }
            if adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = index_below(&mut rng, n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
            edges[slot] = (u, w);
        }
    }

    let edges = edges.into_iter().map(|(u, v)| Edge::new(u, v, 0.0)).collect();
    Ok(QuantumNetwork::from_parts(n, edges, Topology::WattsStrogatz, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_duplicates(net: &QuantumNetwork) -> bool {
        let mut keys: Vec<_> = net.edges().iter().map(|e| e.key()).collect();
        keys.sort_unstable();
        let len = keys.len();
        keys.dedup();
        keys.len() == len
    }

    #[test]
    fn erdos_renyi_extremes() {
        assert_eq!(make_erdos_renyi(50, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(make_erdos_renyi(5, 1.0, 1).unwrap().edge_count(), 10);
        assert!(make_erdos_renyi(5, 1.5, 1).is_err());
        assert!(make_erdos_renyi(5, -0.1, 1).is_err());
    }

    #[test]
    fn erdos_renyi_mean_degree() {
        let n = 10_000;
        let mut total = 0.0;
        for seed in 0..20 {
            let net = make_erdos_renyi(n, 3.0 / n as f64, seed).unwrap();
            assert!(no_duplicates(&net));
            net.validate().unwrap();
            total += 2.0 * net.edge_count() as f64 / n as f64;
        }
        let mean = total / 20.0;
        // Expected mean degree is 3 (n - 1) / n.
        assert!((mean - 3.0).abs() < 0.15, "mean degree {mean}");
    }

    #[test]
    fn erdos_renyi_pair_frequencies_are_uniform() {
        // Each of the 15 pairs of a 6-node graph should appear with
        // probability 0.3.
        let mut counts = std::collections::HashMap::new();
        let runs = 20_000;
        for seed in 0..runs {
            for e in make_erdos_renyi(6, 0.3, seed).unwrap().edges() {
                *counts.entry(e.key()).or_insert(0usize) += 1;
            }
        }
        assert_eq!(counts.len(), 15);
        for (&k, &c) in &counts {
            let f = c as f64 / runs as f64;
            assert!((f - 0.3).abs() < 0.015, "pair {k:?} frequency {f}");
        }
    }

    #[test]
    fn watts_strogatz_ring() {
        let net = make_watts_strogatz(20, 4, 0.0, 3).unwrap();
        assert_eq!(net.edge_count(), 40);
        assert!(net.neighbors().iter().all(|n| n.len() == 4));
    }

    #[test]
    fn watts_strogatz_keeps_edge_count() {
        for beta in [0.0, 0.1, 0.5, 1.0] {
            for seed in 0..10 {
                let net = make_watts_strogatz(20, 4, beta, seed).unwrap();
                assert_eq!(net.edge_count(), 40);
                assert!(no_duplicates(&net));
                net.validate().unwrap();
            }
        }
    }

    #[test]
    fn watts_strogatz_full_rewire_breaks_regularity() {
        let mut variances = 0.0;
        for seed in 0..100 {
            let net = make_watts_strogatz(50, 4, 1.0, seed).unwrap();
            let degs: Vec<f64> = net.neighbors().iter().map(|n| n.len() as f64).collect();
            let mean = degs.iter().sum::<f64>() / degs.len() as f64;
            variances += degs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / degs.len() as f64;
        }
        assert!(variances / 100.0 > 0.5);
    }

    #[test]
    fn watts_strogatz_rejects_bad_parameters() {
        assert_eq!(make_watts_strogatz(20, 3, 0.1, 0), Err(TopoError::OddRingDegree(3)));
        assert!(make_watts_strogatz(4, 4, 0.1, 0).is_err());
        assert!(make_watts_strogatz(20, 4, 1.1, 0).is_err());
        assert!(make_watts_strogatz(20, 0, 0.1, 0).is_err());
    }

    #[test]
    fn generators_are_pure() {
        assert_eq!(
            make_erdos_renyi(300, 0.02, 9).unwrap(),
            make_erdos_renyi(300, 0.02, 9).unwrap()
        );
        assert_eq!(
            make_watts_strogatz(100, 6, 0.3, 9).unwrap(),
            make_watts_strogatz(100, 6, 0.3, 9).unwrap()
        );
        assert_ne!(
            make_watts_strogatz(100, 6, 0.3, 9).unwrap(),
            make_watts_strogatz(100, 6, 0.3, 10).unwrap()
        );
    }
}
