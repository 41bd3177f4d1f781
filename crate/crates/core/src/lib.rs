//! Entanglement percolation on random quantum networks.
//!
//! The crate is organised bottom-up:
//!
//! * [`states`]: single-link entanglement algebra (singlet conversion
//!   probability, majorization, Vidal's optimal conversion, the Procrustean
//!   POVM, swapping and multiedge distillation).
//! * [`dist`]: random laws of edge SCPs, including the Haar-induced law and
//!   the minimum-of-two transform produced by q-swaps.
//! * [`topo`]: lattices, random graphs, multigraph networks and cluster
//!   analysis with a disjoint-set forest.
//! * [`proto`]: SCP assignment, classical entanglement percolation (CEP),
//!   q-swaps and the honeycomb to triangular quantum protocol (QEP).
//! * [`mc`]: seeded, parallel Monte Carlo sweeps, threshold estimation and
//!   analytic predictions.
//! * [`cli`]: the `entperc` command line front end.

pub mod cli;
pub mod dist;
pub mod mc;
pub mod proto;
pub mod rng;
pub mod states;
pub mod topo;

pub use dist::ScpDistribution;
pub use proto::MultiedgeMode;
pub use states::{QubitPairState, SchmidtVector, Scp};
pub use topo::{ClassicalGraph, ComponentReport, QuantumNetwork, Topology};
