//! Closed-form thresholds.
//!
//! With independently drawn SCPs a single-bond link opens with probability
//! `E[p]`, so CEP percolates exactly when the mean SCP exceeds the lattice's
//! bond threshold, whatever the width. A double-bond link with independent
//! bonds distils to `min{1, p1 + p2 - p1 p2 / 2}`, whose mean is
//! `2<p> - <p>^2/2` while the cap is inactive (both SCPs below `2 - sqrt 2`
//! suffices). After the honeycomb QEP rewrite every triangular edge
//! carries the minimum of two bonds, which for a uniform law of width `w`
//! has mean `<p> - w/6`.

use serde::{Deserialize, Serialize};

use super::{McError, Protocol};
use crate::states::double_bond_cep_threshold;
use crate::topo::Topology;

pub const SQUARE_THRESHOLD: f64 = 0.5;

/// `1 - 2 sin(pi / 18)`.
pub fn honeycomb_threshold() -> f64 {
    1.0 - triangular_threshold()
}

/// `2 sin(pi / 18)`.
pub fn triangular_threshold() -> f64 {
    2.0 * (std::f64::consts::PI / 18.0).sin()
}

/// Bond-percolation threshold of a lattice.
pub fn bond_threshold(topology: Topology) -> Option<f64> {
    match topology {
        Topology::Square => Some(SQUARE_THRESHOLD),
        Topology::Honeycomb => Some(honeycomb_threshold()),
        Topology::Triangular => Some(triangular_threshold()),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    /// CEP on single bonds: the lattice bond threshold.
    BondThreshold,
    /// CEP on double bonds: `2 - sqrt(4 - 2 p_c)`.
    DoubleBondCep,
    /// QEP on the double-bond honeycomb: `2 sin(pi/18) + w/6`.
    HoneycombQep,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: String,
    pub value: f64,
    pub formula: FormulaId,
}

/// Analytic threshold in terms of the mean SCP. `width` only matters for QEP
/// (uniform law).
pub fn predict(
    topology: Topology,
    bonds_per_link: usize,
    protocol: Protocol,
    width: f64,
) -> Result<Prediction, McError> {
    let unsupported = || McError::NoPrediction(format!("{protocol} on {bonds_per_link}-bond {topology}"));
    let p_c = bond_threshold(topology).ok_or_else(unsupported)?;
    let (value, formula) = match (protocol, bonds_per_link) {
        (Protocol::Cep, 1) => (p_c, FormulaId::BondThreshold),
        (Protocol::Cep, 2) => (
            double_bond_cep_threshold(p_c).map_err(|e| McError::InvalidConfig(e.to_string()))?,
            FormulaId::DoubleBondCep,
        ),
        (Protocol::Qep, 2) if topology == Topology::Honeycomb => {
            if !(0.0..=1.0).contains(&width) {
                return Err(McError::InvalidConfig(format!("width {width} outside [0, 1]")));
            }
            (triangular_threshold() + width / 6.0, FormulaId::HoneycombQep)
        }
        _ => return Err(unsupported()),
    };
    Ok(Prediction {
        label: format!("{protocol} {bonds_per_link}-bond {topology}"),
        value: value.clamp(0.0, 1.0),
        formula,
    })
}

/// Width at which the QEP threshold `qep_base + w/6` reaches the CEP
/// threshold: `6 (cep_threshold - qep_base)`.
pub fn crossover_width(cep_threshold: f64, qep_base: f64) -> Result<f64, McError> {
    for t in [cep_threshold, qep_base] {
        if !(0.0..=1.0).contains(&t) {
            return Err(McError::InvalidConfig(format!("threshold {t} outside [0, 1]")));
        }
    }
    let w = 6.0 * (cep_threshold - qep_base);
    if w < 0.0 {
        Err(McError::QepNeverBetter(w))
    } else {
        Ok(w)
    }
}
