//! Monte Carlo sweeps over `(mean SCP, width)` grids.
//!
//! Each trial builds (or reuses) the topology, assigns SCPs, runs the
//! protocol and records the percolation strength. Trial `t` at grid point
//! `(i, j)` draws from its own stream seeded with
//! [`trial_seed`](crate::rng::trial_seed)`(master_seed, i, j, t)`, and results
//! are reduced in trial order, so a sweep is bit-identical for any number of
//! worker threads.

mod output;
mod predict;
mod threshold;

pub use output::{read_csv, write_csv, CsvRow, CSV_HEADER};
pub use predict::{
    bond_threshold, crossover_width, honeycomb_threshold, predict, triangular_threshold, FormulaId, Prediction,
    SQUARE_THRESHOLD,
};
pub use threshold::{estimate_threshold, MIN_SLOPE};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dist::{DistError, ScpDistribution};
use crate::proto::{assign_scps_in_place, cep_summary, LinkIndex, MultiedgeMode, ProtoError, QepPlan};
use crate::rng::{seeded, trial_seed};
use crate::topo::{
    make_erdos_renyi, make_honeycomb, make_square, make_triangular, make_watts_strogatz, QuantumNetwork, TopoError,
    Topology,
};

/// Slack when checking that a law's support fits in `[0, 1]`.
const SUPPORT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum McError {
    #[error("invalid sweep config: {0}")]
    InvalidConfig(String),
    #[error("p_mean={p_mean}, width={width}: support [{lo}, {hi}] leaves [0, 1]")]
    OutOfSupport { p_mean: f64, width: f64, lo: f64, hi: f64 },
    #[error("width {0}: no grid point has its support inside [0, 1]")]
    NoValidPoints(f64),
    #[error("threshold estimation needs at least 5 grid points, got {0}")]
    TooFewPoints(usize),
    #[error("grid must be strictly increasing")]
    NonMonotoneGrid,
    #[error("no transition detected (curve is flat)")]
    NoTransition,
    #[error("no analytic prediction for {0}")]
    NoPrediction(String),
    #[error("QEP never better: crossover width {0} is negative")]
    QepNeverBetter(f64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Topo(#[from] TopoError),
    #[error(transparent)]
    Proto(#[from] ProtoError),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error("i/o: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    Cep,
    Qep,
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Protocol::Cep => "cep",
            Protocol::Qep => "qep",
        })
    }
}

impl FromStr for Protocol {
    type Err = McError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cep" => Ok(Protocol::Cep),
            "qep" => Ok(Protocol::Qep),
            other => Err(McError::InvalidConfig(format!("unknown protocol {other:?}"))),
        }
    }
}

/// A topology recipe. Lattices are deterministic; random graphs are drawn
/// per trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TopologySpec {
    Square {
        side: usize,
        bonds: usize,
    },
    Honeycomb {
        cells: usize,
        bonds: usize,
    },
    Triangular {
        side: usize,
    },
    ErdosRenyi {
        n: usize,
        edge_probability: f64,
    },
    WattsStrogatz {
        n: usize,
        ring_degree: usize,
        rewire_probability: f64,
    },
}

impl TopologySpec {
    pub fn topology(&self) -> Topology {
        match self {
            Self::Square { .. } => Topology::Square,
            Self::Honeycomb { .. } => Topology::Honeycomb,
            Self::Triangular { .. } => Topology::Triangular,
            Self::ErdosRenyi { .. } => Topology::ErdosRenyi,
            Self::WattsStrogatz { .. } => Topology::WattsStrogatz,
        }
    }

    pub fn bonds_per_link(&self) -> usize {
        match *self {
            Self::Square { bonds, .. } | Self::Honeycomb { bonds, .. } => bonds,
            _ => 1,
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, Self::ErdosRenyi { .. } | Self::WattsStrogatz { .. })
    }

    /// `seed` is only used by random graphs.
    pub fn build(&self, seed: u64) -> Result<QuantumNetwork, TopoError> {
        match *self {
            Self::Square { side, bonds } => make_square(side, bonds),
            Self::Honeycomb { cells, bonds } => make_honeycomb(cells, bonds),
            Self::Triangular { side } => make_triangular(side),
            Self::ErdosRenyi { n, edge_probability } => make_erdos_renyi(n, edge_probability, seed),
            Self::WattsStrogatz {
                n,
                ring_degree,
                rewire_probability,
            } => make_watts_strogatz(n, ring_degree, rewire_probability, seed),
        }
    }

    /// Short label used in CSV output, e.g. `square:100:b1`.
    pub fn label(&self) -> String {
        match *self {
            Self::Square { side, bonds } => format!("square:{side}:b{bonds}"),
            Self::Honeycomb { cells, bonds } => format!("honeycomb:{cells}:b{bonds}"),
            Self::Triangular { side } => format!("triangular:{side}"),
            Self::ErdosRenyi { n, edge_probability } => format!("erdos_renyi:{n}:p{edge_probability}"),
            Self::WattsStrogatz {
                n,
                ring_degree,
                rewire_probability,
            } => format!("watts_strogatz:{n}:k{ring_degree}:r{rewire_probability}"),
        }
    }
}

/// Parametric SCP law driven by a mean and a width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistFamily {
    /// `Uniform(m - w/2, m + w/2)`; constant when `w = 0`.
    Uniform,
    /// Normal with `mu = m`, `sigma = w/4`, truncated to `[m - w/2, m + w/2]`.
    Gauss,
    /// `m - w/2` or `m + w/2` with equal weight.
    Bimodal,
    /// Constant `m`; only `w = 0`.
    Const,
}

impl DistFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            DistFamily::Uniform => "uniform",
            DistFamily::Gauss => "gauss",
            DistFamily::Bimodal => "bimodal",
            DistFamily::Const => "const",
        }
    }

    /// The law with mean `p_mean` and width `width`. Laws whose support
    /// would leave `[0, 1]` are rejected, never clipped, since clipping moves
    /// the mean.
    pub fn law(self, p_mean: f64, width: f64) -> Result<ScpDistribution, McError> {
        if !(0.0..=1.0).contains(&p_mean) || !(0.0..=1.0).contains(&width) {
            return Err(McError::InvalidConfig(format!(
                "p_mean={p_mean}, width={width} must lie in [0, 1]"
            )));
        }
        if self == DistFamily::Const && width != 0.0 {
            return Err(McError::InvalidConfig(format!(
                "const family has no width, got {width}"
            )));
        }
        let lo = p_mean - width / 2.0;
        let hi = p_mean + width / 2.0;
        if lo < -SUPPORT_TOL || hi > 1.0 + SUPPORT_TOL {
            return Err(McError::OutOfSupport { p_mean, width, lo, hi });
        }
        let (lo, hi) = (lo.max(0.0), hi.min(1.0));
        if width == 0.0 {
            return Ok(ScpDistribution::degenerate(p_mean)?);
        }
        Ok(match self {
            DistFamily::Uniform => ScpDistribution::uniform(lo, hi)?,
            DistFamily::Gauss => ScpDistribution::truncated_gaussian(p_mean, width / 4.0, lo, hi)?,
            DistFamily::Bimodal => ScpDistribution::bimodal(lo, hi, 0.5)?,
            DistFamily::Const => unreachable!("const with nonzero width rejected above"),
        })
    }
}

impl fmt::Display for DistFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DistFamily {
    type Err = McError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" => Ok(DistFamily::Uniform),
            "gauss" | "gaussian" => Ok(DistFamily::Gauss),
            "bimodal" => Ok(DistFamily::Bimodal),
            "const" | "degenerate" => Ok(DistFamily::Const),
            other => Err(McError::InvalidConfig(format!("unknown distribution family {other:?}"))),
        }
    }
}

/// Inclusive arithmetic grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Self {
        Self { start, stop, step }
    }

    pub fn validate(&self) -> Result<(), McError> {
        let Grid { start, stop, step } = *self;
        if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) {
            return Err(McError::InvalidConfig(format!("grid {self} must lie in [0, 1]")));
        }
        if step.is_nan() || step <= 0.0 || start > stop {
            return Err(McError::InvalidConfig(format!(
                "grid {self} needs step > 0 and start <= stop"
            )));
        }
        Ok(())
    }

    /// Grid values, rounded to 12 decimals to absorb accumulated error.
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| ((self.start + i as f64 * self.step) * 1e12).round() / 1e12)
            .collect()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

impl FromStr for Grid {
    type Err = McError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| McError::InvalidConfig(format!("bad grid {s:?}: {x:?} is not a number")))
        };
        match parts.as_slice() {
            [a, b, c] => Ok(Grid::new(num(a)?, num(b)?, num(c)?)),
            [a] => {
                let v = num(a)?;
                Ok(Grid::new(v, v, 1.0))
            }
            _ => Err(McError::InvalidConfig(format!(
                "bad grid {s:?}, expected start:stop:step"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub topology: TopologySpec,
    pub protocol: Protocol,
    pub family: DistFamily,
    pub mode: MultiedgeMode,
    pub p_grid: Grid,
    pub widths: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), McError> {
        if self.trials == 0 {
            return Err(McError::InvalidConfig("trials must be at least 1".into()));
        }
        self.p_grid.validate()?;
        if self.widths.is_empty() {
            return Err(McError::InvalidConfig("no widths given".into()));
        }
        if let Some(w) = self.widths.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return Err(McError::InvalidConfig(format!("width {w} outside [0, 1]")));
        }
        if self.topology.bonds_per_link() == 0 {
            return Err(McError::InvalidConfig("bonds per link must be at least 1".into()));
        }
        if self.protocol == Protocol::Qep && !matches!(self.topology, TopologySpec::Honeycomb { bonds: 2, .. }) {
            return Err(McError::Unsupported(format!(
                "QEP is defined for the double-bond honeycomb, not {}",
                self.topology.label()
            )));
        }
        Ok(())
    }

    /// Valid `(p index, width index, p_mean, width, law)` points; points
    /// whose support leaves `[0, 1]` are skipped, and a width with no valid
    /// point is an error.
    fn points(&self) -> Result<(Vec<Point>, usize), McError> {
        let grid = self.p_grid.values();
        let mut points = Vec::new();
        let mut skipped = 0;
        for (wi, &w) in self.widths.iter().enumerate() {
            let before = points.len();
            for (pi, &p) in grid.iter().enumerate() {
                match self.family.law(p, w) {
                    Ok(law) => points.push(Point {
                        p_index: pi,
                        width_index: wi,
                        p_mean: p,
                        width: w,
                        law,
                    }),
                    Err(McError::OutOfSupport { .. }) => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
            if points.len() == before {
                return Err(McError::NoValidPoints(w));
            }
        }
        Ok((points, skipped))
    }
}

#[derive(Debug, Clone)]
struct Point {
    p_index: usize,
    width_index: usize,
    p_mean: f64,
    width: f64,
    law: ScpDistribution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p_mean: f64,
    pub width: f64,
    pub trials: usize,
    pub p_inf_mean: f64,
    pub p_inf_std: f64,
    pub edges_converted_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WidthThreshold {
    pub width: f64,
    /// Max-slope estimate; `None` when no transition was detected.
    pub estimate: Option<f64>,
    pub prediction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    /// Width-major, ascending `p_mean` within a width.
    pub rows: Vec<SweepRow>,
    pub thresholds: Vec<WidthThreshold>,
    /// Grid points dropped because their support left `[0, 1]`.
    pub skipped_points: usize,
    pub wall_time_secs: f64,
}

impl SweepResult {
    pub fn curve(&self, width: f64) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.width == width)
            .map(|r| (r.p_mean, r.p_inf_mean))
            .collect()
    }

    pub fn threshold(&self, width: f64) -> Option<f64> {
        self.thresholds
            .iter()
            .find(|t| t.width == width)
            .and_then(|t| t.estimate)
    }

    /// Everything except wall time, which is the only non-reproducible field.
    pub fn same_outcome(&self, other: &SweepResult) -> bool {
        self.config == other.config
            && self.rows == other.rows
            && self.thresholds == other.thresholds
            && self.skipped_points == other.skipped_points
    }
}

#[derive(Debug, Clone, Copy)]
struct TrialResult {
    p_inf: f64,
    converted: usize,
}

/// Structures shared by every trial of a lattice sweep.
#[allow(clippy::large_enum_variant)]
enum Prepared {
    Fixed {
        base: QuantumNetwork,
        index: LinkIndex,
        qep: Option<(QepPlan, QuantumNetwork, LinkIndex)>,
    },
    Random,
}

fn prepare(config: &SweepConfig) -> Result<Prepared, McError> {
    if config.topology.is_random() {
        return Ok(Prepared::Random);
    }
    let base = config.topology.build(0)?;
    let index = LinkIndex::new(&base);
    let qep = match config.protocol {
        Protocol::Cep => None,
        Protocol::Qep => {
            let plan = QepPlan::new(&base)?;
            let template = plan.apply(&base);
            let tri_index = LinkIndex::new(&template);
            Some((plan, template, tri_index))
        }
    };
    Ok(Prepared::Fixed { base, index, qep })
}

fn run_trial(config: &SweepConfig, prepared: &Prepared, point: &Point, trial: usize) -> Result<TrialResult, McError> {
    let mut rng = seeded(trial_seed(
        config.master_seed,
        point.p_index as u64,
        point.width_index as u64,
        trial as u64,
    ));
    let summary = match prepared {
        Prepared::Fixed { base, index, qep } => {
            let mut net = base.clone();
            assign_scps_in_place(&mut net, index, &point.law, config.mode, &mut rng);
            match qep {
                None => cep_summary(&net, index, &mut rng),
                Some((plan, template, tri_index)) => {
                    let mut tri = template.clone();
                    plan.apply_into(&net, &mut tri);
                    cep_summary(&tri, tri_index, &mut rng)
                }
            }
        }
        Prepared::Random => {
            let graph_seed: u64 = rng.random();
            let mut net = config.topology.build(graph_seed)?;
            let index = LinkIndex::new(&net);
            assign_scps_in_place(&mut net, &index, &point.law, config.mode, &mut rng);
            cep_summary(&net, &index, &mut rng)
        }
    };
    Ok(TrialResult {
        p_inf: summary.percolation_strength,
        converted: summary.edges_converted,
    })
}

/// Runs a sweep on the default rayon pool.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult, McError> {
    run_sweep_with(config, None)
}

/// Runs a sweep on `workers` threads (`None`: available parallelism). The
/// result does not depend on `workers`.
pub fn run_sweep_with(config: &SweepConfig, workers: Option<usize>) -> Result<SweepResult, McError> {
    let started = Instant::now();
    config.validate()?;
    let (points, skipped_points) = config.points()?;
    let prepared = prepare(config)?;

    let tasks: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|pt| (0..config.trials).map(move |t| (pt, t)))
        .collect();
    let work = || -> Result<Vec<TrialResult>, McError> {
        tasks
            .par_iter()
            .map(|&(pt, t)| run_trial(config, &prepared, &points[pt], t))
            .collect()
    };
    let results = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| McError::InvalidConfig(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };

    let rows: Vec<SweepRow> = points
        .iter()
        .zip(results.chunks(config.trials))
        .map(|(point, trials)| aggregate(point, trials))
        .collect();

    let thresholds = config
        .widths
        .iter()
        .map(|&w| {
            let curve: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.width == w)
                .map(|r| (r.p_mean, r.p_inf_mean))
                .collect();
            WidthThreshold {
                width: w,
                estimate: estimate_threshold(&curve).ok(),
                prediction: predict(
                    config.topology.topology(),
                    config.topology.bonds_per_link(),
                    config.protocol,
                    w,
                )
                .ok()
                .filter(|_| config.protocol == Protocol::Cep || config.family == DistFamily::Uniform || w == 0.0)
                .filter(|_| {
                    config.mode == MultiedgeMode::Independent || config.topology.bonds_per_link() == 1 || w == 0.0
                })
                .map(|p| p.value),
            }
        })
        .collect();

    Ok(SweepResult {
        config: config.clone(),
        rows,
        thresholds,
        skipped_points,
        wall_time_secs: started.elapsed().as_secs_f64(),
    })
}

fn aggregate(point: &Point, trials: &[TrialResult]) -> SweepRow {
    let n = trials.len() as f64;
    let mean = trials.iter().map(|t| t.p_inf).sum::<f64>() / n;
    let var = if trials.len() > 1 {
        trials.iter().map(|t| (t.p_inf - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    SweepRow {
        p_mean: point.p_mean,
        width: point.width,
        trials: trials.len(),
        p_inf_mean: mean,
        p_inf_std: var.sqrt(),
        edges_converted_mean: trials.iter().map(|t| t.converted as f64).sum::<f64>() / n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(protocol: Protocol, topology: TopologySpec) -> SweepConfig {
        SweepConfig {
            topology,
            protocol,
            family: DistFamily::Uniform,
            mode: MultiedgeMode::Independent,
            p_grid: Grid::new(0.3, 0.7, 0.05),
            widths: vec![0.0, 0.4],
            trials: 4,
            master_seed: 7,
        }
    }

    #[test]
    fn grid_values() {
        let g: Grid = "0.3:0.7:0.01".parse().unwrap();
        let v = g.values();
        assert_eq!(v.len(), 41);
        assert_eq!(v[0], 0.3);
        assert_eq!(v[20], 0.5);
        assert_eq!(v[40], 0.7);
        assert!("0.3:0.7".parse::<Grid>().is_err());
        assert!(Grid::new(0.5, 0.4, 0.01).validate().is_err());
        assert!(Grid::new(0.5, 1.4, 0.01).validate().is_err());
    }

    #[test]
    fn family_laws() {
        assert_eq!(
            DistFamily::Uniform.law(0.5, 0.0).unwrap(),
            ScpDistribution::Degenerate { p: 0.5 }
        );
        assert_eq!(
            DistFamily::Uniform.law(0.5, 0.4).unwrap(),
            ScpDistribution::Uniform { a: 0.3, b: 0.7 }
        );
        assert!((DistFamily::Gauss.law(0.4, 0.4).unwrap().mean() - 0.4).abs() < 1e-8);
        assert!((DistFamily::Bimodal.law(0.4, 0.4).unwrap().mean() - 0.4).abs() < 1e-12);
        // Edges of the unit interval are accepted despite rounding.
        assert!(DistFamily::Uniform.law(0.3, 0.6).is_ok());
        assert!(matches!(
            DistFamily::Uniform.law(0.9, 0.5),
            Err(McError::OutOfSupport { .. })
        ));
        assert!(DistFamily::Const.law(0.5, 0.1).is_err());
    }

    #[test]
    fn degenerate_one_gives_full_strength() {
        let mut c = small(Protocol::Cep, TopologySpec::Square { side: 10, bonds: 1 });
        c.p_grid = Grid::new(1.0, 1.0, 0.1);
        c.widths = vec![0.0];
        let r = run_sweep(&c).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].p_inf_mean, 1.0);
        assert_eq!(r.rows[0].p_inf_std, 0.0);
    }

    #[test]
    fn deterministic_across_runs_and_workers() {
        for c in [
            small(Protocol::Cep, TopologySpec::Square { side: 12, bonds: 1 }),
            small(Protocol::Qep, TopologySpec::Honeycomb { cells: 6, bonds: 2 }),
            small(
                Protocol::Cep,
                TopologySpec::WattsStrogatz {
                    n: 60,
                    ring_degree: 4,
                    rewire_probability: 0.2,
                },
            ),
        ] {
            let a = run_sweep_with(&c, Some(1)).unwrap();
            let b = run_sweep_with(&c, Some(3)).unwrap();
            let d = run_sweep(&c).unwrap();
            assert!(a.same_outcome(&b));
            assert!(a.same_outcome(&d));
        }
    }

    #[test]
    fn adding_grid_points_keeps_existing_trials() {
        let mut c = small(Protocol::Cep, TopologySpec::Square { side: 10, bonds: 1 });
        let a = run_sweep(&c).unwrap();
        c.p_grid.stop = 0.8;
        c.trials = 6;
        c.widths.push(0.2);
        let b = run_sweep(&c).unwrap();
        // Same seeds for the shared points; more trials change only the
        // aggregate, so compare a single-trial sweep instead.
        c.trials = 1;
        c.widths = vec![0.0, 0.4];
        c.p_grid.stop = 0.7;
        let one = run_sweep(&c).unwrap();
        c.p_grid.stop = 0.8;
        c.widths.push(0.2);
        let more = run_sweep(&c).unwrap();
        for row in &one.rows {
            assert!(more.rows.contains(row));
        }
        assert!(a.rows.len() < b.rows.len());
    }

    #[test]
    fn rejects_bad_configs() {
        let base = small(Protocol::Cep, TopologySpec::Square { side: 10, bonds: 1 });
        let mut c = base.clone();
        c.trials = 0;
        assert!(run_sweep(&c).is_err());
        let mut c = base.clone();
        c.p_grid = Grid::new(0.9, 0.99, 0.01);
        c.widths = vec![0.5];
        assert_eq!(run_sweep(&c).unwrap_err(), McError::NoValidPoints(0.5));
        let c = small(Protocol::Qep, TopologySpec::Square { side: 10, bonds: 2 });
        assert!(matches!(run_sweep(&c), Err(McError::Unsupported(_))));
        let mut c = base;
        c.widths = vec![];
        assert!(run_sweep(&c).is_err());
    }

    #[test]
    fn partial_support_is_skipped() {
        let mut c = small(Protocol::Cep, TopologySpec::Square { side: 8, bonds: 1 });
        c.widths = vec![0.8];
        c.trials = 1;
        let r = run_sweep(&c).unwrap();
        // Only 0.4, 0.45, ..., 0.6 fit.
        assert_eq!(r.rows.len(), 5);
        assert_eq!(r.skipped_points, 4);
    }

    #[test]
    fn curves_rise_with_mean() {
        let mut c = small(Protocol::Cep, TopologySpec::Square { side: 30, bonds: 1 });
        c.p_grid = Grid::new(0.1, 0.9, 0.1);
        c.widths = vec![0.0];
        c.trials = 10;
        let r = run_sweep(&c).unwrap();
        let curve = r.curve(0.0);
        assert!(curve.first().unwrap().1 < 0.1);
        assert!(curve.last().unwrap().1 > 0.95);
        let t = r.threshold(0.0).unwrap();
        assert!((0.35..=0.65).contains(&t), "{t}");
        assert_eq!(r.thresholds[0].prediction, Some(0.5));
    }
}
