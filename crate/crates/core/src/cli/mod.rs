//! Command-line front end: `generate`, `run`, `sweep`, `predict`, `verify`.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage or config error,
//! 3 unsupported operation.

mod config;
mod verify;

pub use config::{ConfigFile, SweepFlags};
pub use verify::{run_checks, CheckLine, CHECK_NAMES};

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dist::ScpDistribution;
use crate::mc::{self, crossover_width, predict, McError, Protocol, SweepResult, TopologySpec};
use crate::proto::{assign_scps, cep, qep_honeycomb, MultiedgeMode, ProtoError};
use crate::rng::seeded;
use crate::topo::{QuantumNetwork, Topology};

#[derive(Debug, Parser)]
#[command(
    name = "entperc",
    version,
    about = "Entanglement percolation on random quantum networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a network, assign SCPs and write it as JSON.
    Generate(GenerateArgs),
    /// Run one protocol trial and print the result as JSON.
    Run(RunArgs),
    /// Sweep (mean SCP, width) grids and write a results CSV.
    Sweep(SweepFlags),
    /// Print an analytic threshold.
    Predict(PredictArgs),
    /// Run the built-in statistical and algebraic checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct TopologyArgs {
    /// square, honeycomb, triangular, erdos_renyi (er) or watts_strogatz (ws).
    #[arg(long)]
    pub topology: Option<String>,
    /// Side length, honeycomb cells per side, or node count for random graphs.
    #[arg(long)]
    pub size: Option<usize>,
    /// Parallel bonds per link (square and honeycomb only).
    #[arg(long)]
    pub bonds: Option<usize>,
    /// Erdős–Rényi edge probability.
    #[arg(long)]
    pub edge_prob: Option<f64>,
    /// Watts–Strogatz ring degree (even).
    #[arg(long)]
    pub ring_degree: Option<usize>,
    /// Watts–Strogatz rewiring probability.
    #[arg(long)]
    pub rewire: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub topo: TopologyArgs,
    /// SCP law, e.g. `uniform:a=0.3,b=0.7` or `haar`.
    #[arg(long)]
    pub dist: String,
    #[arg(long, default_value = "independent")]
    pub mode: String,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Network JSON file; otherwise the topology flags are used.
    #[arg(long, conflicts_with = "topology")]
    pub network: Option<PathBuf>,
    #[command(flatten)]
    pub topo: TopologyArgs,
    /// SCP law; required unless the network file already carries SCPs.
    #[arg(long)]
    pub dist: Option<String>,
    #[arg(long, default_value = "independent")]
    pub mode: String,
    #[arg(long, default_value = "cep")]
    pub protocol: String,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub topology: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub bonds: usize,
    #[arg(long, default_value = "cep")]
    pub protocol: String,
    /// Uniform width (QEP only).
    #[arg(long, default_value_t = 0.0)]
    pub width: f64,
    /// Print the crossover width instead of a threshold.
    #[arg(long)]
    pub crossover: bool,
    /// CEP threshold for `--crossover`; analytic double-bond honeycomb value by default.
    #[arg(long, requires = "crossover")]
    pub cep: Option<f64>,
    /// QEP base threshold for `--crossover`; `2 sin(pi/18)` by default.
    #[arg(long, requires = "crossover")]
    pub qep: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these checks (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Corrupt every measurement so the harness must report failure.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// Reproducibility record written next to every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub config: serde_json::Value,
    pub master_seed: u64,
    pub version: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, config: serde_json::Value, master_seed: u64, outputs: &[&Path]) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            config,
            master_seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        }
    }

    /// `<output>.manifest.json`.
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    pub fn write_next_to(&self, output: &Path) -> Result<PathBuf, CliError> {
        let path = Self::path_for(output);
        let text = serde_json::to_string_pretty(self).map_err(|e| CliError::Io(e.to_string()))?;
        std::fs::write(&path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Unsupported(String),
    VerificationFailed(usize),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }

    fn flag(flag: &str, err: impl Display) -> Self {
        CliError::Usage(format!("invalid --{flag}: {err}"))
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Unsupported(m) => write!(f, "unsupported: {m}"),
            CliError::VerificationFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<McError> for CliError {
    fn from(e: McError) -> Self {
        match e {
            McError::Unsupported(m) => CliError::Unsupported(m),
            McError::NoPrediction(m) => CliError::Unsupported(format!("no analytic prediction for {m}")),
            McError::Io(m) => CliError::Io(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub fn main() -> ExitCode {
    run_with_args(std::env::args_os())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate(a) => cmd_generate(a),
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Predict(a) => cmd_predict(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn parse_flag<T: FromStr>(flag: &str, value: &str) -> Result<T, CliError>
where
    T::Err: Display,
{
    value.parse().map_err(|e| CliError::flag(flag, e))
}

fn seed_or_entropy(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::rng().random();
        eprintln!("seed: {s}");
        s
    })
}

/// Resolves topology flags into a recipe.
pub fn topology_spec(t: &TopologyArgs) -> Result<TopologySpec, CliError> {
    let kind: Topology = parse_flag(
        "topology",
        t.topology
            .as_deref()
            .ok_or_else(|| CliError::Usage("missing --topology".into()))?,
    )?;
    let size = t.size.ok_or_else(|| CliError::Usage("missing --size".into()))?;
    let bonds = t.bonds.unwrap_or(1);
    if bonds == 0 {
        return Err(CliError::flag("bonds", "must be at least 1"));
    }
    let single_bond_only = |name: &str| {
        if bonds != 1 {
            Err(CliError::flag(
                "bonds",
                format!("{name} supports a single bond per link"),
            ))
        } else {
            Ok(())
        }
    };
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("missing --{flag}")));
    Ok(match kind {
        Topology::Square => TopologySpec::Square { side: size, bonds },
        Topology::Honeycomb => TopologySpec::Honeycomb { cells: size, bonds },
        Topology::Triangular => {
            single_bond_only("triangular")?;
            TopologySpec::Triangular { side: size }
        }
        Topology::ErdosRenyi => {
            single_bond_only("erdos_renyi")?;
            TopologySpec::ErdosRenyi {
                n: size,
                edge_probability: need(t.edge_prob, "edge-prob")?,
            }
        }
        Topology::WattsStrogatz => {
            single_bond_only("watts_strogatz")?;
            TopologySpec::WattsStrogatz {
                n: size,
                ring_degree: t
                    .ring_degree
                    .ok_or_else(|| CliError::Usage("missing --ring-degree".into()))?,
                rewire_probability: need(t.rewire, "rewire")?,
            }
        }
        Topology::Custom => return Err(CliError::flag("topology", "custom networks come from --network files")),
    })
}

fn build(spec: &TopologySpec, rng: &mut impl Rng) -> Result<QuantumNetwork, CliError> {
    let graph_seed: u64 = rng.random();
    spec.build(graph_seed).map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_generate(a: GenerateArgs) -> Result<(), CliError> {
    let spec = topology_spec(&a.topo)?;
    let dist: ScpDistribution = parse_flag("dist", &a.dist)?;
    let mode: MultiedgeMode = parse_flag("mode", &a.mode)?;
    let seed = seed_or_entropy(a.seed);
    let mut rng = seeded(seed);
    let net = build(&spec, &mut rng)?;
    let net = assign_scps(&net, &dist, mode, &mut rng);
    let json = net.to_json();
    match &a.output {
        Some(path) => {
            std::fs::write(path, json + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let config = serde_json::json!({
                "topology": spec,
                "dist": dist.to_string(),
                "mode": mode.to_string(),
            });
            RunManifest::new("generate", config, seed, &[path.as_path()]).write_next_to(path)?;
            eprintln!(
                "wrote {} ({} nodes, {} edges)",
                path.display(),
                net.node_count(),
                net.edge_count()
            );
        }
        None => println!("{json}"),
    }
    Ok(())
}

/// Output of `run`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub p_inf: f64,
    pub largest_cluster: usize,
    pub edges_converted: usize,
    pub seed: u64,
}

fn cmd_run(a: RunArgs) -> Result<(), CliError> {
    let protocol: Protocol = parse_flag("protocol", &a.protocol)?;
    let mode: MultiedgeMode = parse_flag("mode", &a.mode)?;
    let dist: Option<ScpDistribution> = a.dist.as_deref().map(|d| parse_flag("dist", d)).transpose()?;
    let seed = seed_or_entropy(a.seed);
    let mut rng = seeded(seed);

    let base = match &a.network {
        Some(path) => QuantumNetwork::load(path).map_err(|e| CliError::flag("network", e))?,
        None => {
            if dist.is_none() {
                return Err(CliError::Usage(
                    "missing --dist (required with an inline topology)".into(),
                ));
            }
            build(&topology_spec(&a.topo)?, &mut rng)?
        }
    };
    if protocol == Protocol::Qep && !(base.topology() == Topology::Honeycomb && base.bonds_per_link() == 2) {
        return Err(CliError::Unsupported(format!(
            "QEP needs a double-bond honeycomb, got {}-bond {}",
            base.bonds_per_link(),
            base.topology()
        )));
    }
    let net = match &dist {
        Some(d) => assign_scps(&base, d, mode, &mut rng),
        None if base.scps_assigned() => base,
        None => return Err(CliError::Usage("network has no SCPs; pass --dist".into())),
    };
    let net = match protocol {
        Protocol::Cep => net,
        Protocol::Qep => qep_honeycomb(&net).map_err(|e| match e {
            ProtoError::NotHoneycomb(m) => CliError::Unsupported(m),
            other => CliError::Usage(other.to_string()),
        })?,
    };
    let outcome = cep(&net, &mut rng);
    let record = RunRecord {
        p_inf: outcome.report.percolation_strength,
        largest_cluster: outcome.report.largest_size,
        edges_converted: outcome.edges_converted,
        seed,
    };
    println!("{}", serde_json::to_string(&record).expect("plain record"));
    Ok(())
}

fn cmd_sweep(flags: SweepFlags) -> Result<(), CliError> {
    let (config, workers) = flags.resolve()?;
    let result = mc::run_sweep_with(&config, workers)?;
    let summary = threshold_table(&result);
    match &flags.output {
        Some(path) => {
            result.write_csv_file(path)?;
            let mut outputs = vec![path.clone()];
            if let Some(json) = &flags.json {
                result.write_json_file(json)?;
                outputs.push(json.clone());
            }
            let refs: Vec<&Path> = outputs.iter().map(|p| p.as_path()).collect();
            let manifest = RunManifest::new(
                "sweep",
                serde_json::to_value(&config).expect("config serialises"),
                config.master_seed,
                &refs,
            );
            for p in &outputs {
                manifest.write_next_to(p)?;
            }
            print!("{summary}");
        }
        None => {
            mc::write_csv(&result.csv_rows(), std::io::stdout().lock())?;
            if let Some(json) = &flags.json {
                result.write_json_file(json)?;
            }
            eprint!("{summary}");
        }
    }
    Ok(())
}

/// Per-width estimates and predictions, one line each.
pub fn threshold_table(result: &SweepResult) -> String {
    let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"));
    let mut out = format!(
        "# {} {} {} {} seed={} trials={} skipped={} time={:.1}s\n",
        result.config.topology.label(),
        result.config.protocol,
        result.config.family,
        result.config.mode,
        result.config.master_seed,
        result.config.trials,
        result.skipped_points,
        result.wall_time_secs,
    );
    out.push_str("width\testimate\tprediction\n");
    for t in &result.thresholds {
        out.push_str(&format!("{}\t{}\t{}\n", t.width, fmt(t.estimate), fmt(t.prediction)));
    }
    out
}

fn cmd_predict(a: PredictArgs) -> Result<(), CliError> {
    if a.crossover {
        let cep = match a.cep {
            Some(v) => v,
            None => predict(Topology::Honeycomb, 2, Protocol::Cep, 0.0)?.value,
        };
        let qep = a.qep.unwrap_or_else(mc::triangular_threshold);
        let w = crossover_width(cep, qep).map_err(|e| match e {
            McError::QepNeverBetter(_) => CliError::Unsupported(e.to_string()),
            other => CliError::Usage(other.to_string()),
        })?;
        println!(
            "{}",
            serde_json::json!({ "cep_threshold": cep, "qep_base": qep, "crossover_width": w })
        );
        return Ok(());
    }
    let topology: Topology = parse_flag(
        "topology",
        a.topology
            .as_deref()
            .ok_or_else(|| CliError::Usage("missing --topology".into()))?,
    )?;
    let protocol: Protocol = parse_flag("protocol", &a.protocol)?;
    let p = predict(topology, a.bonds, protocol, a.width)?;
    println!("{}", serde_json::to_string(&p).expect("plain record"));
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    for name in &a.only {
        if !CHECK_NAMES.contains(&name.as_str()) {
            return Err(CliError::flag(
                "only",
                format!("unknown check {name:?} (known: {})", CHECK_NAMES.join(", ")),
            ));
        }
    }
    let selected: Vec<&str> = if a.only.is_empty() {
        CHECK_NAMES.to_vec()
    } else {
        CHECK_NAMES
            .iter()
            .copied()
            .filter(|n| a.only.iter().any(|o| o == n))
            .collect()
    };
    let lines = run_checks(&selected, a.seed, a.inject_fault);
    let mut out = std::io::stdout().lock();
    for line in &lines {
        let _ = writeln!(out, "{line}");
    }
    let failed = lines.iter().filter(|l| !l.passed).count();
    let _ = writeln!(out, "{} checks, {} failed", lines.len(), failed);
    if failed > 0 {
        Err(CliError::VerificationFailed(failed))
    } else {
        Ok(())
    }
}

impl From<crate::topo::TopoError> for CliError {
    fn from(e: crate::topo::TopoError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn topo(kind: &str, size: usize) -> TopologyArgs {
        TopologyArgs {
            topology: Some(kind.into()),
            size: Some(size),
            ..Default::default()
        }
    }

    #[test]
    fn topology_flags() {
        assert_eq!(
            topology_spec(&topo("square", 10)).unwrap(),
            TopologySpec::Square { side: 10, bonds: 1 }
        );
        let mut t = topo("ws", 50);
        assert!(topology_spec(&t).is_err());
        t.ring_degree = Some(4);
        t.rewire = Some(0.1);
        assert!(matches!(topology_spec(&t).unwrap(), TopologySpec::WattsStrogatz { .. }));
        t.bonds = Some(2);
        let err = topology_spec(&t).unwrap_err();
        assert!(err.to_string().contains("--bonds"), "{err}");
        let err = topology_spec(&topo("hexagonal", 3)).unwrap_err();
        assert!(err.to_string().contains("--topology"));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn manifest_path() {
        assert_eq!(
            RunManifest::path_for(Path::new("out/fig8.csv")),
            PathBuf::from("out/fig8.csv.manifest.json")
        );
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(McError::Unsupported("x".into())).exit_code(), 3);
        assert_eq!(CliError::from(McError::NoValidPoints(0.5)).exit_code(), 2);
        assert_eq!(CliError::VerificationFailed(1).exit_code(), 1);
    }
}
