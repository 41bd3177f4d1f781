//! Sweep settings from flags and an optional flat `key = value` file. Keys
//! mirror the flag names (`p-mean` or `p_mean`); flags win over the file.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;

use super::{seed_or_entropy, topology_spec, CliError, TopologyArgs};
use crate::mc::{DistFamily, Grid, Protocol, SweepConfig};
use crate::proto::MultiedgeMode;

const DEFAULT_GRID: &str = "0:1:0.01";
const DEFAULT_TRIALS: usize = 20;

#[derive(Debug, Clone, Default, Args)]
pub struct SweepFlags {
    /// Flat TOML file with any of the flags below as keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub topo: TopologyArgs,
    /// cep or qep.
    #[arg(long)]
    pub protocol: Option<String>,
    /// uniform, gauss, bimodal or const.
    #[arg(long)]
    pub dist_family: Option<String>,
    /// equal or independent.
    #[arg(long)]
    pub mode: Option<String>,
    /// Mean SCP grid `start:stop:step` [default: 0:1:0.01].
    #[arg(long)]
    pub p_mean: Option<String>,
    /// Comma separated widths [default: 0].
    #[arg(long)]
    pub widths: Option<String>,
    /// Trials per grid point [default: 20].
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads [default: available parallelism].
    #[arg(long)]
    pub workers: Option<usize>,
    /// Results CSV; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write the full result as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// Parsed config file, values kept as text keyed by flag name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile(BTreeMap<String, String>);

const KNOWN_KEYS: &[&str] = &[
    "topology",
    "size",
    "bonds",
    "edge-prob",
    "ring-degree",
    "rewire",
    "protocol",
    "dist-family",
    "mode",
    "p-mean",
    "widths",
    "trials",
    "seed",
    "workers",
];

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| CliError::Usage(format!("config file: {e}")))?;
        let mut out = BTreeMap::new();
        for (key, value) in table {
            let flag = key.replace('_', "-");
            if !KNOWN_KEYS.contains(&flag.as_str()) {
                return Err(CliError::Usage(format!("config file: unknown key {key:?}")));
            }
            let text = match value {
                toml::Value::String(s) => s,
                toml::Value::Integer(i) => i.to_string(),
                toml::Value::Float(f) => f.to_string(),
                toml::Value::Array(items) => items
                    .iter()
                    .map(|v| match v {
                        toml::Value::String(s) => Ok(s.clone()),
                        toml::Value::Integer(i) => Ok(i.to_string()),
                        toml::Value::Float(f) => Ok(f.to_string()),
                        other => Err(CliError::Usage(format!("config file: bad item {other} in {key:?}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?
                    .join(","),
                other => return Err(CliError::Usage(format!("config file: bad value {other} for {key:?}"))),
            };
            out.insert(flag, text);
        }
        Ok(Self(out))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("--config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn typed<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|e| CliError::Usage(format!("config file: invalid {key}: {e}")))
            })
            .transpose()
    }
}

fn flag_or<T: FromStr>(flag: Option<String>, file: &ConfigFile, key: &str) -> Result<Option<T>, CliError>
where
    T::Err: Display,
{
    match flag {
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|e| CliError::Usage(format!("invalid --{key}: {e}"))),
        None => file.typed(key),
    }
}

fn parse_widths(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("invalid --widths: {w:?} is not a number")))
        })
        .collect()
}

impl SweepFlags {
    /// Merges flags over the config file and fills defaults. Returns the
    /// config and the worker count.
    pub fn resolve(&self) -> Result<(SweepConfig, Option<usize>), CliError> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let topo = TopologyArgs {
            topology: self
                .topo
                .topology
                .clone()
                .or_else(|| file.get("topology").map(str::to_string)),
            size: self.topo.size.map_or_else(|| file.typed("size"), |v| Ok(Some(v)))?,
            bonds: self.topo.bonds.map_or_else(|| file.typed("bonds"), |v| Ok(Some(v)))?,
            edge_prob: self
                .topo
                .edge_prob
                .map_or_else(|| file.typed("edge-prob"), |v| Ok(Some(v)))?,
            ring_degree: self
                .topo
                .ring_degree
                .map_or_else(|| file.typed("ring-degree"), |v| Ok(Some(v)))?,
            rewire: self.topo.rewire.map_or_else(|| file.typed("rewire"), |v| Ok(Some(v)))?,
        };
        let topology = topology_spec(&topo)?;
        let protocol: Protocol = flag_or(self.protocol.clone(), &file, "protocol")?.unwrap_or(Protocol::Cep);
        let family: DistFamily =
            flag_or(self.dist_family.clone(), &file, "dist-family")?.unwrap_or(DistFamily::Uniform);
        let mode: MultiedgeMode = flag_or(self.mode.clone(), &file, "mode")?.unwrap_or(MultiedgeMode::Independent);
        let p_grid: Grid = flag_or(self.p_mean.clone(), &file, "p-mean")?
            .unwrap_or_else(|| DEFAULT_GRID.parse().expect("default grid"));
        p_grid
            .validate()
            .map_err(|e| CliError::Usage(format!("invalid --p-mean: {e}")))?;
        let widths = match self.widths.clone().or_else(|| file.get("widths").map(str::to_string)) {
            Some(w) => parse_widths(&w)?,
            None => vec![0.0],
        };
        let trials = self
            .trials
            .map_or_else(|| file.typed("trials"), |v| Ok(Some(v)))?
            .unwrap_or(DEFAULT_TRIALS);
        let seed = self.seed.map_or_else(|| file.typed("seed"), |v| Ok(Some(v)))?;
        let workers = self.workers.map_or_else(|| file.typed("workers"), |v| Ok(Some(v)))?;
        if workers == Some(0) {
            return Err(CliError::Usage("invalid --workers: must be at least 1".into()));
        }
        let config = SweepConfig {
            topology,
            protocol,
            family,
            mode,
            p_grid,
            widths,
            trials,
            master_seed: seed_or_entropy(seed),
        };
        config.validate()?;
        Ok((config, workers))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::TopologySpec;

    #[test]
    fn file_values_and_overrides() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.toml");
        std::fs::write(
            &path,
            "topology = \"square\"\nsize = 20\np_mean = \"0.3:0.7:0.05\"\nwidths = [0, 0.4]\ntrials = 5\nseed = 9\n",
        )
        .unwrap();
        let flags = SweepFlags {
            config: Some(path),
            trials: Some(7),
            ..Default::default()
        };
        let (cfg, workers) = flags.resolve().unwrap();
        assert_eq!(cfg.topology, TopologySpec::Square { side: 20, bonds: 1 });
        assert_eq!(cfg.widths, vec![0.0, 0.4]);
        assert_eq!(cfg.trials, 7);
        assert_eq!(cfg.master_seed, 9);
        assert_eq!(cfg.p_grid, Grid::new(0.3, 0.7, 0.05));
        assert_eq!(workers, None);
    }

    #[test]
    fn unknown_and_bad_keys() {
        assert!(ConfigFile::parse("sizes = 3")
            .unwrap_err()
            .to_string()
            .contains("sizes"));
        let f = ConfigFile::parse("trials = \"many\"").unwrap();
        assert!(f.typed::<usize>("trials").unwrap_err().to_string().contains("trials"));
    }

    #[test]
    fn bad_flag_is_named() {
        let flags = SweepFlags {
            topo: TopologyArgs {
                topology: Some("square".into()),
                size: Some(10),
                ..Default::default()
            },
            p_mean: Some("0.3-0.7".into()),
            seed: Some(1),
            ..Default::default()
        };
        assert!(flags.resolve().unwrap_err().to_string().contains("--p-mean"));
    }
}
