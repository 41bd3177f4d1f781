use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{McError, SweepResult};

pub const CSV_HEADER: [&str; 11] = [
    "topology",
    "protocol",
    "dist",
    "mode",
    "p_mean",
    "width",
    "trials",
    "p_inf_mean",
    "p_inf_std",
    "threshold_estimate",
    "seed",
];

/// One line of a results CSV. `threshold_estimate` repeats the estimate of
/// the row's width and is empty when none was found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub topology: String,
    pub protocol: String,
    pub dist: String,
    pub mode: String,
    pub p_mean: f64,
    pub width: f64,
    pub trials: usize,
    pub p_inf_mean: f64,
    pub p_inf_std: f64,
    pub threshold_estimate: Option<f64>,
    pub seed: u64,
}

impl SweepResult {
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        let c = &self.config;
        self.rows
            .iter()
            .map(|r| CsvRow {
                topology: c.topology.label(),
                protocol: c.protocol.to_string(),
                dist: c.family.to_string(),
                mode: c.mode.to_string(),
                p_mean: r.p_mean,
                width: r.width,
                trials: r.trials,
                p_inf_mean: r.p_inf_mean,
                p_inf_std: r.p_inf_std,
                threshold_estimate: self.threshold(r.width),
                seed: c.master_seed,
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String, McError> {
        serde_json::to_string_pretty(self).map_err(|e| McError::Io(e.to_string()))
    }

    pub fn write_csv_file(&self, path: impl AsRef<Path>) -> Result<(), McError> {
        let file = std::fs::File::create(path.as_ref()).map_err(|e| McError::Io(e.to_string()))?;
        write_csv(&self.csv_rows(), file)
    }

    pub fn write_json_file(&self, path: impl AsRef<Path>) -> Result<(), McError> {
        std::fs::write(path.as_ref(), self.to_json()? + "\n").map_err(|e| McError::Io(e.to_string()))
    }
}

pub fn write_csv<W: Write>(rows: &[CsvRow], out: W) -> Result<(), McError> {
    let io = |e: csv::Error| McError::Io(e.to_string());
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    w.flush().map_err(|e| McError::Io(e.to_string()))
}

/// Reads a results CSV, checking the header.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>, McError> {
    let io = |e: csv::Error| McError::Io(e.to_string());
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(io)?;
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(McError::Io(format!(
            "unexpected CSV header {:?}",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    r.deserialize().map(|row| row.map_err(io)).collect()
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    #[test]
    fn csv_round_trip() {
        let cfg = SweepConfig {
            topology: TopologySpec::Square { side: 8, bonds: 1 },
            protocol: Protocol::Cep,
            family: DistFamily::Uniform,
            mode: MultiedgeMode::Independent,
            p_grid: Grid::new(0.3, 0.7, 0.05),
            widths: vec![0.0, 0.2],
            trials: 3,
            master_seed: 11,
        };
        let res = run_sweep(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&res.csv_rows(), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
        let back = read_csv(&buf[..]).unwrap();
        assert_eq!(back, res.csv_rows());
        for (row, orig) in back.iter().zip(&res.rows) {
            assert_eq!(row.p_inf_mean, orig.p_inf_mean);
            assert_eq!(row.p_inf_std, orig.p_inf_std);
        }
    }

    #[test]
    fn json_round_trip() {
        let cfg = SweepConfig {
            topology: TopologySpec::Honeycomb { cells: 4, bonds: 2 },
            protocol: Protocol::Qep,
            family: DistFamily::Uniform,
            mode: MultiedgeMode::Independent,
            p_grid: Grid::new(0.3, 0.5, 0.05),
            widths: vec![0.0],
            trials: 2,
            master_seed: 3,
        };
        let res = run_sweep(&cfg).unwrap();
        let back: SweepResult = serde_json::from_str(&res.to_json().unwrap()).unwrap();
        assert_eq!(back, res);
    }

    #[test]
    fn rejects_wrong_header() {
        let text = "a,b\n1,2\n";
        assert!(read_csv(text.as_bytes()).is_err());
    }
}
