//! CSV records and JSON summaries.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{GridPoint, Method, RunConfig};
use crate::experiment::{Campaign, ExperimentRecord};
use crate::stats::{mean, quantile, std_err, CDF_LEVELS};
use crate::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantilePoint {
    pub level: f64,
    pub sr_bits: f64,
}

/// Aggregates of one (grid point, method) cell over its trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub point: GridPoint,
    pub method: Method,
    pub trials: usize,
    pub failures: usize,
    pub mean_sr: Option<f64>,
    pub std_err: Option<f64>,
    pub quantiles: Vec<QuantilePoint>,
    pub mean_iterations: Option<f64>,
    pub max_iterations: usize,
    pub converged_fraction: Option<f64>,
    pub mean_wall_ms: Option<f64>,
    pub mean_flops: Option<f64>,
    /// Mean `R_s^a` per trace position; shorter traces hold their last value.
    pub mean_trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub config: RunConfig,
    pub records: usize,
    pub failures: usize,
    pub groups: Vec<GroupSummary>,
}

impl CampaignSummary {
    pub fn group(&self, point: &GridPoint, method: Method) -> Option<&GroupSummary> {
        self.groups.iter().find(|g| &g.point == point && g.method == method)
    }
}

fn mean_trace(traces: &[&Vec<f64>]) -> Vec<f64> {
    let len = traces.iter().map(|t| t.len()).max().unwrap_or(0);
    (0..len)
        .map(|i| {
            let vals: Vec<f64> = traces
                .iter()
                .filter_map(|t| t.get(i).or(t.last()).copied())
                .collect();
            mean(&vals).unwrap_or(f64::NAN)
        })
        .collect()
}

/// Folds records into per-cell summaries in grid order, then method order.
pub fn summarize(run: &RunConfig, records: &[ExperimentRecord], traces: &[Vec<f64>]) -> CampaignSummary {
    let mut groups = Vec::new();
    for point in run.grid() {
        for &method in &run.experiment.combinations {
            let cell: Vec<usize> = (0..records.len())
                .filter(|&i| records[i].method == method && records[i].grid_point() == point)
                .collect();
            let ok: Vec<usize> = cell.iter().copied().filter(|&i| !records[i].failed()).collect();
            let field = |f: &dyn Fn(&ExperimentRecord) -> f64| -> Vec<f64> {
                ok.iter().map(|&i| f(&records[i])).collect()
            };
            let sr = field(&|r| r.sr_bits.unwrap_or(f64::NAN));
            let conv = field(&|r| if r.converged { 1.0 } else { 0.0 });
            let ok_traces: Vec<&Vec<f64>> = ok.iter().map(|&i| &traces[i]).filter(|t| !t.is_empty()).collect();
            groups.push(GroupSummary {
                point,
                method,
                trials: cell.len(),
                failures: cell.len() - ok.len(),
                mean_sr: mean(&sr),
                std_err: std_err(&sr),
                quantiles: CDF_LEVELS
                    .iter()
                    .filter_map(|&level| quantile(&sr, level).map(|sr_bits| QuantilePoint { level, sr_bits }))
                    .collect(),
                mean_iterations: mean(&field(&|r| r.iterations as f64)),
                max_iterations: ok.iter().map(|&i| records[i].iterations).max().unwrap_or(0),
                converged_fraction: mean(&conv),
                mean_wall_ms: mean(&field(&|r| r.wall_ms)),
                mean_flops: mean(&field(&|r| r.flops)),
                mean_trace: mean_trace(&ok_traces),
            });
        }
    }
    CampaignSummary {
        config: run.clone(),
        records: records.len(),
        failures: records.iter().filter(|r| r.failed()).count(),
        groups,
    }
}

pub fn write_csv<W: Write>(out: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| HarnessError::Csv(e.into()))?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    rd.deserialize().map(|r| r.map_err(HarnessError::from)).collect()
}

pub fn to_csv_string(records: &[ExperimentRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, records)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

pub fn summary_to_json(summary: &CampaignSummary) -> Result<String> {
    let mut s = serde_json::to_string_pretty(summary)?;
    s.push('\n');
    Ok(s)
}

pub fn summary_from_json(text: &str) -> Result<CampaignSummary> {
    Ok(serde_json::from_str(text)?)
}

/// Paths written by [`write_campaign`].
#[derive(Debug, Clone)]
pub struct OutputPaths {
    pub csv: PathBuf,
    pub summary: PathBuf,
}

/// Writes `<kind>.csv` and `<kind>_summary.json` into `dir`.
pub fn write_campaign(dir: &Path, campaign: &Campaign) -> Result<OutputPaths> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let kind = campaign.summary.config.experiment.kind.name();
    let paths = OutputPaths {
        csv: dir.join(format!("{kind}.csv")),
        summary: dir.join(format!("{kind}_summary.json")),
    };
    let f = std::fs::File::create(&paths.csv).map_err(|e| HarnessError::io(&paths.csv, e))?;
    write_csv(std::io::BufWriter::new(f), &campaign.records)?;
    std::fs::write(&paths.summary, summary_to_json(&campaign.summary)?)
        .map_err(|e| HarnessError::io(&paths.summary, e))?;
    Ok(paths)
}
