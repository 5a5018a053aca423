//! JSON and CSV output documents.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bands::{BandResult, PointwiseInterval};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::simulation::{CoverageReport, SimulationDesign};

pub const SCHEMA_VERSION: u32 = 1;

pub const BAND_SCHEMA: &str = include_str!("../../schemas/band.schema.json");
pub const POINTWISE_SCHEMA: &str = include_str!("../../schemas/pointwise.schema.json");
pub const REPORT_SCHEMA: &str = include_str!("../../schemas/report.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandMeta {
    pub n: usize,
    pub m: usize,
    pub kernel: KernelSpec,
    pub beta: Option<f64>,
    pub r_n: f64,
    pub r_m: f64,
    pub alpha: f64,
    pub seed: Option<u64>,
    pub grid_points: usize,
    pub replicates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandPoint {
    pub x: f64,
    pub lower: f64,
    pub center: f64,
    pub upper: f64,
    pub s_hat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandDocument {
    pub schema_version: u32,
    pub meta: BandMeta,
    pub q_hat: f64,
    pub band: Vec<BandPoint>,
}

impl BandDocument {
    pub fn from_band(band: &BandResult, replicates: usize) -> Self {
        BandDocument {
            schema_version: SCHEMA_VERSION,
            meta: BandMeta {
                n: band.n,
                m: band.m,
                kernel: band.metadata.kernel,
                beta: band.metadata.beta,
                r_n: band.metadata.r_n,
                r_m: band.metadata.r_m,
                alpha: band.alpha,
                seed: band.metadata.seed,
                grid_points: band.len(),
                replicates,
            },
            q_hat: band.q_hat,
            band: (0..band.len())
                .map(|j| BandPoint {
                    x: band.grid[j],
                    lower: band.lower[j],
                    center: band.center[j],
                    upper: band.upper[j],
                    s_hat: band.scale[j],
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::data(format!("unsupported schema version {}", self.schema_version)));
        }
        if self.band.len() != self.meta.grid_points {
            return Err(Error::data("band length differs from meta.grid_points"));
        }
        let numbers = [self.q_hat, self.meta.r_n, self.meta.r_m, self.meta.alpha];
        let points = self.band.iter().flat_map(|p| [p.x, p.lower, p.center, p.upper, p.s_hat]);
        if numbers.into_iter().chain(points).any(|v| !v.is_finite()) {
            return Err(Error::numeric("band document contains non-finite numbers"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointwiseMeta {
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    pub replicates: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointwiseEntry {
    pub x: f64,
    pub lower: f64,
    pub center: f64,
    pub upper: f64,
    pub extrapolation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointwiseDocument {
    pub schema_version: u32,
    pub meta: PointwiseMeta,
    pub intervals: Vec<PointwiseEntry>,
}

impl PointwiseDocument {
    pub fn new(meta: PointwiseMeta, intervals: &[PointwiseInterval]) -> Self {
        PointwiseDocument {
            schema_version: SCHEMA_VERSION,
            meta,
            intervals: intervals
                .iter()
                .map(|iv| PointwiseEntry {
                    x: iv.x,
                    lower: iv.lower(),
                    center: iv.center,
                    upper: iv.upper(),
                    extrapolation: iv.extrapolation,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub design: SimulationDesign,
    #[serde(flatten)]
    pub report: CoverageReport,
}

impl ReportDocument {
    pub fn new(design: SimulationDesign, report: CoverageReport) -> Self {
        ReportDocument { schema_version: SCHEMA_VERSION, design, report }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// One band per α: a single object for one level, an array otherwise.
pub fn bands_to_json(docs: &[BandDocument]) -> Result<String> {
    match docs {
        [one] => to_json(one),
        many => to_json(&many),
    }
}

pub fn bands_from_json(text: &str) -> Result<Vec<BandDocument>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let docs = if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    };
    Ok(docs)
}

pub fn write_band_csv<W: Write>(doc: &BandDocument, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "lower", "center", "upper", "s_hat"]).map_err(csv_error)?;
    for p in &doc.band {
        w.serialize((p.x, p.lower, p.center, p.upper, p.s_hat)).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_pointwise_csv<W: Write>(doc: &PointwiseDocument, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "lower", "center", "upper", "extrapolation"]).map_err(csv_error)?;
    for p in &doc.intervals {
        w.serialize((p.x, p.lower, p.center, p.upper, p.extrapolation)).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::data(format!("CSV write failed: {other:?}")),
    }
}

/// Fixed-width text table in the layout of a coverage study summary.
pub fn report_table(report: &CoverageReport) -> String {
    let mut s = String::new();
    if !report.uniform.is_empty() {
        s.push_str("Uniform bands\n");
        s.push_str(&format!("{:>6} {:>6} {:>6} {:>14} {:>10} {:>8}\n", "1-a", "n", "m", "Average width", "Coverage", "Failed"));
        for c in &report.uniform {
            s.push_str(&format!(
                "{:>6.2} {:>6} {:>6} {:>14.2} {:>10.3} {:>8}\n",
                1.0 - c.alpha,
                c.n,
                c.m,
                c.median_average_width,
                c.coverage,
                c.failures
            ));
        }
    }
    if !report.pointwise.is_empty() {
        if !s.is_empty() {
            s.push('\n');
        }
        s.push_str("Pointwise intervals\n");
        s.push_str(&format!(
            "{:>6} {:>6} {:>6} {:>14} {:>8} {:>8} {:>8} {:>8}\n",
            "1-a", "n", "m", "Average width", "Average", "Min", "Max", "Failed"
        ));
        for c in &report.pointwise {
            s.push_str(&format!(
                "{:>6.2} {:>6} {:>6} {:>14.2} {:>8.3} {:>8.3} {:>8.3} {:>8}\n",
                1.0 - c.alpha,
                c.n,
                c.m,
                c.median_average_width,
                c.average_coverage,
                c.min_coverage,
                c.max_coverage,
                c.failures
            ));
        }
    }
    s
}
