//! Rectangular `(gamma, delta)` grids of a single bound, as CSV or JSON.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    deletion_only_piecewise_bound, inner_bound, insertion_only_bound, split_deletion_rate,
    spoke_bound, AlphabetSize, BoundSource, BoundValue, ErrorPoint,
};
use crate::error::{Error, Result};
use crate::geometry::linear_outer_bound;
use crate::optimizer::{combined_value, interpolated_outer_bound};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Parse(format!("unknown output format `{other}`"))),
        }
    }
}

/// Evaluates one named bound at a point.
///
/// The single-axis bounds are only defined on their axis: insertion-only at
/// `delta = 0`, deletion-only at `gamma = 0`, and a spoke at `delta = d/q`
/// (with `gamma` rescaled to the spoke's block length).
pub fn evaluate_bound(
    source: BoundSource,
    q: AlphabetSize,
    gamma: f64,
    delta: f64,
) -> Result<BoundValue> {
    let p = ErrorPoint::new(q, gamma, delta)?;
    match source {
        BoundSource::InsertionOnly => {
            if p.delta != 0.0 {
                return Err(Error::domain("insertion-only bound needs delta = 0"));
            }
            insertion_only_bound(q, p.gamma)
        }
        BoundSource::DeletionOnly => {
            if p.gamma != 0.0 {
                return Err(Error::domain("deletion-only bound needs gamma = 0"));
            }
            deletion_only_piecewise_bound(q, p.delta)
        }
        BoundSource::Spoke => {
            let (d, alpha) = split_deletion_rate(q, p.delta);
            if alpha != 1.0 || d >= q.get() {
                return Err(Error::domain(format!(
                    "spoke needs delta = d/q with d < q, got {delta}"
                )));
            }
            let keep = 1.0 - d as f64 / q.as_f64();
            spoke_bound(q, d, p.gamma / keep)
        }
        BoundSource::Inner => inner_bound(q, p.gamma, p.delta),
        BoundSource::LinearOuter => linear_outer_bound(q, p.gamma, p.delta),
        BoundSource::InterpolatedOuter => interpolated_outer_bound(q, p.gamma, p.delta),
        BoundSource::CombinedOuter => combined_value(q, p.gamma, p.delta),
    }
}

/// One grid cell, exactly as serialized.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCell {
    pub gamma: f64,
    pub delta: f64,
    pub rate: f64,
    pub feasible: bool,
    pub source: BoundSource,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceGrid {
    pub q: AlphabetSize,
    pub gamma_axis: Vec<f64>,
    pub delta_axis: Vec<f64>,
    /// Row-major: `values[i * gamma_axis.len() + j]` is at
    /// `(gamma_axis[j], delta_axis[i])`.
    pub values: Vec<SurfaceCell>,
}

/// Rounds to 12 significant digits, the precision written to CSV.
fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn linspace(hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                hi * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

impl SurfaceGrid {
    /// Evaluates `source` on `resolution` evenly spaced points per axis,
    /// covering `[0, q-1] x [0, 1-1/q]`.
    ///
    /// Cells where the bound is undefined get rate 0 and `feasible = false`.
    pub fn evaluate(q: AlphabetSize, source: BoundSource, resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::domain(format!(
                "resolution {resolution} must be at least 2"
            )));
        }
        let gamma_axis = linspace(q.max_gamma(), resolution);
        let delta_axis = linspace(q.max_delta(), resolution);
        let cells: Vec<(f64, f64)> = delta_axis
            .iter()
            .flat_map(|&d| gamma_axis.iter().map(move |&g| (g, d)))
            .collect();
        let values = cells
            .par_iter()
            .map(|&(gamma, delta)| {
                let value = match evaluate_bound(source, q, gamma, delta) {
                    Ok(v) => v,
                    Err(Error::Domain(_)) | Err(Error::DegenerateSpoke { .. }) => BoundValue {
                        rate: 0.0,
                        feasible: false,
                        source,
                        raw: None,
                    },
                    Err(e) => return Err(e),
                };
                Ok(SurfaceCell {
                    gamma,
                    delta,
                    rate: round12(value.rate),
                    feasible: value.feasible,
                    source,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SurfaceGrid {
            q,
            gamma_axis,
            delta_axis,
            values,
        })
    }

    pub fn cell(&self, delta_index: usize, gamma_index: usize) -> &SurfaceCell {
        &self.values[delta_index * self.gamma_axis.len() + gamma_index]
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for cell in &self.values {
            w.serialize(cell)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a grid written by [`SurfaceGrid::write_csv`].
    pub fn read_csv<R: Read>(q: AlphabetSize, input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let values = r
            .deserialize()
            .collect::<std::result::Result<Vec<SurfaceCell>, _>>()?;
        let mut gamma_axis = Vec::new();
        let mut delta_axis: Vec<f64> = Vec::new();
        for cell in &values {
            if delta_axis.last() != Some(&cell.delta) {
                delta_axis.push(cell.delta);
            }
            if delta_axis.len() == 1 {
                gamma_axis.push(cell.gamma);
            }
        }
        let grid = SurfaceGrid {
            q,
            gamma_axis,
            delta_axis,
            values,
        };
        grid.check_shape()?;
        Ok(grid)
    }

    fn check_shape(&self) -> Result<()> {
        let (ng, nd) = (self.gamma_axis.len(), self.delta_axis.len());
        if self.values.len() != ng * nd {
            return Err(Error::Parse(format!(
                "{} cells for a {nd}x{ng} grid",
                self.values.len()
            )));
        }
        for (k, cell) in self.values.iter().enumerate() {
            if cell.gamma != self.gamma_axis[k % ng] || cell.delta != self.delta_axis[k / ng] {
                return Err(Error::Parse(format!("cell {k} is out of row-major order")));
            }
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer(out, self)?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self> {
        let grid: SurfaceGrid = serde_json::from_reader(input)?;
        grid.check_shape()?;
        Ok(grid)
    }

    pub fn write<W: Write>(&self, format: OutputFormat, out: W) -> Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => self.write_json(out),
        }
    }
}

/// Evaluates a surface and writes it to `path`.
pub fn emit_surface(
    q: AlphabetSize,
    source: BoundSource,
    resolution: usize,
    format: OutputFormat,
    path: &Path,
) -> Result<SurfaceGrid> {
    let grid = SurfaceGrid::evaluate(q, source, resolution)?;
    let mut out = BufWriter::new(File::create(path)?);
    grid.write(format, &mut out)?;
    out.flush()?;
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u32) -> AlphabetSize {
        AlphabetSize::new(n).unwrap()
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let grid = SurfaceGrid::evaluate(q(3), BoundSource::CombinedOuter, 7).unwrap();
        let mut buf = Vec::new();
        grid.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("gamma,delta,rate,feasible,source\n"));
        assert_eq!(text.lines().count(), 50);
        assert_eq!(SurfaceGrid::read_csv(q(3), buf.as_slice()).unwrap(), grid);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let grid = SurfaceGrid::evaluate(q(4), BoundSource::Inner, 5).unwrap();
        let mut buf = Vec::new();
        grid.write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["q"], 4);
        assert_eq!(v["values"][0]["source"], "inner");
        assert_eq!(SurfaceGrid::read_json(buf.as_slice()).unwrap(), grid);
    }

    #[test]
    fn corners_and_axes() {
        for source in [
            BoundSource::Inner,
            BoundSource::CombinedOuter,
            BoundSource::LinearOuter,
        ] {
            let grid = SurfaceGrid::evaluate(q(5), source, 9).unwrap();
            assert_eq!(grid.cell(0, 0).rate, 1.0);
            assert_eq!(grid.cell(8, 8).rate, 0.0);
        }
        // single-axis bounds only fill their axis
        let ins = SurfaceGrid::evaluate(q(5), BoundSource::InsertionOnly, 5).unwrap();
        assert!(ins.cell(0, 1).rate > 0.0 && !ins.cell(1, 0).feasible);
        let spoke = SurfaceGrid::evaluate(q(5), BoundSource::Spoke, 5).unwrap();
        // delta axis is 0, 0.2, 0.4, 0.6, 0.8: every row is a spoke
        assert!(spoke.cell(2, 0).rate > 0.0);
    }

    #[test]
    fn tiny_resolution_is_rejected() {
        assert!(SurfaceGrid::evaluate(q(2), BoundSource::Inner, 1).is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(round12(0.123456789012345), 0.123456789012);
        assert_eq!(round12(1.0), 1.0);
    }
}
