//! Tabular output of trajectories and sampled curves as CSV or JSON.
//!
//! Floats are written in shortest round-trip decimal form, so parsing an
//! emitted table reproduces every value bit for bit.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{EngelError, Result};
use crate::geodesics::{GeodesicCase, SampledCurve};
use crate::hamiltonian::{normal_hamiltonian, Multiplier, Trajectory};

pub const TRAJECTORY_COLUMNS: [&str; 10] = ["s", "x1", "x2", "y", "z", "xi1", "xi2", "xi3", "xi4", "H"];
pub const CURVE_COLUMNS: [&str; 5] = ["s", "x1", "x2", "y", "z"];
pub const PROJECTION_COLUMNS: [&str; 2] = ["x1", "x2"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub case: Option<GeodesicCase>,
    pub xi0: f64,
    pub xi: [f64; 4],
    pub h: f64,
    #[serde(rename = "H0")]
    pub h0: f64,
    pub drift: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = EngelError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(EngelError::Parse(format!("unknown format {s:?}"))),
        }
    }
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl Table {
    /// Ten-column phase-space table with the Hamiltonian at each sample.
    pub fn from_trajectory(traj: &Trajectory) -> Self {
        let rows = traj
            .samples
            .iter()
            .map(|st| {
                let p = st.point;
                let x = st.covector.xi;
                vec![st.s, p.x1, p.x2, p.y, p.z, x[0], x[1], x[2], x[3], normal_hamiltonian(st)]
            })
            .collect();
        let initial = traj.meta.initial;
        Self {
            columns: columns(&TRAJECTORY_COLUMNS),
            rows,
            metadata: Some(Metadata {
                case: traj.meta.case,
                xi0: initial.xi0.value(),
                xi: initial.xi,
                h: traj.h,
                h0: traj.meta.h0,
                drift: Some(traj.meta.drift),
            }),
        }
    }

    /// Five-column `s,x1,x2,y,z` table.
    pub fn from_curve(curve: &SampledCurve, metadata: Option<Metadata>) -> Self {
        let rows = curve
            .s
            .iter()
            .zip(&curve.points)
            .map(|(&s, p)| vec![s, p.x1, p.x2, p.y, p.z])
            .collect();
        Self { columns: columns(&CURVE_COLUMNS), rows, metadata }
    }

    /// Two-column `(x1, x2)` projection.
    pub fn projection(curve: &SampledCurve) -> Self {
        let rows = curve.points.iter().map(|p| vec![p.x1, p.x2]).collect();
        Self { columns: columns(&PROJECTION_COLUMNS), rows, metadata: None }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{v:?}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| EngelError::Parse("empty CSV".into()))?;
        let columns: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
        let mut rows = Vec::new();
        for (n, line) in lines.enumerate() {
            let row = line
                .split(',')
                .map(|f| {
                    f.trim()
                        .parse::<f64>()
                        .map_err(|e| EngelError::Parse(format!("row {}: {f:?}: {e}", n + 1)))
                })
                .collect::<Result<Vec<f64>>>()?;
            if row.len() != columns.len() {
                return Err(EngelError::Parse(format!(
                    "row {} has {} fields, header has {}",
                    n + 1,
                    row.len(),
                    columns.len()
                )));
            }
            rows.push(row);
        }
        Ok(Self { columns, rows, metadata: None })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| EngelError::Parse(e.to_string()))
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn parse(text: &str, format: Format) -> Result<Self> {
        match format {
            Format::Csv => Self::from_csv(text),
            Format::Json => Self::from_json(text),
        }
    }
}

/// Metadata for a closed-form curve.
pub fn curve_metadata(case: GeodesicCase, xi0: Multiplier, xi: [f64; 4], h: f64, h0: f64) -> Metadata {
    Metadata { case: Some(case), xi0: xi0.value(), xi, h, h0, drift: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let t = Table {
            columns: columns(&PROJECTION_COLUMNS),
            rows: vec![vec![0.1 + 0.2, -0.0], vec![1e-300, f64::MAX], vec![std::f64::consts::PI, -1.0 / 3.0]],
            metadata: None,
        };
        let back = Table::from_csv(&t.to_csv()).unwrap();
        for (a, b) in t.rows.iter().flatten().zip(back.rows.iter().flatten()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn json_round_trip_keeps_metadata() {
        let t = Table {
            columns: columns(&CURVE_COLUMNS),
            rows: vec![vec![0.0, 1.0 / 7.0, 2.0, 3.0, 4.0]],
            metadata: Some(curve_metadata(
                GeodesicCase::LightLike,
                Multiplier::Normal,
                [1.0, 1.0, 0.0, 0.0],
                0.01,
                0.0,
            )),
        };
        let text = t.to_json();
        assert!(text.contains("\"H0\""));
        assert_eq!(Table::from_json(&text).unwrap(), t);
    }

    #[test]
    fn ragged_csv_rejected() {
        assert!(Table::from_csv("a,b\n1,2\n3\n").is_err());
        assert!(Table::from_csv("a\nfoo\n").is_err());
    }
}
