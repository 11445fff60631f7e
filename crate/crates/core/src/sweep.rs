//! One-parameter sweeps of a scenario.

use serde::{Deserialize, Serialize};
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::figures::{linspace, par_rows, Table};
use crate::report::{pair_correlations, PairCorrelations};
use crate::unruh::{FrameScenario, Setting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    S,
    R,
    W,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::S => "s",
            SweepParameter::R => "r",
            SweepParameter::W => "w",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub scenario: FrameScenario,
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub output: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

/// One sweep point in JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub s: f64,
    pub w: f64,
    pub r: f64,
    #[serde(flatten)]
    pub correlations: PairCorrelations,
}

fn invalid(reason: &'static str, value: f64) -> Error {
    Error::InvalidParameter {
        name: "sweep",
        value,
        reason,
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start > self.stop {
            return Err(invalid("start must not exceed stop", self.start));
        }
        if self.steps < 2 {
            return Err(invalid("steps must be at least 2", self.steps as f64));
        }
        match (self.parameter, self.scenario.setting) {
            (SweepParameter::W, Setting::Inertial | Setting::A) => {
                Err(Error::Unsupported("w is only swept in setting b".into()))
            }
            (SweepParameter::R, Setting::Inertial) => {
                Err(Error::Unsupported("r has no effect in the inertial setting".into()))
            }
            _ => Ok(()),
        }
    }

    /// The scenario at each sweep value.
    pub fn scenarios(&self) -> Result<Vec<FrameScenario>> {
        self.validate()?;
        linspace(self.start, self.stop, self.steps)
            .into_iter()
            .map(|x| {
                let mut sc = self.scenario;
                match self.parameter {
                    SweepParameter::S => sc.s = x,
                    SweepParameter::R => sc.r = x,
                    SweepParameter::W => sc.w = x,
                }
                sc.validate()?;
                Ok(sc)
            })
            .collect()
    }
}

pub fn run_sweep(spec: &SweepSpec, budget: usize) -> Result<Vec<SweepRow>> {
    let scenarios = spec.scenarios()?;
    let rows = par_rows(&scenarios, |sc| {
        let c = pair_correlations(sc, budget)?;
        let (s, w, r) = sc.effective_parameters();
        Ok([s, w, r].into_iter().chain(c.values()).collect())
    })?;
    Ok(rows
        .into_iter()
        .map(|v| SweepRow {
            s: v[0],
            w: v[1],
            r: v[2],
            correlations: PairCorrelations {
                i2: v[3],
                j2_a_given_r: v[4],
                j2_r_given_a: v[5],
                d2_a_given_r: v[6],
                d2_r_given_a: v[7],
                e2: v[8],
            },
        })
        .collect())
}

/// CSV table: swept value first, then the pair correlations.
pub fn sweep_table(spec: &SweepSpec, rows: &[SweepRow]) -> Table {
    let header = std::iter::once(spec.parameter.name())
        .chain(PairCorrelations::COLUMNS)
        .map(String::from)
        .collect();
    let rows = rows
        .iter()
        .map(|row| {
            let x = match spec.parameter {
                SweepParameter::S => row.s,
                SweepParameter::R => row.r,
                SweepParameter::W => row.w,
            };
            std::iter::once(x).chain(row.correlations.values()).collect()
        })
        .collect();
    Table { header, rows }
}
