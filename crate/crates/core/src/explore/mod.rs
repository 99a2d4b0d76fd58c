//! Parameter sweeps over a robot description and scalar design search.

pub mod search;

pub use search::{find_root, minimize_scalar, ScalarMin};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::actuator::required_current;
use crate::config::RobotConfigFile;
use crate::error::{Error, Result};
use crate::sim;

/// Sweepable key that is not stored directly: retunes the oscillator
/// capacitor to hit the frequency.
pub const FREQUENCY_PARAMETER: &str = "power.oscillator.frequency_hz";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Runtime,
    Distance,
    MeanCoilPower,
    /// Coil current needed to reach the start threshold.
    MinStartingCurrent,
}

impl Objective {
    pub const ALL: [Objective; 4] =
        [Objective::Runtime, Objective::Distance, Objective::MeanCoilPower, Objective::MinStartingCurrent];

    pub fn column(self) -> &'static str {
        match self {
            Objective::Runtime => "runtime_s",
            Objective::Distance => "distance_m",
            Objective::MeanCoilPower => "mean_coil_power_W",
            Objective::MinStartingCurrent => "min_starting_current_A",
        }
    }

    fn needs_simulation(self) -> bool {
        !matches!(self, Objective::MinStartingCurrent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub log: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    /// Dotted key path into the robot description.
    pub parameter: String,
    /// Scenario simulated for each value.
    pub scenario: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<ValueRange>,
    #[serde(default = "all_objectives")]
    pub objectives: Vec<Objective>,
}

fn all_objectives() -> Vec<Objective> {
    Objective::ALL.to_vec()
}

impl SweepSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let de = toml::de::Deserializer::parse(text)
            .map_err(|e| Error::Config { path: "<document>".into(), message: e.message().into() })?;
        serde_path_to_error::deserialize(de)
            .map_err(|e| Error::Config { path: e.path().to_string(), message: e.inner().message().to_owned() })
    }

    /// Explicit values followed by the range, in order.
    pub fn resolved_values(&self) -> Result<Vec<f64>> {
        let mut out = self.values.clone();
        if let Some(r) = self.range {
            if r.count == 0 || !(r.start.is_finite() && r.stop.is_finite()) {
                return Err(Error::Config { path: "range".into(), message: "needs finite ends and count > 0".into() });
            }
            if r.log && !(r.start > 0.0 && r.stop > 0.0) {
                return Err(Error::Config { path: "range".into(), message: "log ranges need positive ends".into() });
            }
            let (a, b) = if r.log { (r.start.ln(), r.stop.ln()) } else { (r.start, r.stop) };
            for i in 0..r.count {
                let f = if r.count == 1 { 0.0 } else { i as f64 / (r.count - 1) as f64 };
                let x = a + (b - a) * f;
                out.push(if r.log { x.exp() } else { x });
            }
        }
        if out.is_empty() {
            return Err(Error::Config { path: "values".into(), message: "the sweep has no values".into() });
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    /// Objective values in the order of [`SweepSpec::objectives`], or why
    /// this point failed.
    pub outcome: std::result::Result<Vec<f64>, String>,
}

/// Copy of `cfg` with the numeric key at `path` set to `value`.
pub fn set_parameter(cfg: &RobotConfigFile, path: &str, value: f64) -> Result<RobotConfigFile> {
    if path == FREQUENCY_PARAMETER {
        let mut out = cfg.clone();
        let osc = cfg.to_params().oscillator.tuned_to(value);
        out.power.oscillator.c_uf = osc.c * 1e6;
        return Ok(out);
    }
    let unknown = || Error::UnknownParameter(path.to_owned());
    let mut root = toml::Value::try_from(cfg).map_err(|_| unknown())?;
    let keys: Vec<&str> = path.split('.').collect();
    let (leaf, parents) = keys.split_last().ok_or_else(unknown)?;
    let mut node = &mut root;
    for key in parents {
        node = node.as_table_mut().and_then(|t| t.get_mut(*key)).ok_or_else(unknown)?;
    }
    let table = node.as_table_mut().ok_or_else(unknown)?;
    let new = match table.get(*leaf) {
        Some(toml::Value::Integer(_)) => {
            if value.fract() != 0.0 || value < 0.0 || value > f64::from(u32::MAX) {
                return Err(Error::Config { path: path.to_owned(), message: format!("{value} is not a count") });
            }
            toml::Value::Integer(value as i64)
        }
        Some(toml::Value::Float(_)) | None => toml::Value::Float(value),
        Some(_) => return Err(unknown()),
    };
    table.insert((*leaf).to_owned(), new);
    // An absent leaf is fine for optional keys; anything else is rejected here.
    root.try_into::<RobotConfigFile>().map_err(|_| unknown())
}

fn evaluate(cfg: &RobotConfigFile, spec: &SweepSpec, value: f64) -> Result<Vec<f64>> {
    let cfg = set_parameter(cfg, &spec.parameter, value)?;
    cfg.validate()?;
    let sc = cfg.scenario(&spec.scenario)?;
    let trace = if spec.objectives.iter().any(|o| o.needs_simulation()) { Some(sim::run(&sc)?) } else { None };
    spec.objectives
        .iter()
        .map(|o| {
            let summary = trace.as_ref().map(|t| t.summary);
            Ok(match (o, summary) {
                (Objective::Runtime, Some(s)) => s.runtime,
                (Objective::Distance, Some(s)) => s.distance,
                (Objective::MeanCoilPower, Some(s)) => s.mean_coil_power,
                (Objective::MinStartingCurrent, _) => {
                    let torque = sc.robot.torque_budget()?.motion_threshold();
                    required_current(torque, &sc.robot.coil, &sc.robot.arm)?.current
                }
                (_, None) => unreachable!("simulation runs whenever an objective needs it"),
            })
        })
        .collect()
}

/// Evaluates every value of the sweep. Rows keep the input order; a point
/// that fails is recorded and the rest still run.
pub fn sweep(base: &RobotConfigFile, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let values = spec.resolved_values()?;
    if spec.objectives.is_empty() {
        return Err(Error::Config { path: "objectives".into(), message: "nothing to evaluate".into() });
    }
    // Path problems affect every row, so they abort instead.
    set_parameter(base, &spec.parameter, values[0]).map_err(|e| match e {
        Error::Config { .. } => e,
        _ => Error::UnknownParameter(spec.parameter.clone()),
    })?;
    base.scenario(&spec.scenario)?;
    Ok(values
        .par_iter()
        .map(|&value| SweepRow { value, outcome: evaluate(base, spec, value).map_err(|e| e.to_string()) })
        .collect())
}
