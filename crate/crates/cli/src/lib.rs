//! Command implementations behind the `microroll` binary.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use microroll_core::config::RobotConfigFile;
use microroll_core::explore::{self, SweepRow, SweepSpec};
use microroll_core::power::{calibrate_quiescent, discharge_runtime};
use microroll_core::report::{self, StaticReport};
use microroll_core::sim::{self, Source};
use microroll_core::vehicle::{calibrate_effective_radius, calibrate_stroke, ground_speed, wheel_rate};
use microroll_core::{Error, SimTrace};

/// Directory searched for `default.toml` and for relative config paths.
pub const CONFIG_DIR_ENV: &str = "MICROROLL_CONFIG_DIR";
pub const DEFAULT_CONFIG_NAME: &str = "default.toml";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("{0}")]
    Infeasible(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Infeasible(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible(_) => CliError::Infeasible(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Resolves the config to load: an explicit path (tried as given, then
/// inside `config_dir`), else `default.toml` in `config_dir`, else `None`
/// for the built-in reference robot.
pub fn resolve_config_path(explicit: Option<&Path>, config_dir: Option<&Path>) -> Option<PathBuf> {
    match (explicit, config_dir) {
        (Some(p), Some(dir)) if !p.exists() && p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(dir)) => Some(dir.join(DEFAULT_CONFIG_NAME)).filter(|p| p.exists()),
        (None, None) => None,
    }
}

pub fn load_config(path: Option<&Path>) -> Result<RobotConfigFile, CliError> {
    let Some(path) = path else {
        return Ok(RobotConfigFile::default());
    };
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    RobotConfigFile::from_toml_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn with_output<F>(out: Option<&Path>, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| io_err(path, e))?;
            let mut w = BufWriter::new(file);
            write(&mut w).map_err(|e| io_err(path, e))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w).map_err(|e| io_err(Path::new("<stdout>"), e))
        }
    }
}

pub fn cmd_analyze(cfg: &RobotConfigFile) -> Result<StaticReport, CliError> {
    Ok(report::analyze(&cfg.to_params())?)
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOverrides {
    pub dt: Option<f64>,
    pub duration: Option<f64>,
}

pub fn cmd_simulate(
    cfg: &RobotConfigFile,
    scenario: &str,
    overrides: RunOverrides,
    out: Option<&Path>,
) -> Result<SimTrace, CliError> {
    let mut sc = cfg.scenario(scenario)?;
    if let Some(dt) = overrides.dt {
        sc.dt = dt;
    }
    if let Some(d) = overrides.duration {
        sc.duration = d;
    }
    let trace = sim::run(&sc)?;
    with_output(out, |w| report::write_trace_csv(w, scenario, &trace))?;
    Ok(trace)
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CalibrationTargets {
    /// Supercapacitor runtime, s.
    pub runtime: Option<f64>,
    /// Wheel rate, deg/s.
    pub wheel_rate: Option<f64>,
    /// Ground speed, m/s.
    pub speed: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationRow {
    pub quantity: &'static str,
    pub unit: &'static str,
    pub before: f64,
    pub after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub config: RobotConfigFile,
    pub table: Vec<CalibrationRow>,
}

impl Calibration {
    pub fn render(&self) -> String {
        let mut s = format!("{:<28} {:>14} {:>14}\n", "quantity", "before", "after");
        for r in &self.table {
            let name = format!("{} [{}]", r.quantity, r.unit);
            s.push_str(&format!("{name:<28} {:>14.6} {:>14.6}\n", r.before, r.after));
        }
        s
    }
}

/// Initial voltage and step used for runtime calibration: the first
/// supercapacitor scenario, else 3 V at the default step.
fn supercap_run(cfg: &RobotConfigFile) -> (f64, f64) {
    cfg.scenarios
        .keys()
        .filter_map(|name| cfg.scenario(name).ok())
        .find_map(|sc| match sc.source {
            Source::Supercap { v0 } => Some((v0, sc.dt)),
            _ => None,
        })
        .unwrap_or((3.0, microroll_core::power::DEFAULT_DT))
}

struct Predictions {
    runtime: f64,
    wheel_rate: f64,
    speed: f64,
}

fn predict(cfg: &RobotConfigFile) -> Result<Predictions, CliError> {
    let p = cfg.to_params();
    let (v0, dt) = supercap_run(cfg);
    let rate = wheel_rate(p.oscillator.frequency(), p.net_stroke);
    Ok(Predictions {
        runtime: discharge_runtime(&p.supercap, &p.load(), v0, p.cutoff, dt)?,
        wheel_rate: rate,
        speed: ground_speed(rate, &p.wheel),
    })
}

/// Fits quiescent draw, net stroke and rolling radius to the given targets.
pub fn cmd_calibrate(
    cfg: &RobotConfigFile,
    targets: CalibrationTargets,
    out: Option<&Path>,
) -> Result<Calibration, CliError> {
    if targets == CalibrationTargets::default() {
        return Err(CliError::Config("no calibration target given".into()));
    }
    let params = cfg.to_params();
    let before = predict(cfg)?;
    let mut next = cfg.clone();

    if let Some(runtime) = targets.runtime {
        let (v0, dt) = supercap_run(cfg);
        let mut load = params.load();
        load.quiescent_resistance = None;
        let r_q = calibrate_quiescent(&params.supercap, &load, v0, params.cutoff, runtime, dt)?;
        next.power.quiescent_resistance_ohm = r_q.is_finite().then_some(r_q);
    }
    if let Some(rate) = targets.wheel_rate {
        next.vehicle.net_stroke_deg = calibrate_stroke(rate, params.oscillator.frequency())?;
    }
    if let Some(speed) = targets.speed {
        let rate = targets.wheel_rate.unwrap_or(before.wheel_rate);
        let r = calibrate_effective_radius(speed, rate).map_err(|e| CliError::Infeasible(e.to_string()))?;
        if r.is_nan() || r <= 0.0 {
            return Err(CliError::Infeasible(format!("speed {speed} m/s needs a non-positive rolling radius")));
        }
        next.vehicle.effective_radius_mm = Some(r * 1e3);
    }
    next.validate()?;

    let after = predict(&next)?;
    let p = next.to_params();
    let table = vec![
        CalibrationRow {
            quantity: "quiescent_resistance",
            unit: "ohm",
            before: params.quiescent_resistance.unwrap_or(f64::INFINITY),
            after: p.quiescent_resistance.unwrap_or(f64::INFINITY),
        },
        CalibrationRow { quantity: "net_stroke", unit: "deg", before: params.net_stroke, after: p.net_stroke },
        CalibrationRow {
            quantity: "effective_radius",
            unit: "mm",
            before: params.wheel.effective_radius * 1e3,
            after: p.wheel.effective_radius * 1e3,
        },
        CalibrationRow { quantity: "runtime", unit: "s", before: before.runtime, after: after.runtime },
        CalibrationRow { quantity: "wheel_rate", unit: "deg/s", before: before.wheel_rate, after: after.wheel_rate },
        CalibrationRow { quantity: "speed", unit: "mm/s", before: before.speed * 1e3, after: after.speed * 1e3 },
    ];
    if let Some(path) = out {
        fs::write(path, next.to_toml_string()).map_err(|e| io_err(path, e))?;
    }
    Ok(Calibration { config: next, table })
}

pub fn load_sweep_spec(path: &Path) -> Result<SweepSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    SweepSpec::from_toml_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn cmd_sweep(cfg: &RobotConfigFile, spec: &SweepSpec, out: Option<&Path>) -> Result<Vec<SweepRow>, CliError> {
    let rows = explore::sweep(cfg, spec)?;
    with_output(out, |w| report::write_sweep_csv(w, spec, &rows))?;
    Ok(rows)
}
