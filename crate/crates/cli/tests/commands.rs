use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use approx::assert_relative_eq;
use microroll::{cmd_calibrate, cmd_simulate, load_config, CalibrationTargets, RunOverrides};
use microroll_core::config::RobotConfigFile;
use microroll_core::report::TRACE_HEADER;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn microroll(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_microroll"))
        .args(args)
        .env_remove(microroll::CONFIG_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn analyze_prints_budget() {
    let o = microroll(&["analyze"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    for needle in ["friction", "magnet weight", "oscillator frequency", "backlash", "total mass", "129.7"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn missing_field_exits_2_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    let text = RobotConfigFile::default().to_toml_string().replace("arm_length_mm", "# arm_length_mm");
    fs::write(&path, text).unwrap();
    let o = microroll(&["--config", path.to_str().unwrap(), "analyze"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("actuator.arm") && err.contains("arm_length_mm"), "{err}");
}

#[test]
fn unknown_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.toml");
    let text = RobotConfigFile::default().to_toml_string().replace("[power]\n", "[power]\nvolts = 3.0\n");
    fs::write(&path, text).unwrap();
    let o = microroll(&["--config", path.to_str().unwrap(), "analyze"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("volts"));
}

#[test]
fn lossless_robot_has_zero_budget() {
    let mut cfg = RobotConfigFile::default();
    cfg.mechanism.ratchet.friction_coeff = 0.0;
    cfg.mechanism.ratchet.tooth_height_um = 0.0;
    cfg.actuator.magnet.mass_mg = 0.0;
    let r = microroll::cmd_analyze(&cfg).unwrap();
    assert_eq!(r.torque.total(), 0.0);
}

#[test]
fn simulate_writes_csv_and_reports_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.csv");
    let o =
        microroll(&["simulate", "--scenario", "constant_voltage", "--duration", "0.2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some(TRACE_HEADER));

    let bad = dir.path().join("missing/dir/trace.csv");
    let o =
        microroll(&["simulate", "--scenario", "constant_voltage", "--duration", "0.2", "--out", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}

#[test]
fn zero_duration_exits_2() {
    let o = microroll(&["simulate", "--scenario", "constant_voltage", "--duration", "0"]);
    assert_eq!(code(&o), 2);
    let o = microroll(&["simulate", "--scenario", "constant_voltage", "--dt", "0.01"]);
    assert_eq!(code(&o), 2);
    let o = microroll(&["simulate", "--scenario", "nope"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn laser_run_slips() {
    let cfg = load_config(Some(&configs().join("calibrated.toml"))).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("laser.csv");
    let tr = cmd_simulate(&cfg, "laser", RunOverrides::default(), Some(&out)).unwrap();
    assert!(tr.summary.shaft_rotation > 0.0);
    let text = fs::read_to_string(&out).unwrap();
    for line in text.lines().skip(1).filter(|l| !l.starts_with('#')) {
        assert_eq!(line.split(',').nth(7), Some("0.00000000e+00"));
    }
}

#[test]
fn config_dir_env_supplies_default() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RobotConfigFile::default();
    cfg.actuator.arm.arm_length_mm = 16.0;
    fs::write(dir.path().join("default.toml"), cfg.to_toml_string()).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_microroll"))
        .arg("analyze")
        .env(microroll::CONFIG_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    // Doubling the arm halves the required current.
    assert!(String::from_utf8(o.stdout).unwrap().contains("0.2620 mA"));
}

#[test]
fn calibrate_round_trip_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cal.toml");
    let o = microroll(&[
        "calibrate",
        "--runtime-s",
        "8",
        "--wheel-rate-dps",
        "300",
        "--speed-mm-s",
        "27",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let table = String::from_utf8(o.stdout).unwrap();
    assert!(table.contains("before") && table.contains("after"));
    let cfg = load_config(Some(&out)).unwrap();
    assert_relative_eq!(cfg.power.quiescent_resistance_ohm.unwrap(), 809.0, max_relative = 2e-3);
    assert_relative_eq!(cfg.vehicle.effective_radius_mm.unwrap(), 5.1566, max_relative = 1e-4);

    assert_eq!(code(&microroll(&["calibrate", "--runtime-s", "60"])), 4);
    assert_eq!(code(&microroll(&["calibrate", "--runtime-s", "0.001"])), 4);
    assert_eq!(code(&microroll(&["calibrate"])), 2);
}

#[test]
fn calibrating_to_predictions_changes_nothing() {
    let cfg = load_config(Some(&configs().join("calibrated.toml"))).unwrap();
    let cal = cmd_calibrate(
        &cfg,
        CalibrationTargets { runtime: Some(8.0), wheel_rate: Some(300.0), speed: Some(27e-3) },
        None,
    )
    .unwrap();
    for row in &cal.table {
        assert_relative_eq!(row.before, row.after, max_relative = 1e-3);
    }
}

fn write_spec(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("sweep.toml");
    fs::write(&path, body).unwrap();
    path
}

#[test]
fn sweep_command() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        dir.path(),
        "parameter = \"power.oscillator.frequency_hz\"\nscenario = \"constant_voltage\"\nvalues = [20.0, 40.0, 80.0]\nobjectives = [\"distance\", \"mean_coil_power\"]\n",
    );
    let out = dir.path().join("sweep.csv");
    let o = microroll(&["sweep", "--spec", spec.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').take(3).map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_relative_eq!(rows[1][1] / rows[0][1], 2.0, max_relative = 0.03);
    assert_relative_eq!(rows[2][1] / rows[1][1], 2.0, max_relative = 0.03);
    assert_relative_eq!(rows[2][2], rows[0][2], max_relative = 0.01);

    let empty = write_spec(
        dir.path(),
        "parameter = \"actuator.arm.arm_length_mm\"\nscenario = \"constant_voltage\"\nvalues = []\n",
    );
    assert_eq!(code(&microroll(&["sweep", "--spec", empty.to_str().unwrap()])), 2);
    let bad =
        write_spec(dir.path(), "parameter = \"actuator.arm.bogus\"\nscenario = \"constant_voltage\"\nvalues = [1.0]\n");
    assert_eq!(code(&microroll(&["sweep", "--spec", bad.to_str().unwrap()])), 2);
}

#[test]
fn single_value_sweep_matches_simulate() {
    let cfg = RobotConfigFile::default();
    let spec = microroll_core::explore::SweepSpec {
        parameter: "actuator.arm.arm_length_mm".into(),
        scenario: "constant_voltage".into(),
        values: vec![cfg.actuator.arm.arm_length_mm],
        range: None,
        objectives: vec![
            microroll_core::explore::Objective::Runtime,
            microroll_core::explore::Objective::Distance,
            microroll_core::explore::Objective::MeanCoilPower,
        ],
    };
    let dir = tempfile::tempdir().unwrap();
    let rows = microroll::cmd_sweep(&cfg, &spec, Some(&dir.path().join("s.csv"))).unwrap();
    let tr = cmd_simulate(&cfg, "constant_voltage", RunOverrides::default(), Some(&dir.path().join("t.csv"))).unwrap();
    let s = tr.summary;
    assert_eq!(rows[0].outcome, Ok(vec![s.runtime, s.distance, s.mean_coil_power]));
}
