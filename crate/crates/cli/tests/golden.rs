//! Byte-level check of the CSV trace. Regenerate with `UPDATE_GOLDEN=1`.

use std::fs;
use std::path::Path;

use microroll::{cmd_simulate, RunOverrides};
use microroll_core::config::RobotConfigFile;
use microroll_core::report::TRACE_HEADER;

const SHORT: RunOverrides = RunOverrides { dt: Some(1e-3), duration: Some(0.1) };

#[test]
fn constant_voltage_trace_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cv.csv");
    cmd_simulate(&RobotConfigFile::default(), "constant_voltage", SHORT, Some(&out)).unwrap();
    let got = fs::read_to_string(&out).unwrap();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/constant_voltage.csv");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(golden.parent().unwrap()).unwrap();
        fs::write(&golden, &got).unwrap();
    }
    assert_eq!(got, fs::read_to_string(&golden).unwrap());
}

#[test]
fn every_scenario_has_the_same_columns() {
    let cfg = RobotConfigFile::default();
    let dir = tempfile::tempdir().unwrap();
    for name in ["supercap", "constant_voltage", "laser"] {
        let out = dir.path().join(format!("{name}.csv"));
        cmd_simulate(&cfg, name, SHORT, Some(&out)).unwrap();
        let text = fs::read_to_string(&out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(TRACE_HEADER));
        for line in lines.take_while(|l| !l.starts_with('#')) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells.len(), 9, "{name}: {line}");
            // 9 significant digits: d.dddddddde±xx
            for c in cells {
                let mantissa = c.trim_start_matches('-').split('e').next().unwrap();
                assert_eq!(mantissa.len(), 10, "{c}");
            }
        }
        assert!(text.lines().any(|l| l.starts_with("# runtime_s=")));
    }
}
