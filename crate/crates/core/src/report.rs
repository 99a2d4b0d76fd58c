//! Text and CSV output: the static design report, simulation traces and
//! sweep tables.

use std::fmt;
use std::io::{self, Write};

use crate::actuator::{drive_torque, required_current, CoilDrive, TorqueBudget};
use crate::error::Result;
use crate::explore::{SweepRow, SweepSpec};
use crate::mechanism::{backlash, beam_stiffness, friction_torque};
use crate::sim::{RobotParams, SimTrace};
use crate::vehicle::{ground_speed, total_mass, wheel_rate};

pub const TRACE_HEADER: &str = "t_s,vcap_V,vcoil_V,icoil_A,arm_deg,shaft_deg,rate_dps,pos_m,pcoil_W";

/// Scientific notation with 9 significant digits and a signed two-digit
/// exponent, e.g. `1.50000000e+00`.
pub fn sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.8e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent is always present");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

pub fn write_trace_csv<W: Write>(mut w: W, scenario: &str, trace: &SimTrace<f64>) -> io::Result<()> {
    writeln!(w, "{TRACE_HEADER}")?;
    for s in &trace.samples {
        let row = [
            s.time,
            s.cap_voltage,
            s.coil_voltage,
            s.coil_current,
            s.arm_angle,
            s.shaft_angle,
            s.wheel_rate,
            s.position,
            s.coil_power,
        ];
        let cells: Vec<String> = row.iter().map(|&x| sci(x)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    let m = &trace.summary;
    writeln!(w, "# scenario={scenario}")?;
    writeln!(w, "# runtime_s={}", sci(m.runtime))?;
    writeln!(w, "# distance_m={}", sci(m.distance))?;
    writeln!(w, "# shaft_rotation_deg={}", sci(m.shaft_rotation))?;
    writeln!(w, "# mean_wheel_rate_dps={}", sci(m.mean_wheel_rate))?;
    writeln!(w, "# mean_speed_m_per_s={}", sci(m.mean_speed))?;
    writeln!(w, "# mean_coil_power_W={}", sci(m.mean_coil_power))?;
    writeln!(w, "# mean_source_power_W={}", sci(m.mean_source_power))?;
    writeln!(w, "# locked_out={}", trace.locked_out)?;
    for warning in &trace.warnings {
        writeln!(w, "# warning: {warning}")?;
    }
    w.flush()
}

pub fn write_sweep_csv<W: Write>(mut w: W, spec: &SweepSpec, rows: &[SweepRow]) -> io::Result<()> {
    let mut header = vec![spec.parameter.clone()];
    header.extend(spec.objectives.iter().map(|o| o.column().to_owned()));
    header.push("error".into());
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        let mut cells = vec![sci(row.value)];
        match &row.outcome {
            Ok(values) => {
                cells.extend(values.iter().map(|&v| sci(v)));
                cells.push(String::new());
            }
            Err(e) => {
                cells.extend(spec.objectives.iter().map(|_| String::new()));
                cells.push(format!("\"{}\"", e.replace('"', "'")));
            }
        }
        writeln!(w, "{}", cells.join(","))?;
    }
    w.flush()
}

/// Closed-form design figures of a robot.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticReport {
    pub beam_stiffness: f64,
    pub contact_force: f64,
    pub torque: TorqueBudget<f64>,
    pub drive: CoilDrive<f64>,
    pub drive_torque_at_cutoff: f64,
    pub oscillator_frequency: f64,
    pub backlash: f64,
    pub wheel_rate: f64,
    pub ground_speed: f64,
    pub total_mass_mg: f64,
    pub warnings: Vec<String>,
}

pub fn analyze(p: &RobotParams<f64>) -> Result<StaticReport> {
    p.validate()?;
    let torque = p.torque_budget()?;
    let drive = required_current(torque.motion_threshold(), &p.coil, &p.arm)?;
    let frequency = p.oscillator.frequency();
    let rate = wheel_rate(frequency, p.net_stroke);
    let drive_at_cutoff = drive_torque(&p.coil, &p.arm, p.cutoff);
    let mut warnings: Vec<String> = p.stroke_warning().into_iter().collect();
    if drive_at_cutoff < torque.motion_threshold() {
        warnings.push(format!("drive torque at the {} V cutoff is below the start threshold", p.cutoff));
    }
    Ok(StaticReport {
        beam_stiffness: beam_stiffness(&p.beam)?,
        contact_force: friction_torque(&p.beam, &p.ratchet)?.contact_force,
        torque,
        drive,
        drive_torque_at_cutoff: drive_at_cutoff,
        oscillator_frequency: frequency,
        backlash: backlash(&p.ratchet),
        wheel_rate: rate,
        ground_speed: ground_speed(rate, &p.wheel),
        total_mass_mg: total_mass(&p.mass),
        warnings,
    })
}

impl fmt::Display for StaticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.torque;
        writeln!(f, "ratchet")?;
        writeln!(f, "  beam stiffness         {:>10.4} N/m", self.beam_stiffness)?;
        writeln!(f, "  contact force / beam   {:>10.4} mN", self.contact_force * 1e3)?;
        writeln!(f, "  backlash               {:>10.4} deg", self.backlash)?;
        writeln!(f, "starting torque")?;
        writeln!(f, "  friction               {:>10.4} uN·m", t.friction * 1e6)?;
        writeln!(f, "  tooth dissipation      {:>10.4} uN·m", t.dissipation * 1e6)?;
        writeln!(f, "  magnet weight          {:>10.4} uN·m", t.gravity * 1e6)?;
        writeln!(f, "  modelled total         {:>10.4} uN·m", t.total() * 1e6)?;
        if let Some(m) = t.measured_threshold {
            writeln!(f, "  measured threshold     {:>10.4} uN·m", m * 1e6)?;
        }
        writeln!(f, "coil at threshold")?;
        writeln!(f, "  current                {:>10.4} mA", self.drive.current * 1e3)?;
        writeln!(f, "  heat                   {:>10.4} mW", self.drive.coil_heat * 1e3)?;
        writeln!(f, "  voltage                {:>10.4} V", self.drive.coil_voltage)?;
        writeln!(f, "  torque at cutoff       {:>10.4} uN·m", self.drive_torque_at_cutoff * 1e6)?;
        writeln!(f, "drive")?;
        writeln!(f, "  oscillator frequency   {:>10.4} Hz", self.oscillator_frequency)?;
        writeln!(f, "  wheel rate             {:>10.4} deg/s", self.wheel_rate)?;
        writeln!(f, "  ground speed           {:>10.4} mm/s", self.ground_speed * 1e3)?;
        writeln!(f, "  total mass             {:>10.4} mg", self.total_mass_mg)?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explore::Objective;
    use crate::sim::{run, ScenarioConfig, Source};
    use approx::assert_relative_eq;

    #[test]
    fn sci_format() {
        assert_eq!(sci(1.5), "1.50000000e+00");
        assert_eq!(sci(0.0), "0.00000000e+00");
        assert_eq!(sci(-2.4273e-3), "-2.42730000e-03");
        assert_eq!(sci(123456789012.0), "1.23456789e+11");
        assert_eq!(sci(1e-100), "1.00000000e-100");
    }

    #[test]
    fn trace_csv_shape() {
        let sc = ScenarioConfig {
            source: Source::ConstantVoltage { voltage: 1.0 },
            slipping: false,
            duration: 0.01,
            dt: 1e-3,
            robot: RobotParams::default(),
        };
        let tr = run(&sc).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, "cv", &tr).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(TRACE_HEADER));
        let data: Vec<&str> = lines.clone().take_while(|l| !l.starts_with('#')).collect();
        assert_eq!(data.len(), tr.samples.len());
        assert!(data.iter().all(|l| l.split(',').count() == 9));
        assert!(text.contains("# runtime_s="));
    }

    #[test]
    fn sweep_csv_marks_failures() {
        let spec = SweepSpec {
            parameter: "a".into(),
            scenario: "s".into(),
            values: vec![1.0, 2.0],
            range: None,
            objectives: vec![Objective::Runtime],
        };
        let rows =
            vec![SweepRow { value: 1.0, outcome: Ok(vec![3.0]) }, SweepRow { value: 2.0, outcome: Err("bad".into()) }];
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &spec, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("a,runtime_s,error"));
        assert!(text.lines().nth(2).unwrap().ends_with(",\"bad\""));
    }

    #[test]
    fn reference_report() {
        let r = analyze(&RobotParams::default()).unwrap();
        assert_relative_eq!(r.drive.current, 0.524e-3, max_relative = 1e-3);
        assert_relative_eq!(r.oscillator_frequency, 20.687, max_relative = 1e-4);
        assert_relative_eq!(r.total_mass_mg, 129.7, max_relative = 1e-12);
        assert_eq!(r.warnings.len(), 1);
        let text = r.to_string();
        assert!(text.contains("measured threshold"));
    }
}
