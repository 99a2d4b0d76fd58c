//! TOML robot description.
//!
//! Keys carry their unit as a suffix (`_mm`, `_um`, `_v`, ...). Unknown keys
//! are rejected and every error names the offending key path.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::actuator::{ArmSpec, CoilSpec, MagnetSpec};
use crate::error::{Error, Result};
use crate::mechanism::{BeamSpec, RatchetGeometry};
use crate::power::{OscillatorSpec, SupercapSpec, DEFAULT_DT};
use crate::sim::{RobotParams, ScenarioConfig, Source};
use crate::vehicle::{MassBudget, WheelSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotConfigFile {
    pub mechanism: MechanismSection,
    pub actuator: ActuatorSection,
    pub power: PowerSection,
    pub vehicle: VehicleSection,
    #[serde(default)]
    pub scenarios: BTreeMap<String, ScenarioSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanismSection {
    pub beam: BeamSection,
    pub ratchet: RatchetSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamSection {
    pub modulus_gpa: f64,
    pub thickness_um: f64,
    pub width_mm: f64,
    pub beam_length_mm: f64,
    pub pre_deflection_mm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatchetSection {
    pub tooth_pitch_deg: f64,
    pub tooth_height_um: f64,
    pub shaft_radius_mm: f64,
    pub beams_per_ring: u32,
    pub friction_coeff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActuatorSection {
    pub gravity_m_per_s2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured_threshold_unm: Option<f64>,
    pub coil: CoilSection,
    pub magnet: MagnetSection,
    pub arm: ArmSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoilSection {
    pub turns: u32,
    pub inner_diameter_mm: f64,
    pub outer_diameter_mm: f64,
    pub height_mm: f64,
    pub resistance_ohm: f64,
    pub b_avg_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MagnetSection {
    pub mass_mg: f64,
    pub diameter_mm: f64,
    pub height_mm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArmSection {
    pub arm_length_mm: f64,
    pub stroke_limit_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerSection {
    pub cutoff_v: f64,
    pub divider_resistance_ohm: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiescent_resistance_ohm: Option<f64>,
    pub supercap: SupercapSection,
    pub oscillator: OscillatorSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupercapSection {
    pub capacitance_mf: f64,
    pub esr_ohm: f64,
    pub rated_voltage_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorSection {
    pub r_ohm: f64,
    pub c_uf: f64,
    pub r1_ohm: f64,
    pub r2_ohm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleSection {
    pub nominal_radius_mm: f64,
    /// Defaults to the nominal radius.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective_radius_mm: Option<f64>,
    pub net_stroke_deg: f64,
    #[serde(default)]
    pub mass_budget: Vec<MassEntrySection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassEntrySection {
    pub name: String,
    pub mass_mg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKindName {
    Supercap,
    ConstantVoltage,
    IntermittentLaser,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub source: SourceKindName,
    /// Initial supercapacitor terminal voltage.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v0_v: Option<f64>,
    /// Supply voltage of the constant and laser sources.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub voltage_v: Option<f64>,
    /// `[start, end]` windows during which the laser is on.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub on_off_schedule_s: Vec<[f64; 2]>,
    #[serde(default)]
    pub slipping: bool,
    pub duration_s: f64,
    #[serde(default = "default_dt")]
    pub dt_s: f64,
}

fn default_dt() -> f64 {
    DEFAULT_DT
}

impl Default for RobotConfigFile {
    /// The reference robot, uncalibrated.
    fn default() -> Self {
        let params = RobotParams::<f64>::default();
        let mut scenarios = BTreeMap::new();
        scenarios.insert(
            "supercap".to_owned(),
            ScenarioSection {
                source: SourceKindName::Supercap,
                v0_v: Some(3.0),
                voltage_v: None,
                on_off_schedule_s: Vec::new(),
                slipping: false,
                duration_s: 60.0,
                dt_s: DEFAULT_DT,
            },
        );
        scenarios.insert(
            "constant_voltage".to_owned(),
            ScenarioSection {
                source: SourceKindName::ConstantVoltage,
                v0_v: None,
                voltage_v: Some(1.0),
                on_off_schedule_s: Vec::new(),
                slipping: false,
                duration_s: 5.0,
                dt_s: DEFAULT_DT,
            },
        );
        scenarios.insert(
            "laser".to_owned(),
            ScenarioSection {
                source: SourceKindName::IntermittentLaser,
                v0_v: None,
                voltage_v: Some(1.5),
                on_off_schedule_s: vec![[0.5, 2.5], [3.5, 5.5]],
                slipping: true,
                duration_s: 6.0,
                dt_s: DEFAULT_DT,
            },
        );
        let mut cfg = Self::from_params(&params);
        cfg.scenarios = scenarios;
        cfg
    }
}

fn err(path: &str, message: impl Into<String>) -> Error {
    Error::Config { path: path.to_owned(), message: message.into() }
}

/// Drops the last few bits of unit-conversion noise (12.700000000000001).
fn tidy(x: f64) -> f64 {
    format!("{x:.11e}").parse().unwrap_or(x)
}

struct Checker(Vec<Error>);

impl Checker {
    fn positive(&mut self, path: &str, v: f64) {
        if !(v.is_finite() && v > 0.0) {
            self.0.push(err(path, format!("must be positive, got {v}")));
        }
    }

    fn non_negative(&mut self, path: &str, v: f64) {
        if !(v.is_finite() && v >= 0.0) {
            self.0.push(err(path, format!("must be non-negative, got {v}")));
        }
    }

    fn require(&mut self, path: &str, ok: bool, message: &str) {
        if !ok {
            self.0.push(err(path, message));
        }
    }
}

impl RobotConfigFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let de = toml::de::Deserializer::parse(text).map_err(|e| err("<document>", e.message()))?;
        let cfg: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            err(if path == "." { "<root>" } else { &path }, e.inner().message())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config always serialises")
    }

    /// Range checks on every field; the first failure is returned with its
    /// key path.
    pub fn validate(&self) -> Result<()> {
        let mut c = Checker(Vec::new());
        let b = &self.mechanism.beam;
        c.positive("mechanism.beam.modulus_gpa", b.modulus_gpa);
        c.positive("mechanism.beam.thickness_um", b.thickness_um);
        c.positive("mechanism.beam.width_mm", b.width_mm);
        c.positive("mechanism.beam.beam_length_mm", b.beam_length_mm);
        c.non_negative("mechanism.beam.pre_deflection_mm", b.pre_deflection_mm);
        let r = &self.mechanism.ratchet;
        c.positive("mechanism.ratchet.tooth_pitch_deg", r.tooth_pitch_deg);
        if r.tooth_pitch_deg > 0.0 {
            let teeth = 360.0 / r.tooth_pitch_deg;
            c.require(
                "mechanism.ratchet.tooth_pitch_deg",
                (teeth - teeth.round()).abs() < 1e-9,
                "must divide 360 degrees into a whole number of teeth",
            );
        }
        c.non_negative("mechanism.ratchet.tooth_height_um", r.tooth_height_um);
        c.positive("mechanism.ratchet.shaft_radius_mm", r.shaft_radius_mm);
        c.require("mechanism.ratchet.beams_per_ring", r.beams_per_ring > 0, "needs at least one beam");
        c.require("mechanism.ratchet.friction_coeff", (0.0..1.0).contains(&r.friction_coeff), "must lie in [0, 1)");
        c.require(
            "mechanism.beam.pre_deflection_mm",
            b.pre_deflection_mm * 1e3 >= r.tooth_height_um || !(b.pre_deflection_mm >= 0.0),
            "must be at least the tooth height",
        );

        let a = &self.actuator;
        c.non_negative("actuator.gravity_m_per_s2", a.gravity_m_per_s2);
        if let Some(t) = a.measured_threshold_unm {
            c.non_negative("actuator.measured_threshold_unm", t);
        }
        c.require("actuator.coil.turns", a.coil.turns > 0, "needs at least one turn");
        c.positive("actuator.coil.inner_diameter_mm", a.coil.inner_diameter_mm);
        c.require(
            "actuator.coil.outer_diameter_mm",
            a.coil.outer_diameter_mm > a.coil.inner_diameter_mm,
            "must exceed the inner diameter",
        );
        c.positive("actuator.coil.height_mm", a.coil.height_mm);
        c.positive("actuator.coil.resistance_ohm", a.coil.resistance_ohm);
        c.positive("actuator.coil.b_avg_t", a.coil.b_avg_t);
        c.non_negative("actuator.magnet.mass_mg", a.magnet.mass_mg);
        c.positive("actuator.magnet.diameter_mm", a.magnet.diameter_mm);
        c.positive("actuator.magnet.height_mm", a.magnet.height_mm);
        c.positive("actuator.arm.arm_length_mm", a.arm.arm_length_mm);
        c.positive("actuator.arm.stroke_limit_deg", a.arm.stroke_limit_deg);

        let p = &self.power;
        c.positive("power.cutoff_v", p.cutoff_v);
        c.positive("power.divider_resistance_ohm", p.divider_resistance_ohm);
        if let Some(q) = p.quiescent_resistance_ohm {
            c.require("power.quiescent_resistance_ohm", q > 0.0, "must be positive");
        }
        c.positive("power.supercap.capacitance_mf", p.supercap.capacitance_mf);
        c.non_negative("power.supercap.esr_ohm", p.supercap.esr_ohm);
        c.positive("power.supercap.rated_voltage_v", p.supercap.rated_voltage_v);
        c.positive("power.oscillator.r_ohm", p.oscillator.r_ohm);
        c.positive("power.oscillator.c_uf", p.oscillator.c_uf);
        c.positive("power.oscillator.r1_ohm", p.oscillator.r1_ohm);
        c.positive("power.oscillator.r2_ohm", p.oscillator.r2_ohm);

        let v = &self.vehicle;
        c.positive("vehicle.nominal_radius_mm", v.nominal_radius_mm);
        if let Some(r) = v.effective_radius_mm {
            c.positive("vehicle.effective_radius_mm", r);
        }
        c.non_negative("vehicle.net_stroke_deg", v.net_stroke_deg);
        for (i, m) in v.mass_budget.iter().enumerate() {
            c.non_negative(&format!("vehicle.mass_budget[{i}].mass_mg"), m.mass_mg);
        }

        for (name, s) in &self.scenarios {
            let at = |key: &str| format!("scenarios.{name}.{key}");
            c.positive(&at("duration_s"), s.duration_s);
            c.positive(&at("dt_s"), s.dt_s);
            match s.source {
                SourceKindName::Supercap => match s.v0_v {
                    Some(v0) => {
                        c.positive(&at("v0_v"), v0);
                        c.require(&at("v0_v"), v0 <= p.supercap.rated_voltage_v, "exceeds the supercapacitor rating");
                    }
                    None => c.0.push(err(&at("v0_v"), "required for a supercap source")),
                },
                SourceKindName::ConstantVoltage | SourceKindName::IntermittentLaser => match s.voltage_v {
                    Some(volts) => c.non_negative(&at("voltage_v"), volts),
                    None => c.0.push(err(&at("voltage_v"), "required for this source")),
                },
            }
            for (i, w) in s.on_off_schedule_s.iter().enumerate() {
                c.require(
                    &at(&format!("on_off_schedule_s[{i}]")),
                    w[0] >= 0.0 && w[1] > w[0],
                    "windows need 0 <= start < end",
                );
            }
        }

        match c.0.into_iter().next() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    pub fn to_params(&self) -> RobotParams<f64> {
        let (m, a, p, v) = (&self.mechanism, &self.actuator, &self.power, &self.vehicle);
        let nominal = v.nominal_radius_mm * 1e-3;
        RobotParams {
            beam: BeamSpec {
                modulus: m.beam.modulus_gpa * 1e9,
                thickness: m.beam.thickness_um * 1e-6,
                width: m.beam.width_mm * 1e-3,
                beam_length: m.beam.beam_length_mm * 1e-3,
                pre_deflection: m.beam.pre_deflection_mm * 1e-3,
            },
            ratchet: RatchetGeometry {
                tooth_pitch: m.ratchet.tooth_pitch_deg,
                tooth_height: m.ratchet.tooth_height_um * 1e-6,
                shaft_radius: m.ratchet.shaft_radius_mm * 1e-3,
                beams_per_ring: m.ratchet.beams_per_ring,
                friction_coeff: m.ratchet.friction_coeff,
            },
            coil: CoilSpec {
                turns: a.coil.turns,
                inner_diameter: a.coil.inner_diameter_mm * 1e-3,
                outer_diameter: a.coil.outer_diameter_mm * 1e-3,
                height: a.coil.height_mm * 1e-3,
                resistance: a.coil.resistance_ohm,
                b_avg: a.coil.b_avg_t,
            },
            magnet: MagnetSpec {
                mass: a.magnet.mass_mg * 1e-6,
                diameter: a.magnet.diameter_mm * 1e-3,
                height: a.magnet.height_mm * 1e-3,
            },
            arm: ArmSpec { arm_length: a.arm.arm_length_mm * 1e-3, stroke_limit: a.arm.stroke_limit_deg },
            gravity: a.gravity_m_per_s2,
            measured_threshold: a.measured_threshold_unm.map(|t| t * 1e-6),
            supercap: SupercapSpec {
                capacitance: p.supercap.capacitance_mf * 1e-3,
                esr: p.supercap.esr_ohm,
                rated_voltage: p.supercap.rated_voltage_v,
            },
            oscillator: OscillatorSpec {
                r: p.oscillator.r_ohm,
                c: p.oscillator.c_uf * 1e-6,
                r1: p.oscillator.r1_ohm,
                r2: p.oscillator.r2_ohm,
            },
            divider_resistance: p.divider_resistance_ohm,
            quiescent_resistance: p.quiescent_resistance_ohm,
            cutoff: p.cutoff_v,
            wheel: WheelSpec {
                nominal_radius: nominal,
                effective_radius: v.effective_radius_mm.map_or(nominal, |r| r * 1e-3),
                slipping: false,
            },
            net_stroke: v.net_stroke_deg,
            mass: MassBudget::new(v.mass_budget.iter().map(|e| (e.name.clone(), e.mass_mg))),
        }
    }

    /// Inverse of [`RobotConfigFile::to_params`], without scenarios.
    pub fn from_params(r: &RobotParams<f64>) -> Self {
        let effective_radius_mm =
            (r.wheel.effective_radius != r.wheel.nominal_radius).then_some(tidy(r.wheel.effective_radius * 1e3));
        Self {
            mechanism: MechanismSection {
                beam: BeamSection {
                    modulus_gpa: tidy(r.beam.modulus * 1e-9),
                    thickness_um: tidy(r.beam.thickness * 1e6),
                    width_mm: tidy(r.beam.width * 1e3),
                    beam_length_mm: tidy(r.beam.beam_length * 1e3),
                    pre_deflection_mm: tidy(r.beam.pre_deflection * 1e3),
                },
                ratchet: RatchetSection {
                    tooth_pitch_deg: r.ratchet.tooth_pitch,
                    tooth_height_um: tidy(r.ratchet.tooth_height * 1e6),
                    shaft_radius_mm: tidy(r.ratchet.shaft_radius * 1e3),
                    beams_per_ring: r.ratchet.beams_per_ring,
                    friction_coeff: r.ratchet.friction_coeff,
                },
            },
            actuator: ActuatorSection {
                gravity_m_per_s2: r.gravity,
                measured_threshold_unm: r.measured_threshold.map(|t| tidy(t * 1e6)),
                coil: CoilSection {
                    turns: r.coil.turns,
                    inner_diameter_mm: tidy(r.coil.inner_diameter * 1e3),
                    outer_diameter_mm: tidy(r.coil.outer_diameter * 1e3),
                    height_mm: tidy(r.coil.height * 1e3),
                    resistance_ohm: r.coil.resistance,
                    b_avg_t: r.coil.b_avg,
                },
                magnet: MagnetSection {
                    mass_mg: tidy(r.magnet.mass * 1e6),
                    diameter_mm: tidy(r.magnet.diameter * 1e3),
                    height_mm: tidy(r.magnet.height * 1e3),
                },
                arm: ArmSection { arm_length_mm: tidy(r.arm.arm_length * 1e3), stroke_limit_deg: r.arm.stroke_limit },
            },
            power: PowerSection {
                cutoff_v: r.cutoff,
                divider_resistance_ohm: r.divider_resistance,
                quiescent_resistance_ohm: r.quiescent_resistance,
                supercap: SupercapSection {
                    capacitance_mf: tidy(r.supercap.capacitance * 1e3),
                    esr_ohm: r.supercap.esr,
                    rated_voltage_v: r.supercap.rated_voltage,
                },
                oscillator: OscillatorSection {
                    r_ohm: r.oscillator.r,
                    c_uf: tidy(r.oscillator.c * 1e6),
                    r1_ohm: r.oscillator.r1,
                    r2_ohm: r.oscillator.r2,
                },
            },
            vehicle: VehicleSection {
                nominal_radius_mm: tidy(r.wheel.nominal_radius * 1e3),
                effective_radius_mm,
                net_stroke_deg: r.net_stroke,
                mass_budget: r
                    .mass
                    .entries
                    .iter()
                    .map(|e| MassEntrySection { name: e.name.clone(), mass_mg: e.mass_mg })
                    .collect(),
            },
            scenarios: BTreeMap::new(),
        }
    }

    pub fn scenario_names(&self) -> impl Iterator<Item = &str> {
        self.scenarios.keys().map(String::as_str)
    }

    /// Builds the named scenario against this robot.
    pub fn scenario(&self, name: &str) -> Result<ScenarioConfig<f64>> {
        let s = self.scenarios.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.scenario_names().collect();
            err(&format!("scenarios.{name}"), format!("no such scenario (known: {})", known.join(", ")))
        })?;
        let missing = |key: &str| err(&format!("scenarios.{name}.{key}"), "required for this source");
        let source = match s.source {
            SourceKindName::Supercap => Source::Supercap { v0: s.v0_v.ok_or_else(|| missing("v0_v"))? },
            SourceKindName::ConstantVoltage => {
                Source::ConstantVoltage { voltage: s.voltage_v.ok_or_else(|| missing("voltage_v"))? }
            }
            SourceKindName::IntermittentLaser => Source::IntermittentLaser {
                voltage: s.voltage_v.ok_or_else(|| missing("voltage_v"))?,
                windows: s.on_off_schedule_s.iter().map(|w| (w[0], w[1])).collect(),
            },
        };
        Ok(ScenarioConfig { source, slipping: s.slipping, duration: s.duration_s, dt: s.dt_s, robot: self.to_params() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn default_round_trips_through_toml() {
        let cfg = RobotConfigFile::default();
        let text = cfg.to_toml_string();
        let back = RobotConfigFile::from_toml_str(&text).unwrap();
        assert_eq!(back.scenarios, cfg.scenarios);
        let (a, b) = (cfg.to_params(), back.to_params());
        assert_relative_eq!(a.beam.modulus, b.beam.modulus, max_relative = 1e-12);
        assert_eq!(a.ratchet, b.ratchet);
        assert_eq!(a.mass, b.mass);
    }

    #[test]
    fn params_survive_unit_conversion() {
        let p = RobotParams::<f64>::default();
        let q = RobotConfigFile::from_params(&p).to_params();
        assert_relative_eq!(p.beam.thickness, q.beam.thickness, max_relative = 1e-12);
        assert_relative_eq!(p.coil.outer_diameter, q.coil.outer_diameter, max_relative = 1e-12);
        assert_relative_eq!(p.magnet.mass, q.magnet.mass, max_relative = 1e-12);
        assert_relative_eq!(p.oscillator.c, q.oscillator.c, max_relative = 1e-12);
        assert_relative_eq!(p.supercap.capacitance, q.supercap.capacitance, max_relative = 1e-12);
        assert_eq!(p.wheel.effective_radius, q.wheel.effective_radius);
    }

    #[test]
    fn unknown_key_names_its_path() {
        let text = RobotConfigFile::default().to_toml_string().replace("thickness_um", "thicknes_um");
        match RobotConfigFile::from_toml_str(&text) {
            Err(Error::Config { path, message }) => {
                assert!(path.starts_with("mechanism.beam"), "{path}");
                assert!(message.contains("thicknes_um"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_key_names_its_path() {
        let text: String = RobotConfigFile::default()
            .to_toml_string()
            .lines()
            .filter(|l| !l.starts_with("resistance_ohm"))
            .collect::<Vec<_>>()
            .join("\n");
        match RobotConfigFile::from_toml_str(&text) {
            Err(Error::Config { path, message }) => {
                assert!(path.contains("actuator.coil"), "{path}");
                assert!(message.contains("resistance_ohm"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn range_errors_carry_paths() {
        let mut cfg = RobotConfigFile::default();
        cfg.mechanism.beam.thickness_um = -1.0;
        assert!(matches!(cfg.validate(), Err(Error::Config { path, .. }) if path == "mechanism.beam.thickness_um"));
        let mut cfg = RobotConfigFile::default();
        cfg.mechanism.ratchet.tooth_pitch_deg = 7.0;
        assert!(
            matches!(cfg.validate(), Err(Error::Config { path, .. }) if path == "mechanism.ratchet.tooth_pitch_deg")
        );
        let mut cfg = RobotConfigFile::default();
        cfg.scenarios.get_mut("supercap").unwrap().v0_v = None;
        assert!(matches!(cfg.validate(), Err(Error::Config { path, .. }) if path == "scenarios.supercap.v0_v"));
    }

    #[test]
    fn scenarios_build() {
        let cfg = RobotConfigFile::default();
        for name in ["supercap", "constant_voltage", "laser"] {
            cfg.scenario(name).unwrap().validate().unwrap();
        }
        assert!(cfg.scenario("nope").is_err());
    }
}
