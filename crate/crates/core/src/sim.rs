//! Fixed-step co-simulation of the whole robot.
//!
//! Every step: source → supply voltage → H-bridge → coil torque → motion
//! gate → arm → double ratchet → wheels → position, then the supercapacitor
//! (if any) is integrated over the step. A sample holds the state at the
//! start of its step, so actuation shows up one sample later. The arm is quasi-static: when the
//! drive torque clears the start threshold it sits at the stroke limit
//! matching the coil polarity, otherwise it stays where it is.

use crate::actuator::{self, ArmSpec, CoilSpec, MagnetSpec, TorqueBudget};
use crate::error::{ensure_positive, Error, Result};
use crate::mechanism::{backlash, BeamSpec, DoubleRatchetState, RatchetGeometry};
use crate::power::{hbridge_voltage, BranchEnergy, LoadModel, OscillatorSpec, SupercapCell, SupercapSpec};
use crate::vehicle::{MassBudget, WheelSpec};
use crate::Real;

/// Every physical parameter of the robot.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotParams<T> {
    pub beam: BeamSpec<T>,
    pub ratchet: RatchetGeometry<T>,
    pub coil: CoilSpec<T>,
    pub magnet: MagnetSpec<T>,
    pub arm: ArmSpec<T>,
    pub gravity: T,
    /// Measured start torque; the modelled budget is used when absent.
    pub measured_threshold: Option<T>,
    pub supercap: SupercapSpec<T>,
    pub oscillator: OscillatorSpec<T>,
    pub divider_resistance: T,
    pub quiescent_resistance: Option<T>,
    /// Undervoltage lockout of the drive electronics.
    pub cutoff: T,
    pub wheel: WheelSpec<T>,
    /// Shaft advance per oscillator cycle once backlash is taken up, degrees.
    pub net_stroke: T,
    pub mass: MassBudget<T>,
}

impl<T: Real> Default for RobotParams<T> {
    fn default() -> Self {
        Self {
            beam: BeamSpec::default(),
            ratchet: RatchetGeometry::default(),
            coil: CoilSpec::default(),
            magnet: MagnetSpec::default(),
            arm: ArmSpec::default(),
            gravity: T::lit(actuator::STANDARD_GRAVITY),
            measured_threshold: Some(T::lit(actuator::MEASURED_START_TORQUE)),
            supercap: SupercapSpec::default(),
            oscillator: OscillatorSpec::default(),
            divider_resistance: T::lit(11.2e3),
            quiescent_resistance: None,
            cutoff: T::lit(crate::power::DEFAULT_CUTOFF),
            wheel: WheelSpec::default(),
            net_stroke: T::lit(15.0),
            mass: MassBudget::reference(),
        }
    }
}

impl<T: Real> RobotParams<T> {
    pub fn validate(&self) -> Result<()> {
        self.beam.validate()?;
        self.ratchet.validate()?;
        self.coil.validate()?;
        self.magnet.validate()?;
        self.arm.validate()?;
        self.supercap.validate()?;
        self.oscillator.validate()?;
        self.load().validate()?;
        self.wheel.validate()?;
        self.mass.validate()?;
        ensure_positive("cutoff", self.cutoff)?;
        if !(self.gravity >= T::zero()) {
            return Err(Error::spec("gravity", "must be non-negative"));
        }
        if !(self.net_stroke >= T::zero()) {
            return Err(Error::spec("net_stroke", "must be non-negative"));
        }
        if let Some(t) = self.measured_threshold {
            if !(t >= T::zero()) {
                return Err(Error::spec("measured_threshold", "must be non-negative"));
            }
        }
        Ok(())
    }

    pub fn load(&self) -> LoadModel<T> {
        LoadModel {
            coil_resistance: self.coil.resistance,
            divider_resistance: self.divider_resistance,
            quiescent_resistance: self.quiescent_resistance.filter(|q| q.is_finite()),
        }
    }

    pub fn torque_budget(&self) -> Result<TorqueBudget<T>> {
        actuator::starting_torque(&self.beam, &self.ratchet, &self.magnet, &self.arm, self.gravity)
            .map(|b| b.with_measured(self.measured_threshold))
    }

    /// Arm swing between stroke limits: net stroke plus the backlash lost
    /// on every reversal.
    pub fn stroke_amplitude(&self) -> T {
        self.net_stroke + backlash(&self.ratchet)
    }

    pub fn stroke_warning(&self) -> Option<String> {
        (self.net_stroke > self.arm.stroke_limit).then(|| {
            format!("net stroke {}° exceeds the {}° slot limit of the arm", self.net_stroke, self.arm.stroke_limit)
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source<T> {
    /// Supercapacitor starting at terminal voltage `v0`.
    Supercap {
        v0: T,
    },
    ConstantVoltage {
        voltage: T,
    },
    /// Ideal supply present only inside the `(start, end)` windows.
    IntermittentLaser {
        voltage: T,
        windows: Vec<(T, T)>,
    },
}

impl<T: Real> Source<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            Source::Supercap { .. } => "supercap",
            Source::ConstantVoltage { .. } => "constant_voltage",
            Source::IntermittentLaser { .. } => "intermittent_laser",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig<T> {
    pub source: Source<T>,
    /// Wheels spin without moving the robot.
    pub slipping: bool,
    pub duration: T,
    pub dt: T,
    pub robot: RobotParams<T>,
}

impl<T: Real> ScenarioConfig<T> {
    pub fn validate(&self) -> Result<()> {
        self.robot.validate()?;
        ensure_positive("duration", self.duration)?;
        ensure_positive("dt", self.dt)?;
        let limit = self.robot.oscillator.period() / T::lit(20.0);
        if self.dt > limit {
            return Err(Error::StepSize { dt: self.dt.as_f64(), limit: limit.as_f64() });
        }
        match &self.source {
            Source::Supercap { v0 } => {
                if !(*v0 > self.robot.cutoff) {
                    return Err(Error::EmptyRun { v0: v0.as_f64(), cutoff: self.robot.cutoff.as_f64() });
                }
                if *v0 > self.robot.supercap.rated_voltage {
                    return Err(Error::spec("v0", "exceeds the supercapacitor rating"));
                }
            }
            Source::ConstantVoltage { voltage } | Source::IntermittentLaser { voltage, .. } => {
                if !(*voltage >= T::zero()) {
                    return Err(Error::spec("voltage", "must be non-negative"));
                }
            }
        }
        if let Source::IntermittentLaser { windows, .. } = &self.source {
            if windows.iter().any(|&(s, e)| !(s >= T::zero() && e > s)) {
                return Err(Error::spec("on_off_schedule", "windows need 0 <= start < end"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSample<T> {
    pub time: T,
    /// Supply rail voltage (supercapacitor terminal voltage for that source).
    pub cap_voltage: T,
    pub coil_voltage: T,
    pub coil_current: T,
    pub arm_angle: T,
    pub shaft_angle: T,
    /// Shaft advance over the last completed oscillator cycle, per second.
    pub wheel_rate: T,
    pub position: T,
    pub coil_power: T,
    pub source_power: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSummary<T> {
    /// Time the drive electronics were powered.
    pub runtime: T,
    pub distance: T,
    pub shaft_rotation: T,
    pub mean_wheel_rate: T,
    pub mean_speed: T,
    pub mean_coil_power: T,
    pub mean_source_power: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace<T> {
    pub samples: Vec<SimSample<T>>,
    pub summary: SimSummary<T>,
    pub dt: T,
    pub energy: BranchEnergy<T>,
    /// Internal supercapacitor voltage at the first and last sample.
    pub internal_voltage: Option<(T, T)>,
    /// Whether the run ended on undervoltage lockout.
    pub locked_out: bool,
    pub warnings: Vec<String>,
}

fn in_window<T: Real>(t: T, windows: &[(T, T)]) -> bool {
    windows.iter().any(|&(s, e)| t >= s && t < e)
}

/// Runs a scenario to its duration (or to lockout for a supercapacitor).
pub fn run<T: Real>(sc: &ScenarioConfig<T>) -> Result<SimTrace<T>> {
    sc.validate()?;
    let robot = &sc.robot;
    let period = robot.oscillator.period();
    let frequency = period.recip();
    let threshold = robot.torque_budget()?.motion_threshold();
    let amplitude = robot.stroke_amplitude();
    let load = robot.load();
    let load_on = load.parallel_resistance(true);
    let r_coil = robot.coil.resistance;
    let wheel = WheelSpec { slipping: sc.slipping, ..robot.wheel };
    let dt = sc.dt;

    let mut warnings: Vec<String> = robot.stroke_warning().into_iter().collect();
    for w in &warnings {
        log::warn!("{w}");
    }

    let mut cell = match sc.source {
        Source::Supercap { v0 } => Some(SupercapCell::with_terminal_voltage(robot.supercap, v0, load_on)),
        _ => None,
    };
    let v_int_start = cell.map(|c| c.internal_voltage());

    let steps = (sc.duration / dt).round().to_u64().unwrap_or(0).max(1);
    let mut samples = Vec::with_capacity(usize::try_from(steps + 1).unwrap_or(0));
    let mut energy = BranchEnergy::default();
    let mut ratchet = DoubleRatchetState::default();
    let mut arm = T::zero();
    let mut position = T::zero();
    let mut cycle = 0u64;
    let mut cycle_mark = T::zero();
    let mut rate = T::zero();
    let mut locked_out = false;

    for k in 0..=steps {
        let t = T::lit(k as f64) * dt;
        let supply = match (&sc.source, &cell) {
            (Source::Supercap { .. }, Some(c)) => c.terminal_voltage(load_on),
            (Source::ConstantVoltage { voltage }, _) => *voltage,
            (Source::IntermittentLaser { voltage, windows }, _) => {
                if in_window(t, windows) {
                    *voltage
                } else {
                    T::zero()
                }
            }
            (Source::Supercap { .. }, None) => unreachable!("supercap cell is created up front"),
        };
        if cell.is_some() && supply <= robot.cutoff {
            locked_out = true;
        }
        let v_coil = if locked_out { T::zero() } else { hbridge_voltage(supply, t, period, robot.cutoff) };
        let powered = v_coil != T::zero();

        let c = (t / period).floor().to_u64().unwrap_or(0);
        if c != cycle {
            rate = (ratchet.shaft_angle - cycle_mark) * frequency;
            cycle_mark = ratchet.shaft_angle;
            cycle = c;
        }

        let rail_load = load.parallel_resistance(powered);
        let source_power = match &cell {
            Some(c) if !locked_out => c.internal_voltage() * c.current(load_on),
            Some(_) => T::zero(),
            None if supply > T::zero() => supply * supply / rail_load,
            None => T::zero(),
        };
        samples.push(SimSample {
            time: t,
            cap_voltage: supply,
            coil_voltage: v_coil,
            coil_current: v_coil / r_coil,
            arm_angle: arm,
            shaft_angle: ratchet.shaft_angle,
            wheel_rate: rate,
            position,
            coil_power: v_coil * v_coil / r_coil,
            source_power,
        });

        if locked_out || k == steps {
            break;
        }
        if powered && actuator::drive_torque(&robot.coil, &robot.arm, v_coil.abs()) >= threshold {
            let target = if v_coil > T::zero() { amplitude } else { T::zero() };
            let delta = target - arm;
            if delta != T::zero() {
                let before = ratchet.shaft_angle;
                ratchet = ratchet.step(delta, &robot.ratchet);
                arm = target;
                if !wheel.slipping {
                    position = position + (ratchet.shaft_angle - before).deg_to_rad() * wheel.effective_radius;
                }
            }
        }
        match cell.as_mut() {
            Some(c) => {
                let i = c.current(load_on);
                energy.accumulate(&load, supply, powered, i, robot.supercap.esr, dt);
                c.advance(load_on, dt);
            }
            None if supply > T::zero() => energy.accumulate(&load, supply, powered, T::zero(), T::zero(), dt),
            None => {}
        }
    }

    let internal_voltage = v_int_start.zip(cell.map(|c| c.internal_voltage()));
    let mut trace = SimTrace {
        samples,
        summary: SimSummary {
            runtime: T::zero(),
            distance: T::zero(),
            shaft_rotation: T::zero(),
            mean_wheel_rate: T::zero(),
            mean_speed: T::zero(),
            mean_coil_power: T::zero(),
            mean_source_power: T::zero(),
        },
        dt,
        energy,
        internal_voltage,
        locked_out,
        warnings: std::mem::take(&mut warnings),
    };
    trace.summary = summarize(&trace)?;
    Ok(trace)
}

/// Recomputes the summary from the samples.
///
/// Runtime is the powered time; the last sample closes the final interval
/// and is not counted.
pub fn summarize<T: Real>(trace: &SimTrace<T>) -> Result<SimSummary<T>> {
    let (first, last) = match trace.samples.as_slice() {
        [first, .., last] => (first, last),
        _ => return Err(Error::EmptyTrace),
    };
    let open = &trace.samples[..trace.samples.len() - 1];
    let mut powered = 0u64;
    let mut coil = T::zero();
    let mut source = T::zero();
    for s in open.iter() {
        if s.coil_voltage != T::zero() {
            powered += 1;
            coil = coil + s.coil_power;
        }
        source = source + s.source_power;
    }
    let runtime = T::lit(powered as f64) * trace.dt;
    let distance = last.position - first.position;
    let shaft_rotation = last.shaft_angle - first.shaft_angle;
    let per_second = |x: T| if runtime > T::zero() { x / runtime } else { T::zero() };
    Ok(SimSummary {
        runtime,
        distance,
        shaft_rotation,
        mean_wheel_rate: per_second(shaft_rotation),
        mean_speed: per_second(distance),
        mean_coil_power: per_second(coil * trace.dt),
        mean_source_power: per_second(source * trace.dt),
    })
}
