//! Deterministic co-simulation of a 130 mg rolling microrobot.
//!
//! The robot is a chain: supercapacitor (or another source) powers a
//! relaxation oscillator and H-bridge, the H-bridge drives a voice coil, the
//! coil swings a magnet on a moment arm, the arm feeds a double-ratchet
//! rectifier and the rectified shaft turns the rear wheels.
//!
//! Each link of the chain lives in its own module and is generic over the
//! scalar type ([`Real`], implemented for `f32` and `f64`). Concrete `f64`
//! aliases are exported below for everyday use; the config file, sweep and
//! report layers are `f64` only.
//!
//! ```
//! use microroll_core::{config::RobotConfigFile, sim};
//!
//! let cfg = RobotConfigFile::default();
//! let mut scenario = cfg.scenario("constant_voltage").unwrap();
//! scenario.duration = 0.5;
//! let trace = sim::run(&scenario).unwrap();
//! assert!(trace.summary.distance > 0.0);
//! ```

// `!(x > 0)` is how NaN gets rejected throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod actuator;
pub mod config;
pub mod error;
pub mod explore;
pub mod mechanism;
pub mod power;
pub mod report;
pub mod scalar;
pub mod sim;
pub mod vehicle;

pub use error::{Error, Result};
pub use scalar::Real;

pub type BeamSpec = mechanism::BeamSpec<f64>;
pub type RatchetGeometry = mechanism::RatchetGeometry<f64>;
pub type DoubleRatchetState = mechanism::DoubleRatchetState<f64>;
pub type CoilSpec = actuator::CoilSpec<f64>;
pub type MagnetSpec = actuator::MagnetSpec<f64>;
pub type ArmSpec = actuator::ArmSpec<f64>;
pub type TorqueBudget = actuator::TorqueBudget<f64>;
pub type SupercapSpec = power::SupercapSpec<f64>;
pub type OscillatorSpec = power::OscillatorSpec<f64>;
pub type LoadModel = power::LoadModel<f64>;
pub type DischargeTrace = power::DischargeTrace<f64>;
pub type WheelSpec = vehicle::WheelSpec<f64>;
pub type MassBudget = vehicle::MassBudget<f64>;
pub type RobotParams = sim::RobotParams<f64>;
pub type ScenarioConfig = sim::ScenarioConfig<f64>;
pub type SimTrace = sim::SimTrace<f64>;
pub type SimSummary = sim::SimSummary<f64>;

/// Single-precision variants, mostly useful for embedded targets and for
/// checking that results do not hinge on f64 rounding.
pub mod f32 {
    pub type RatchetGeometry = crate::mechanism::RatchetGeometry<f32>;
    pub type DoubleRatchetState = crate::mechanism::DoubleRatchetState<f32>;
    pub type OscillatorSpec = crate::power::OscillatorSpec<f32>;
    pub type ScenarioConfig = crate::sim::ScenarioConfig<f32>;
    pub type SimTrace = crate::sim::SimTrace<f32>;
}
