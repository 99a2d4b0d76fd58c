//! Voice-coil actuator: coil force constant, magnet gravity load, the
//! starting-torque budget and electrical sizing of the coil.

use crate::error::{ensure_positive, Error, Result};
use crate::mechanism::{dissipation_torque, friction_torque, BeamSpec, RatchetGeometry};
use crate::Real;

pub const STANDARD_GRAVITY: f64 = 9.80665;

/// Measured torque at which the rectifier reliably starts, N·m.
pub const MEASURED_START_TORQUE: f64 = 4.4e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoilSpec<T> {
    pub turns: u32,
    pub inner_diameter: T,
    pub outer_diameter: T,
    pub height: T,
    /// DC resistance, Ω.
    pub resistance: T,
    /// Mean radial flux density seen by the winding, T.
    pub b_avg: T,
}

impl<T: Real> Default for CoilSpec<T> {
    /// 96×16 turns of 12 µm copper, 1.9/2.45 mm diameters, ≈1500 Ω, 0.1 T.
    fn default() -> Self {
        Self {
            turns: 96 * 16,
            inner_diameter: T::lit(1.9e-3),
            outer_diameter: T::lit(2.45e-3),
            height: T::lit(1.6e-3),
            resistance: T::lit(1500.0),
            b_avg: T::lit(0.1),
        }
    }
}

impl<T: Real> CoilSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if self.turns == 0 {
            return Err(Error::spec("coil.turns", "needs at least one turn"));
        }
        ensure_positive("coil.inner_diameter", self.inner_diameter)?;
        if !(self.outer_diameter > self.inner_diameter) {
            return Err(Error::spec("coil.outer_diameter", "must exceed the inner diameter"));
        }
        ensure_positive("coil.height", self.height)?;
        ensure_positive("coil.resistance", self.resistance)?;
        ensure_positive("coil.b_avg", self.b_avg)
    }

    /// Mean winding radius, `(d_in + d_out) / 4`.
    pub fn effective_radius(&self) -> T {
        (self.inner_diameter + self.outer_diameter) / T::lit(4.0)
    }

    /// Axial force per ampere, N/A.
    pub fn force_constant(&self) -> T {
        T::lit(f64::from(self.turns)) * self.b_avg * T::TAU() * self.effective_radius()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnetSpec<T> {
    pub mass: T,
    pub diameter: T,
    pub height: T,
}

impl<T: Real> Default for MagnetSpec<T> {
    /// 1.6 × 1.6 mm N52 cylinder, counted as 25 mg.
    fn default() -> Self {
        Self { mass: T::lit(25e-6), diameter: T::lit(1.6e-3), height: T::lit(1.6e-3) }
    }
}

impl<T: Real> MagnetSpec<T> {
    pub fn validate(&self) -> Result<()> {
        // A massless magnet is a legitimate what-if, so only the shape must be positive.
        if !(self.mass >= T::zero()) {
            return Err(Error::spec("magnet.mass", "must be non-negative"));
        }
        ensure_positive("magnet.diameter", self.diameter)?;
        ensure_positive("magnet.height", self.height)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmSpec<T> {
    pub arm_length: T,
    /// Slot limit on the arm swing, degrees.
    pub stroke_limit: T,
}

impl<T: Real> Default for ArmSpec<T> {
    fn default() -> Self {
        Self { arm_length: T::lit(8e-3), stroke_limit: T::lit(12.0) }
    }
}

impl<T: Real> ArmSpec<T> {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("arm.arm_length", self.arm_length)?;
        ensure_positive("arm.stroke_limit", self.stroke_limit)
    }
}

/// Force on the coil for a signed current, N.
pub fn coil_force<T: Real>(c: &CoilSpec<T>, current: T) -> T {
    c.force_constant() * current
}

/// Torque of the magnet weight about the ratchet axis with the arm level.
pub fn gravity_torque<T: Real>(m: &MagnetSpec<T>, a: &ArmSpec<T>, g: T) -> T {
    m.mass * g * a.arm_length
}

/// Starting torque of the rectifier, split by cause.
///
/// Only the front ratchet slides during a drive stroke (the back one is
/// locked to the shaft), so friction and dissipation count once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorqueBudget<T> {
    pub friction: T,
    pub dissipation: T,
    pub gravity: T,
    /// Experimentally measured start threshold, if known. Overrides the
    /// modelled total as the motion gate.
    pub measured_threshold: Option<T>,
}

impl<T: Real> TorqueBudget<T> {
    pub fn total(&self) -> T {
        self.friction + self.dissipation + self.gravity
    }

    /// Torque the actuator must reach before the arm moves.
    pub fn motion_threshold(&self) -> T {
        self.measured_threshold.unwrap_or_else(|| self.total())
    }

    #[must_use]
    pub fn with_measured(mut self, threshold: Option<T>) -> Self {
        self.measured_threshold = threshold;
        self
    }
}

pub fn starting_torque<T: Real>(
    beam: &BeamSpec<T>,
    ratchet: &RatchetGeometry<T>,
    magnet: &MagnetSpec<T>,
    arm: &ArmSpec<T>,
    gravity: T,
) -> Result<TorqueBudget<T>> {
    magnet.validate()?;
    arm.validate()?;
    Ok(TorqueBudget {
        friction: friction_torque(beam, ratchet)?.torque,
        dissipation: dissipation_torque(beam, ratchet)?.torque,
        gravity: gravity_torque(magnet, arm, gravity),
        measured_threshold: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoilDrive<T> {
    pub current: T,
    /// Joule heat `I²R`, W.
    pub coil_heat: T,
    pub coil_voltage: T,
}

/// Coil current (and the matching heat and voltage) needed to produce
/// `torque_needed` at the end of the arm.
pub fn required_current<T: Real>(torque_needed: T, c: &CoilSpec<T>, a: &ArmSpec<T>) -> Result<CoilDrive<T>> {
    if !(torque_needed >= T::zero()) {
        return Err(Error::spec("torque_needed", format!("must be non-negative, got {torque_needed}")));
    }
    c.validate()?;
    a.validate()?;
    let current = torque_needed / a.arm_length / c.force_constant();
    Ok(CoilDrive { current, coil_heat: current * current * c.resistance, coil_voltage: current * c.resistance })
}

/// Torque produced with `supply_voltage` across the coil (resistive, no
/// inductance at the drive frequency).
pub fn drive_torque<T: Real>(c: &CoilSpec<T>, a: &ArmSpec<T>, supply_voltage: T) -> T {
    a.arm_length * coil_force(c, supply_voltage / c.resistance)
}
