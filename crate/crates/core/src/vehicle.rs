//! Drivetrain kinematics and the mass budget.

use crate::error::{ensure_positive, Error, Result};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WheelSpec<T> {
    pub nominal_radius: T,
    /// Radius that maps wheel rate to ground speed. Spikes make it larger
    /// than the nominal rim radius.
    pub effective_radius: T,
    pub slipping: bool,
}

impl<T: Real> WheelSpec<T> {
    /// Wheel rolling on its rim radius without slip.
    pub fn rolling(nominal_radius: T) -> Self {
        Self { nominal_radius, effective_radius: nominal_radius, slipping: false }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("wheel.nominal_radius", self.nominal_radius)?;
        ensure_positive("wheel.effective_radius", self.effective_radius)
    }
}

impl<T: Real> Default for WheelSpec<T> {
    /// 8 mm spiked rear wheels.
    fn default() -> Self {
        Self::rolling(T::lit(4e-3))
    }
}

/// Wheel rate, deg/s, for one rectified stroke of `net_stroke` degrees per
/// oscillator cycle.
pub fn wheel_rate<T: Real>(frequency: T, net_stroke: T) -> T {
    frequency * net_stroke
}

/// Ground speed, m/s. Zero while the wheels slip.
pub fn ground_speed<T: Real>(rate: T, w: &WheelSpec<T>) -> T {
    if w.slipping {
        T::zero()
    } else {
        rate.deg_to_rad() * w.effective_radius
    }
}

/// Net stroke per cycle that reproduces a measured wheel rate.
pub fn calibrate_stroke<T: Real>(measured_rate: T, frequency: T) -> Result<T> {
    if !(frequency > T::zero()) {
        return Err(Error::spec("frequency", "must be positive to calibrate the stroke"));
    }
    Ok(measured_rate / frequency)
}

/// Rolling radius that reproduces a measured ground speed at a wheel rate.
pub fn calibrate_effective_radius<T: Real>(measured_speed: T, rate: T) -> Result<T> {
    if !(rate > T::zero()) {
        return Err(Error::spec("wheel_rate", "must be positive to calibrate the rolling radius"));
    }
    Ok(measured_speed / rate.deg_to_rad())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MassEntry<T> {
    pub name: String,
    /// Mass in milligrams.
    pub mass_mg: T,
}

/// Named component masses, milligrams.
#[derive(Debug, Clone, PartialEq)]
pub struct MassBudget<T> {
    pub entries: Vec<MassEntry<T>>,
}

impl<T: Real> MassBudget<T> {
    pub fn new(entries: impl IntoIterator<Item = (impl Into<String>, T)>) -> Self {
        Self { entries: entries.into_iter().map(|(name, mass_mg)| MassEntry { name: name.into(), mass_mg }).collect() }
    }

    /// The supercapacitor-powered robot.
    pub fn reference() -> Self {
        Self::new([
            ("power_electronics", T::lit(17.0)),
            ("coil", T::lit(13.0)),
            ("magnet_arm", T::lit(27.3)),
            ("supercapacitor", T::lit(24.1)),
            ("base_plate", T::lit(16.2)),
            ("front_wheels", T::lit(4.8)),
            ("rear_wheels", T::lit(18.7)),
            ("ratchet_tube", T::lit(8.6)),
        ])
    }

    pub fn validate(&self) -> Result<()> {
        match self.entries.iter().find(|e| !(e.mass_mg >= T::zero())) {
            Some(e) => Err(Error::spec("mass_budget", format!("entry `{}` is negative", e.name))),
            None => Ok(()),
        }
    }

    #[must_use]
    pub fn without(&self, name: &str) -> Self {
        Self { entries: self.entries.iter().filter(|e| e.name != name).cloned().collect() }
    }
}

pub fn total_mass<T: Real>(m: &MassBudget<T>) -> T {
    m.entries.iter().fold(T::zero(), |acc, e| acc + e.mass_mg)
}
