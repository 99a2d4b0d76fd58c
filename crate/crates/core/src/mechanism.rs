//! Ratchet geometry, the two mechanism loss torques and the double-ratchet
//! rectifier.
//!
//! A ratchet is a shaft carrying compliant pawl beams inside a ring with a
//! saw-tooth bore. The shaft slides clockwise relative to the ring and locks
//! anti-clockwise once a pawl hits a falling edge. Two ratchets on one shaft,
//! the front ring grounded and the back ring driven, rectify an oscillating
//! input into monotone shaft rotation.
//!
//! Angles are degrees and stored cumulatively; lengths are metres.

use crate::error::{ensure_positive, Error, Result};
use crate::Real;

/// Compliant pawl beam, loaded as an end-loaded cantilever.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec<T> {
    /// Young's modulus, Pa.
    pub modulus: T,
    pub thickness: T,
    pub width: T,
    pub beam_length: T,
    /// Deflection of the beam tip while seated in a valley.
    pub pre_deflection: T,
}

impl<T: Real> Default for BeamSpec<T> {
    /// 12.7 µm Kapton tab, 1 mm wide, 0.5 mm free length, 0.2 mm pre-deflection.
    fn default() -> Self {
        Self {
            modulus: T::lit(2.5e9),
            thickness: T::lit(12.7e-6),
            width: T::lit(1e-3),
            beam_length: T::lit(0.5e-3),
            pre_deflection: T::lit(0.2e-3),
        }
    }
}

impl<T: Real> BeamSpec<T> {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("beam.modulus", self.modulus)?;
        ensure_positive("beam.thickness", self.thickness)?;
        ensure_positive("beam.width", self.width)?;
        ensure_positive("beam.beam_length", self.beam_length)?;
        ensure_positive("beam.pre_deflection", self.pre_deflection)
    }
}

/// Tooth pattern of the ring and the pawl layout on the shaft.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatchetGeometry<T> {
    /// Angular spacing between tooth peaks, degrees.
    pub tooth_pitch: T,
    /// Extra beam deflection at a peak, metres.
    pub tooth_height: T,
    pub shaft_radius: T,
    pub beams_per_ring: u32,
    pub friction_coeff: T,
}

impl<T: Real> Default for RatchetGeometry<T> {
    /// 4° pitch, 25 µm teeth, 1 mm shaft radius, 6 pawls, µs = 0.1.
    fn default() -> Self {
        Self {
            tooth_pitch: T::lit(4.0),
            tooth_height: T::lit(25e-6),
            shaft_radius: T::lit(1e-3),
            beams_per_ring: 6,
            friction_coeff: T::lit(0.1),
        }
    }
}

impl<T: Real> RatchetGeometry<T> {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("ratchet.tooth_pitch", self.tooth_pitch)?;
        let teeth = T::lit(360.0) / self.tooth_pitch;
        if (teeth - teeth.round()).abs() > T::lit(1e-6) * teeth {
            return Err(Error::spec(
                "ratchet.tooth_pitch",
                format!("360° is not a whole number of {}° pitches", self.tooth_pitch),
            ));
        }
        // Zero height is allowed: a smooth bore dissipates nothing.
        if !(self.tooth_height >= T::zero()) || !self.tooth_height.is_finite() {
            return Err(Error::spec("ratchet.tooth_height", "must be non-negative"));
        }
        ensure_positive("ratchet.shaft_radius", self.shaft_radius)?;
        if self.beams_per_ring == 0 {
            return Err(Error::spec("ratchet.beams_per_ring", "needs at least one beam"));
        }
        if !(self.friction_coeff >= T::zero() && self.friction_coeff < T::one()) {
            return Err(Error::spec("ratchet.friction_coeff", "must lie in [0, 1)"));
        }
        Ok(())
    }
}

/// Bending stiffness of one pawl beam, N/m: `E/4 · t³·w / l³`.
pub fn beam_stiffness<T: Real>(b: &BeamSpec<T>) -> Result<T> {
    b.validate()?;
    Ok(b.modulus / T::lit(4.0) * b.thickness.powi(3) * b.width / b.beam_length.powi(3))
}

/// Largest reverse rotation absorbed before the ratchet locks, degrees.
///
/// The pawl contact points are spread evenly over one pitch, so some pawl
/// meets a falling edge within `pitch / beams` of any position.
pub fn backlash<T: Real>(g: &RatchetGeometry<T>) -> T {
    g.tooth_pitch / T::lit(f64::from(g.beams_per_ring))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrictionTorque<T> {
    /// Starting torque, N·m.
    pub torque: T,
    /// Normal force of one pre-deflected beam on the ring, N.
    pub contact_force: T,
}

/// Sliding friction of all pawls of one ratchet against the ring.
pub fn friction_torque<T: Real>(b: &BeamSpec<T>, g: &RatchetGeometry<T>) -> Result<FrictionTorque<T>> {
    g.validate()?;
    let contact_force = beam_stiffness(b)? * b.pre_deflection;
    let beams = T::lit(f64::from(g.beams_per_ring));
    Ok(FrictionTorque { torque: beams * g.friction_coeff * contact_force * g.shaft_radius, contact_force })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipationTorque<T> {
    /// Energy-equivalent torque, N·m.
    pub torque: T,
    /// Elastic energy lost when one beam drops off a peak, J.
    pub energy_per_release: T,
}

/// Elastic energy released per tooth pitch, expressed as a torque.
///
/// One beam drops from `Δy` to `Δy − h` per pitch of travel.
pub fn dissipation_torque<T: Real>(b: &BeamSpec<T>, g: &RatchetGeometry<T>) -> Result<DissipationTorque<T>> {
    g.validate()?;
    let k = beam_stiffness(b)?;
    if b.pre_deflection < g.tooth_height {
        return Err(Error::InvalidPairing {
            pre_deflection: b.pre_deflection.as_f64(),
            tooth_height: g.tooth_height.as_f64(),
        });
    }
    let half = T::lit(0.5);
    let relaxed = b.pre_deflection - g.tooth_height;
    let energy = half * k * b.pre_deflection.powi(2) - half * k * relaxed.powi(2);
    Ok(DissipationTorque { torque: energy / g.tooth_pitch.deg_to_rad(), energy_per_release: energy })
}

/// Slack-based state of the double-ratchet rectifier.
///
/// `back_slack` is how far the input may still turn clockwise before the
/// back ratchet engages the shaft.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleRatchetState<T> {
    pub input_angle: T,
    pub shaft_angle: T,
    pub back_slack: T,
}

impl<T: Real> DoubleRatchetState<T> {
    /// Applies one input increment `dtheta` (degrees, clockwise positive).
    #[must_use]
    pub fn step(self, dtheta: T, g: &RatchetGeometry<T>) -> Self {
        step(self, dtheta, g)
    }
}

/// Advances the rectifier by one input increment.
///
/// Clockwise input first takes up the back slack, then drives the shaft.
/// Anti-clockwise input leaves the shaft grounded by the front ratchet while
/// the back pawls ride over the teeth, opening slack up to one backlash.
pub fn step<T: Real>(s: DoubleRatchetState<T>, dtheta: T, g: &RatchetGeometry<T>) -> DoubleRatchetState<T> {
    let zero = T::zero();
    let mut next = s;
    next.input_angle = s.input_angle + dtheta;
    if dtheta > zero {
        next.shaft_angle = s.shaft_angle + (dtheta - s.back_slack).max(zero);
        next.back_slack = (s.back_slack - dtheta).max(zero);
    } else if dtheta < zero {
        next.back_slack = (s.back_slack - dtheta).min(backlash(g));
    }
    next
}

/// Total shaft rotation produced by a waveform of input increments, starting
/// engaged (zero slack).
pub fn rectified_rotation<T, I>(waveform: I, g: &RatchetGeometry<T>) -> T
where
    T: Real,
    I: IntoIterator<Item = T>,
{
    waveform.into_iter().fold(DoubleRatchetState::default(), |s, d| s.step(d, g)).shaft_angle
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn geom() -> RatchetGeometry<f64> {
        RatchetGeometry::default()
    }

    #[test]
    fn stiffness_of_reference_beam() {
        let k = beam_stiffness(&BeamSpec::<f64>::default()).unwrap();
        assert_relative_eq!(k, 10.2419, max_relative = 1e-4);
    }

    #[test]
    fn stiffness_matches_cantilever_end_load() {
        let b =
            BeamSpec::<f64> { modulus: 1e9, thickness: 10e-6, width: 1e-3, beam_length: 1e-3, pre_deflection: 1e-4 };
        // 3EI/l³ with I = w t³ / 12
        let second_moment = b.width * b.thickness.powi(3) / 12.0;
        let oracle = 3.0 * b.modulus * second_moment / b.beam_length.powi(3);
        assert_relative_eq!(oracle, 0.25, max_relative = 1e-12);
        assert_relative_eq!(beam_stiffness(&b).unwrap(), oracle, max_relative = 1e-12);
    }

    #[test]
    fn stiffness_scaling() {
        let b = BeamSpec::<f64>::default();
        let k = beam_stiffness(&b).unwrap();
        let wide = BeamSpec { width: 2.0 * b.width, ..b };
        let long = BeamSpec { beam_length: 2.0 * b.beam_length, ..b };
        assert_relative_eq!(beam_stiffness(&wide).unwrap(), 2.0 * k, max_relative = 1e-12);
        assert_relative_eq!(beam_stiffness(&long).unwrap(), k / 8.0, max_relative = 1e-12);
    }

    #[test]
    fn stiffness_rejects_bad_dimensions() {
        let b = BeamSpec { thickness: 0.0, ..BeamSpec::<f64>::default() };
        assert!(matches!(beam_stiffness(&b), Err(Error::InvalidSpec { field: "beam.thickness", .. })));
        let b = BeamSpec { width: -1e-3, ..BeamSpec::<f64>::default() };
        assert!(beam_stiffness(&b).is_err());
    }

    #[test]
    fn backlash_examples() {
        assert_relative_eq!(backlash(&geom()), 4.0 / 6.0, max_relative = 1e-15);
        let single = RatchetGeometry { beams_per_ring: 1, ..geom() };
        assert_eq!(backlash(&single), 4.0);
        let coarse = RatchetGeometry { tooth_pitch: 8.0, beams_per_ring: 4, ..geom() };
        assert_eq!(backlash(&coarse), 2.0);
    }

    #[test]
    fn geometry_validation() {
        assert!(RatchetGeometry { tooth_pitch: 7.0, ..geom() }.validate().is_err());
        assert!(RatchetGeometry { beams_per_ring: 0, ..geom() }.validate().is_err());
        assert!(RatchetGeometry { friction_coeff: 1.0, ..geom() }.validate().is_err());
        assert!(RatchetGeometry { tooth_height: -1e-6, ..geom() }.validate().is_err());
        assert!(RatchetGeometry { tooth_pitch: 2.5, ..geom() }.validate().is_ok());
    }

    #[test]
    fn friction_reference_values() {
        let f = friction_torque(&BeamSpec::default(), &geom()).unwrap();
        assert_relative_eq!(f.contact_force, 2.048e-3, max_relative = 1e-3);
        assert_relative_eq!(f.torque, 1.229e-6, max_relative = 1e-3);

        let smooth = RatchetGeometry { friction_coeff: 0.0, ..geom() };
        assert_eq!(friction_torque(&BeamSpec::default(), &smooth).unwrap().torque, 0.0);

        let rough = RatchetGeometry { friction_coeff: 0.2, ..geom() };
        assert_relative_eq!(
            friction_torque(&BeamSpec::default(), &rough).unwrap().torque,
            2.0 * f.torque,
            max_relative = 1e-12
        );
    }

    #[test]
    fn dissipation_reference_values() {
        let d = dissipation_torque(&BeamSpec::default(), &geom()).unwrap();
        assert_relative_eq!(d.energy_per_release, 4.801e-8, max_relative = 1e-3);
        assert_relative_eq!(d.torque, 0.6877e-6, max_relative = 1e-3);
    }

    #[test]
    fn dissipation_limits() {
        let flat = RatchetGeometry { tooth_height: 0.0, ..geom() };
        assert_eq!(dissipation_torque(&BeamSpec::default(), &flat).unwrap().torque, 0.0);

        let b = BeamSpec { pre_deflection: 25e-6, ..BeamSpec::default() };
        let k = beam_stiffness(&b).unwrap();
        let d = dissipation_torque(&b, &geom()).unwrap();
        assert_relative_eq!(d.energy_per_release, 0.5 * k * 25e-6 * 25e-6, max_relative = 1e-12);

        let b = BeamSpec { pre_deflection: 20e-6, ..BeamSpec::default() };
        assert!(matches!(dissipation_torque(&b, &geom()), Err(Error::InvalidPairing { .. })));
    }

    #[test]
    fn step_examples() {
        let g = geom();
        let s = DoubleRatchetState::default().step(10.0, &g);
        assert_eq!(s.shaft_angle, 10.0);
        assert_eq!(s.back_slack, 0.0);

        let s = DoubleRatchetState { input_angle: 3.0, shaft_angle: 7.0, back_slack: 0.2 }.step(-1.5, &g);
        assert_eq!(s.shaft_angle, 7.0);
        assert_relative_eq!(s.back_slack, 4.0 / 6.0);
        assert_eq!(s.input_angle, 1.5);

        let s = DoubleRatchetState::default().step(-5.0, &g).step(10.0, &g);
        assert_relative_eq!(s.shaft_angle, 10.0 - 4.0 / 6.0, max_relative = 1e-12);
    }

    #[test]
    fn partial_slack_take_up() {
        let g = geom();
        let s = DoubleRatchetState::default().step(-0.3, &g).step(0.1, &g);
        assert_eq!(s.shaft_angle, 0.0);
        assert_relative_eq!(s.back_slack, 0.2, max_relative = 1e-12);
    }

    #[test]
    fn rectified_cycles_closed_form() {
        let g = geom();
        let b = backlash(&g);
        for (amp, n) in [(1.0, 1usize), (5.0, 7), (15.0 + b, 20), (0.9, 50)] {
            let wave = (0..n).flat_map(|_| [amp, -amp]);
            let expected = amp + (n as f64 - 1.0) * (amp - b);
            assert_relative_eq!(rectified_rotation(wave, &g), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn twenty_cycles_give_three_hundred_degrees() {
        let g = geom();
        let amp = 15.0 + backlash(&g);
        let total = rectified_rotation((0..20).flat_map(|_| [amp, -amp]), &g);
        assert_relative_eq!(total, 300.0 + backlash(&g), max_relative = 1e-12);
    }

    #[test]
    fn negative_waveform_never_moves_shaft() {
        assert_eq!(rectified_rotation([-1.0, -20.0, -0.1], &geom()), 0.0);
    }

    #[test]
    fn single_precision_agrees() {
        let g32 = RatchetGeometry::<f32>::default();
        let total = rectified_rotation((0..20).flat_map(|_| [15.5f32, -15.5]), &g32);
        let g64 = geom();
        let reference = rectified_rotation((0..20).flat_map(|_| [15.5f64, -15.5]), &g64);
        assert_relative_eq!(f64::from(total), reference, max_relative = 1e-5);
    }
}
