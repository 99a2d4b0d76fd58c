//! Drive electronics: relaxation oscillator, H-bridge and the supercapacitor
//! discharging through the coil, the virtual-ground divider and the lumped
//! op-amp supply draw.
//!
//! The supercapacitor is an ideal capacitor behind its ESR. The state
//! variable is the internal (open-circuit) voltage; everything downstream,
//! including the undervoltage lockout and the reported `cap_voltage`, sees
//! the terminal voltage `V_int · R_load / (R_load + ESR)`. The initial and
//! cutoff voltages passed to [`simulate_discharge`] are terminal voltages.

use crate::error::{ensure_positive, Error, Result};
use crate::explore::search::find_root;
use crate::Real;

/// Explicit integration step used when callers do not choose one, s.
pub const DEFAULT_DT: f64 = 1e-4;

/// Undervoltage lockout of the op-amps, V.
pub const DEFAULT_CUTOFF: f64 = 1.0;

const MAX_STEPS: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupercapSpec<T> {
    pub capacitance: T,
    pub esr: T,
    pub rated_voltage: T,
}

impl<T: Real> Default for SupercapSpec<T> {
    /// 11 mF, 160 Ω ESR, 3.3 V rated.
    fn default() -> Self {
        Self { capacitance: T::lit(11e-3), esr: T::lit(160.0), rated_voltage: T::lit(3.3) }
    }
}

impl<T: Real> SupercapSpec<T> {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("supercap.capacitance", self.capacitance)?;
        ensure_positive("supercap.esr", self.esr)?;
        ensure_positive("supercap.rated_voltage", self.rated_voltage)
    }
}

/// Op-amp astable: integrator `R`, `C` and hysteresis divider `R1`, `R2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec<T> {
    pub r: T,
    pub c: T,
    pub r1: T,
    pub r2: T,
}

impl<T: Real> Default for OscillatorSpec<T> {
    /// R = 10 kΩ, C = 2.2 µF, R1 = R2 = 56 kΩ (≈20.7 Hz).
    fn default() -> Self {
        Self { r: T::lit(10e3), c: T::lit(2.2e-6), r1: T::lit(56e3), r2: T::lit(56e3) }
    }
}

impl<T: Real> OscillatorSpec<T> {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("oscillator.r", self.r)?;
        ensure_positive("oscillator.c", self.c)?;
        ensure_positive("oscillator.r1", self.r1)?;
        ensure_positive("oscillator.r2", self.r2)
    }

    /// Feedback fraction `R2 / (R1 + R2)`.
    pub fn beta(&self) -> T {
        self.r2 / (self.r1 + self.r2)
    }

    pub fn period(&self) -> T {
        oscillator_period(self)
    }

    pub fn frequency(&self) -> T {
        self.period().recip()
    }

    /// Same circuit with `C` chosen so that it oscillates at `frequency`.
    #[must_use]
    pub fn tuned_to(&self, frequency: T) -> Self {
        let per_farad = self.period() / self.c;
        Self { c: frequency.recip() / per_farad, ..*self }
    }
}

/// Period of the astable, `2RC · ln((1 + β) / (1 − β))`.
pub fn oscillator_period<T: Real>(o: &OscillatorSpec<T>) -> T {
    let beta = o.beta();
    T::lit(2.0) * o.r * o.c * ((T::one() + beta) / (T::one() - beta)).ln()
}

/// Resistive loads hung on the supply rail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadModel<T> {
    pub coil_resistance: T,
    /// Total resistance of the virtual-ground divider (2·Rs).
    pub divider_resistance: T,
    /// Lumped op-amp supply draw. `None` (or infinity) means no draw.
    pub quiescent_resistance: Option<T>,
}

impl<T: Real> Default for LoadModel<T> {
    fn default() -> Self {
        Self { coil_resistance: T::lit(1500.0), divider_resistance: T::lit(11.2e3), quiescent_resistance: None }
    }
}

impl<T: Real> LoadModel<T> {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("load.coil_resistance", self.coil_resistance)?;
        ensure_positive("load.divider_resistance", self.divider_resistance)?;
        if let Some(q) = self.quiescent_resistance {
            if !(q > T::zero()) {
                return Err(Error::spec("load.quiescent_resistance", "must be positive"));
            }
        }
        Ok(())
    }

    fn quiescent_conductance(&self) -> T {
        self.quiescent_resistance.map_or(T::zero(), |q| q.recip())
    }

    /// Parallel resistance of the rail loads; the coil only counts while the
    /// H-bridge drives it.
    pub fn parallel_resistance(&self, coil_connected: bool) -> T {
        let mut g = self.divider_resistance.recip() + self.quiescent_conductance();
        if coil_connected {
            g = g + self.coil_resistance.recip();
        }
        g.recip()
    }
}

/// Coil voltage from the H-bridge: `+supply` for the first half of each
/// period, `−supply` for the second, and zero below the lockout.
pub fn hbridge_voltage<T: Real>(supply: T, t: T, period: T, cutoff: T) -> T {
    if supply < cutoff || supply <= T::zero() {
        return T::zero();
    }
    let phase = t - (t / period).floor() * period;
    if phase < period / T::lit(2.0) {
        supply
    } else {
        -supply
    }
}

/// Supercapacitor state: internal voltage behind the ESR.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SupercapCell<T> {
    spec: SupercapSpec<T>,
    internal: T,
}

impl<T: Real> SupercapCell<T> {
    /// Cell whose terminal voltage is `terminal` while feeding `load`.
    pub(crate) fn with_terminal_voltage(spec: SupercapSpec<T>, terminal: T, load: T) -> Self {
        Self { spec, internal: terminal * (load + spec.esr) / load }
    }

    pub(crate) fn internal_voltage(&self) -> T {
        self.internal
    }

    pub(crate) fn terminal_voltage(&self, load: T) -> T {
        self.internal * load / (load + self.spec.esr)
    }

    pub(crate) fn current(&self, load: T) -> T {
        self.internal / (load + self.spec.esr)
    }

    /// Explicit Euler step; returns the power drawn from the cell.
    pub(crate) fn advance(&mut self, load: T, dt: T) -> T {
        let i = self.current(load);
        let p = self.internal * i;
        self.internal = self.internal - i * dt / self.spec.capacitance;
        p
    }
}

/// Energy dissipated per branch, J.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BranchEnergy<T> {
    pub coil: T,
    pub divider: T,
    pub quiescent: T,
    pub esr: T,
}

impl<T: Real> BranchEnergy<T> {
    pub fn total(&self) -> T {
        self.coil + self.divider + self.quiescent + self.esr
    }

    /// Adds one interval of dissipation for rail voltage `v`.
    pub(crate) fn accumulate(&mut self, load: &LoadModel<T>, v: T, coil_on: bool, esr_current: T, esr: T, dt: T) {
        if coil_on {
            self.coil = self.coil + v * v / load.coil_resistance * dt;
        }
        self.divider = self.divider + v * v / load.divider_resistance * dt;
        self.quiescent = self.quiescent + v * v * load.quiescent_conductance() * dt;
        self.esr = self.esr + esr_current * esr_current * esr * dt;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DischargeSample<T> {
    pub time: T,
    /// Terminal voltage of the supercapacitor.
    pub cap_voltage: T,
    pub internal_voltage: T,
    pub coil_voltage: T,
    pub coil_current: T,
    pub coil_power: T,
    /// Power leaving the ideal capacitor (loads plus ESR).
    pub source_power: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DischargeTrace<T> {
    pub samples: Vec<DischargeSample<T>>,
    /// Time of the first sample at or below the cutoff.
    pub runtime: T,
    pub dt: T,
    pub energy: BranchEnergy<T>,
    pub warnings: Vec<String>,
}

/// Warning text when `dt` is too coarse for an oscillator of `period`.
pub fn step_size_warning<T: Real>(dt: T, period: T) -> Option<String> {
    (dt > period / T::lit(10.0))
        .then(|| format!("time step {dt} s is coarser than a tenth of the {period} s oscillator period"))
}

struct DischargeRun<T> {
    runtime: T,
    energy: BranchEnergy<T>,
}

fn integrate<T: Real>(
    s: &SupercapSpec<T>,
    l: &LoadModel<T>,
    v0: T,
    cutoff: T,
    dt: T,
    mut on_sample: impl FnMut(DischargeSample<T>),
) -> Result<DischargeRun<T>> {
    s.validate()?;
    l.validate()?;
    ensure_positive("dt", dt)?;
    ensure_positive("cutoff", cutoff)?;
    if !(cutoff < v0) {
        return Err(Error::EmptyRun { v0: v0.as_f64(), cutoff: cutoff.as_f64() });
    }
    if v0 > s.rated_voltage {
        return Err(Error::spec("v0", format!("{v0} V exceeds the rated {} V", s.rated_voltage)));
    }

    let load = l.parallel_resistance(true);
    let mut cell = SupercapCell::with_terminal_voltage(*s, v0, load);
    let mut energy = BranchEnergy::default();
    let mut k: u64 = 0;
    loop {
        let time = T::lit(k as f64) * dt;
        let v = cell.terminal_voltage(load);
        let i = cell.current(load);
        on_sample(DischargeSample {
            time,
            cap_voltage: v,
            internal_voltage: cell.internal_voltage(),
            coil_voltage: v,
            coil_current: v / l.coil_resistance,
            coil_power: v * v / l.coil_resistance,
            source_power: cell.internal_voltage() * i,
        });
        if v <= cutoff {
            return Ok(DischargeRun { runtime: time, energy });
        }
        energy.accumulate(l, v, true, i, s.esr, dt);
        cell.advance(load, dt);
        k += 1;
        if k > MAX_STEPS {
            return Err(Error::spec("dt", format!("discharge did not reach {cutoff} V within {MAX_STEPS} steps")));
        }
    }
}

/// Discharges the supercapacitor from terminal voltage `v0` to `cutoff`
/// through the coil, divider and quiescent loads.
pub fn simulate_discharge<T: Real>(
    s: &SupercapSpec<T>,
    l: &LoadModel<T>,
    v0: T,
    cutoff: T,
    dt: T,
) -> Result<DischargeTrace<T>> {
    simulate_discharge_coupled(s, l, v0, cutoff, dt, None)
}

/// As [`simulate_discharge`], warning when `dt` is coarse relative to the
/// period of the oscillator that switches the coil.
pub fn simulate_discharge_coupled<T: Real>(
    s: &SupercapSpec<T>,
    l: &LoadModel<T>,
    v0: T,
    cutoff: T,
    dt: T,
    coupled_period: Option<T>,
) -> Result<DischargeTrace<T>> {
    let mut samples = Vec::new();
    let run = integrate(s, l, v0, cutoff, dt, |x| samples.push(x))?;
    let warnings: Vec<String> = coupled_period.and_then(|p| step_size_warning(dt, p)).into_iter().collect();
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(DischargeTrace { samples, runtime: run.runtime, dt, energy: run.energy, warnings })
}

/// Runtime only, without keeping samples.
pub fn discharge_runtime<T: Real>(s: &SupercapSpec<T>, l: &LoadModel<T>, v0: T, cutoff: T, dt: T) -> Result<T> {
    integrate(s, l, v0, cutoff, dt, |_| {}).map(|r| r.runtime)
}

/// Quiescent resistance for which the discharge lasts `target_runtime`.
///
/// Returns infinity when the target equals the no-draw runtime (within
/// 0.1 %); fails when the target is longer than that, or shorter than the
/// ESR alone allows.
pub fn calibrate_quiescent<T: Real>(
    s: &SupercapSpec<T>,
    l: &LoadModel<T>,
    v0: T,
    cutoff: T,
    target_runtime: T,
    dt: T,
) -> Result<T> {
    ensure_positive("target_runtime", target_runtime)?;
    let with_q = |q: Option<T>| LoadModel { quiescent_resistance: q, ..*l };
    let ceiling = discharge_runtime(s, &with_q(None), v0, cutoff, dt)?;
    if (target_runtime - ceiling).abs() <= T::lit(1e-3) * ceiling {
        return Ok(T::infinity());
    }
    if target_runtime > ceiling {
        return Err(Error::Infeasible(format!(
            "runtime {target_runtime} s exceeds the {ceiling} s reachable with no quiescent draw"
        )));
    }

    // Bisect on ln(R_q); runtime(R_q) is monotone increasing.
    let (lo, hi) = (T::lit(1e-3).ln(), T::lit(1e12).ln());
    let mut failure = None;
    let ln_q = find_root(
        |x: T| match discharge_runtime(s, &with_q(Some(x.exp())), v0, cutoff, dt) {
            Ok(rt) => rt,
            Err(e) => {
                failure.get_or_insert(e);
                T::nan()
            }
        },
        target_runtime,
        lo,
        hi,
        T::lit(1e-12),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    ln_q.map(T::exp).map_err(|e| match e {
        Error::Infeasible(_) => {
            Error::Infeasible(format!("runtime {target_runtime} s is shorter than the ESR alone allows"))
        }
        other => other,
    })
}

fn active_window<T: Real>(trace: &DischargeTrace<T>) -> Result<&[DischargeSample<T>]> {
    let n = trace.samples.len();
    if n < 2 || !(trace.runtime > T::zero()) {
        return Err(Error::EmptyTrace);
    }
    Ok(&trace.samples[..n - 1])
}

/// Mean `V_coil² / R_coil` over `[0, runtime]`.
pub fn average_coil_power<T: Real>(trace: &DischargeTrace<T>, coil_resistance: T) -> Result<T> {
    let window = active_window(trace)?;
    let sum = window.iter().fold(T::zero(), |acc, s| acc + s.coil_voltage * s.coil_voltage / coil_resistance);
    Ok(sum * trace.dt / trace.runtime)
}

/// Mean power drawn from the capacitor (all loads plus ESR) over the run.
pub fn average_source_power<T: Real>(trace: &DischargeTrace<T>) -> Result<T> {
    let window = active_window(trace)?;
    let sum = window.iter().fold(T::zero(), |acc, s| acc + s.source_power);
    Ok(sum * trace.dt / trace.runtime)
}
