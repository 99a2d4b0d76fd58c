//! Tooth-level reference model of the rectifier on an integer angle grid.
//!
//! The input carries `beams` pawls staggered evenly over one tooth pitch,
//! so some pawl wall lies every `pitch / beams` ahead of the input. The
//! state is the gap to the nearest wall in front: zero means a pawl is
//! pushing. Reversing lets pawls slide over the teeth and drop; a pawl
//! sitting exactly on a tooth tip has not dropped yet.

#![allow(dead_code)]

/// Grid resolution; divisible by every beam count used in tests.
pub const TICKS_PER_PITCH: i64 = 6000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToothOracle {
    lattice: i64,
    gap: i64,
    shaft: i64,
}

impl ToothOracle {
    pub fn new(beams: i64) -> Self {
        assert!(beams > 0 && TICKS_PER_PITCH % beams == 0);
        Self { lattice: TICKS_PER_PITCH / beams, gap: 0, shaft: 0 }
    }

    pub fn lattice(&self) -> i64 {
        self.lattice
    }

    pub fn gap(&self) -> i64 {
        self.gap
    }

    pub fn shaft(&self) -> i64 {
        self.shaft
    }

    /// Moves the input by `d` ticks; returns the shaft advance.
    pub fn step(&mut self, d: i64) -> i64 {
        if d > 0 {
            let advance = (d - self.gap).max(0);
            self.gap = (self.gap - d).max(0);
            self.shaft += advance;
            advance
        } else {
            if d < 0 {
                // Nearest wall strictly ahead among g + r + m·lattice.
                self.gap = (self.gap - d - 1).rem_euclid(self.lattice) + 1;
            }
            0
        }
    }

    pub fn run(beams: i64, waveform: &[i64]) -> Self {
        let mut o = Self::new(beams);
        for &d in waveform {
            o.step(d);
        }
        o
    }
}

pub fn ticks_to_deg(ticks: i64, pitch_deg: f64) -> f64 {
    ticks as f64 * pitch_deg / TICKS_PER_PITCH as f64
}
