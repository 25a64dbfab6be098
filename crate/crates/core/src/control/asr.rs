//! Traction control torque adaptation for an electric drive.
//!
//! The torque level is a percentage of the driver request. While a same-side
//! front/rear wheel-speed difference exceeds the threshold the level is slewed
//! down at the fast rate towards the floor (`reduction_fast_pct`); once the
//! difference drops back it recovers at the slow rate (`reduction_slow_pct`).
//! The motor driver realises the level through its current loop.

use crate::params::ControllerParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsrSignals {
    /// Torque level requested by the fast reduction path, %.
    pub reduction_fast_pct: f64,
    /// Torque level requested by the slow recovery path, %.
    pub reduction_slow_pct: f64,
    pub asr_active: bool,
    /// Largest same-side front/rear wheel-speed difference, km/h.
    pub wheel_speed_diff_kph: f64,
}

impl Default for AsrSignals {
    fn default() -> Self {
        Self {
            reduction_fast_pct: 100.0,
            reduction_slow_pct: 100.0,
            asr_active: false,
            wheel_speed_diff_kph: 0.0,
        }
    }
}

impl AsrSignals {
    /// Torque level applied to the driver request, %.
    pub fn level_pct(&self) -> f64 {
        self.reduction_fast_pct.min(self.reduction_slow_pct)
    }
}

/// One ASR update. `wheel_kph` are wheel circumferential speeds in FL, FR, RL,
/// RR order. Negative (regenerative) requests pass through unchanged, so the
/// output never exceeds the driver request.
pub fn asr_adapt_torque(
    wheel_kph: [f64; 4],
    driver_request: f64,
    prev: &AsrSignals,
    p: &ControllerParams,
    dt: f64,
) -> (f64, AsrSignals) {
    let left = (wheel_kph[0] - wheel_kph[2]).abs();
    let right = (wheel_kph[1] - wheel_kph[3]).abs();
    let diff = left.max(right);
    let active = diff > p.asr_threshold_kph;
    let level = prev.level_pct();
    let next = if active {
        let l = (level - p.asr_fast_rate * dt).max(p.asr_floor_pct);
        AsrSignals { reduction_fast_pct: l, reduction_slow_pct: 100.0, asr_active: true, wheel_speed_diff_kph: diff }
    } else {
        let l = (level + p.asr_slow_rate * dt).min(100.0);
        AsrSignals { reduction_fast_pct: 100.0, reduction_slow_pct: l, asr_active: false, wheel_speed_diff_kph: diff }
    };
    let out = if driver_request > 0.0 { driver_request * next.level_pct() / 100.0 } else { driver_request };
    (out, next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_threshold_passes_through() {
        let p = ControllerParams::default();
        let (t, s) = asr_adapt_torque([50.0, 50.0, 47.0, 50.0], 150.0, &AsrSignals::default(), &p, 0.01);
        assert!(!s.asr_active);
        assert_eq!(t, 150.0);
    }

    #[test]
    fn above_threshold_reduces() {
        let p = ControllerParams::default();
        let (t, s) = asr_adapt_torque([58.0, 50.0, 50.0, 50.0], 150.0, &AsrSignals::default(), &p, 0.01);
        assert!(s.asr_active);
        assert!(t < 150.0);
    }

    #[test]
    fn fast_slew_reaches_floor_within_half_second() {
        let p = ControllerParams::default();
        let mut s = AsrSignals::default();
        let dt = 0.01;
        let mut t = 0.0;
        while s.level_pct() > p.asr_floor_pct {
            s = asr_adapt_torque([60.0, 60.0, 50.0, 50.0], 100.0, &s, &p, dt).1;
            t += dt;
        }
        assert!(t <= 0.5 + 1e-9, "{t}");
        // Recovery at the slow rate.
        let (_, r) = asr_adapt_torque([50.0; 4], 100.0, &s, &p, 0.1);
        assert!((r.level_pct() - (p.asr_floor_pct + p.asr_slow_rate * 0.1)).abs() < 1e-9);
    }
}
