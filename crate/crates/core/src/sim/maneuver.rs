//! Open-loop road-wheel steering profiles.

use core::f64::consts::PI;

use crate::error::Result;
use crate::params::{ManeuverKind, ScenarioConfig, VehicleParams};
use crate::control::compute_references;

/// Slew rate of the step edge, rad/s.
pub const STEP_RATE: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ManeuverInput {
    pub kind: ManeuverKind,
    pub amplitude: f64,
    pub start: f64,
}

impl ManeuverInput {
    /// Road-wheel angle at time `t`, rad.
    pub fn steering(&self, t: f64) -> f64 {
        let a = self.amplitude;
        let tau = t - self.start;
        match &self.kind {
            ManeuverKind::Step => {
                if tau <= 0.0 {
                    0.0
                } else {
                    (STEP_RATE * tau).min(a.abs()).copysign(a)
                }
            }
            ManeuverKind::Sine { frequency } => {
                if tau <= 0.0 {
                    0.0
                } else {
                    a * libm::sin(2.0 * PI * frequency * tau)
                }
            }
            ManeuverKind::DoubleLaneChange { swerve_time, gap } => {
                let second = swerve_time + gap;
                if (0.0..=*swerve_time).contains(&tau) {
                    a * libm::sin(2.0 * PI * tau / swerve_time)
                } else if (second..=second + swerve_time).contains(&tau) {
                    -a * libm::sin(2.0 * PI * (tau - second) / swerve_time)
                } else {
                    0.0
                }
            }
            ManeuverKind::Replay { samples } => interpolate(samples, t),
        }
    }
}

fn interpolate(samples: &[(f64, f64)], t: f64) -> f64 {
    let first = samples[0];
    if t <= first.0 {
        return first.1;
    }
    for w in samples.windows(2) {
        if t <= w[1].0 {
            let s = (t - w[0].0) / (w[1].0 - w[0].0);
            return w[0].1 + s * (w[1].1 - w[0].1);
        }
    }
    samples[samples.len() - 1].1
}

pub fn steering_profile(scn: &ScenarioConfig) -> Result<ManeuverInput> {
    scn.validate()?;
    Ok(ManeuverInput { kind: scn.maneuver.clone(), amplitude: scn.amplitude, start: scn.start })
}

/// Swerve amplitude that displaces a vehicle following its steady-state yaw
/// gain by `offset` metres over one full-sine swerve of length `swerve_time`:
/// `A = 2π offset / (V G T²)` with `G = r_nom / δ`.
pub fn dlc_amplitude_for_offset(offset: f64, speed: f64, swerve_time: f64, p: &VehicleParams) -> Result<f64> {
    let gain = compute_references(1.0, speed, p)?.r_nom;
    Ok(2.0 * PI * offset / (speed * gain * swerve_time * swerve_time))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn input(kind: ManeuverKind, amplitude: f64, start: f64) -> ManeuverInput {
        ManeuverInput { kind, amplitude, start }
    }

    #[test]
    fn step_profile() {
        let m = input(ManeuverKind::Step, 0.05, 1.0);
        assert_eq!(m.steering(0.5), 0.0);
        assert_eq!(m.steering(2.0), 0.05);
        assert!((m.steering(1.002) - 0.02).abs() < 1e-12);
        let neg = input(ManeuverKind::Step, -0.05, 1.0);
        assert_eq!(neg.steering(3.0), -0.05);
    }

    #[test]
    fn sine_peak() {
        let m = input(ManeuverKind::Sine { frequency: 0.5 }, 0.04, 0.0);
        let mut peak = 0.0f64;
        for k in 0..=400_000 {
            peak = peak.max(m.steering(k as f64 * 1e-5).abs());
        }
        assert!((peak - 0.04).abs() < 1e-6);
    }

    #[test]
    fn lane_change_is_zero_outside_swerves() {
        let m = input(ManeuverKind::DoubleLaneChange { swerve_time: 2.0, gap: 1.0 }, 0.1, 1.0);
        assert_eq!(m.steering(0.5), 0.0);
        assert!(m.steering(1.5) > 0.0);
        assert!(m.steering(2.5) < 0.0);
        assert_eq!(m.steering(3.5), 0.0);
        assert!(m.steering(4.5) < 0.0);
        assert!(m.steering(5.5) > 0.0);
        assert_eq!(m.steering(7.0), 0.0);
    }

    #[test]
    fn replay_interpolates_and_holds() {
        let m = input(ManeuverKind::Replay { samples: vec![(0.0, 0.0), (1.0, 0.1), (2.0, -0.1)] }, 0.0, 0.0);
        assert!((m.steering(0.5) - 0.05).abs() < 1e-15);
        assert!((m.steering(1.5) - 0.0).abs() < 1e-15);
        assert_eq!(m.steering(5.0), -0.1);
    }
}
