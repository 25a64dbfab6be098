//! Upper-level moment law and activation, lower-level wheel selection and
//! brake/motor torque conversion.

use crate::error::{Error, Result};
use crate::params::{ControllerParams, VehicleParams};
use crate::plant::Wheel;

/// `M = K e`, saturated to `±m_max`. `e = [β_ref - β, r_ref - r]`.
pub fn corrective_yaw_moment(e: [f64; 2], k: [f64; 2], m_max: f64) -> f64 {
    (k[0] * e[0] + k[1] * e[1]).clamp(-m_max, m_max)
}

/// Threshold activation with hysteresis: switches on when either error exceeds
/// its deadband, switches off only once both are below `hysteresis_ratio`
/// times their deadband.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Activation {
    active: bool,
}

impl Activation {
    pub fn is_active(&self) -> bool {
        self.active
    }

    pub fn update(&mut self, r_err: f64, beta_err: f64, p: &ControllerParams) -> bool {
        let above = |err: f64, band: f64, scale: f64| err.abs() > band * scale;
        self.active = if self.active {
            above(r_err, p.r_deadband, p.hysteresis_ratio) || above(beta_err, p.beta_deadband, p.hysteresis_ratio)
        } else {
            above(r_err, p.r_deadband, 1.0) || above(beta_err, p.beta_deadband, 1.0)
        };
        self.active
    }
}

/// Case number (1–6) of the brake-selection table for measured yaw rate `r`
/// and desired yaw rate `r_nom`, or `None` when they are equal.
///
/// | case | r     | r_nom  | situation   | wheel       |
/// |------|-------|--------|-------------|-------------|
/// | 1    | > 0   | ≥ 0    | r_nom < r   | front left  |
/// | 2    | ≥ 0   | > 0    | r_nom > r   | rear right  |
/// | 3    | < 0   | ≥ 0    | r_nom > r   | front right |
/// | 4    | > 0   | < 0    | r_nom < r   | front left  |
/// | 5    | ≤ 0   | < 0    | r_nom < r   | rear left   |
/// | 6    | < 0   | < 0    | r_nom > r   | front right |
pub fn brake_table_case(r: f64, r_nom: f64) -> Option<u8> {
    if r > 0.0 && r_nom >= 0.0 && r_nom < r {
        Some(1)
    } else if r >= 0.0 && r_nom > 0.0 && r_nom > r {
        Some(2)
    } else if r < 0.0 && r_nom >= 0.0 && r_nom > r {
        Some(3)
    } else if r > 0.0 && r_nom < 0.0 && r_nom < r {
        Some(4)
    } else if r <= 0.0 && r_nom < 0.0 && r_nom < r {
        Some(5)
    } else if r < 0.0 && r_nom < 0.0 && r_nom > r {
        Some(6)
    } else {
        None
    }
}

fn case_wheel(case: u8) -> Wheel {
    match case {
        1 | 4 => Wheel::FL,
        2 => Wheel::RR,
        3 | 6 => Wheel::FR,
        _ => Wheel::RL,
    }
}

/// The table verbatim. Errors within `deadband` select no wheel.
pub fn select_brake_wheel(r: f64, r_nom: f64, deadband: f64) -> Option<Wheel> {
    if (r - r_nom).abs() <= deadband {
        return None;
    }
    brake_table_case(r, r_nom).map(case_wheel)
}

/// The table as applied to the plant: with `mirror` set, left and right are
/// swapped, which is the reading consistent with a y-left body axis.
pub fn brake_wheel_for(r: f64, r_nom: f64, deadband: f64, mirror: bool) -> Option<Wheel> {
    let w = select_brake_wheel(r, r_nom, deadband)?;
    Some(if mirror { w.mirrored() } else { w })
}

/// Brake torque that produces `|m|` of yaw moment at a front or rear wheel:
///
/// front: `|M| R_w / (sin(atan(l_w1 / 2 l_f) - δ) √(l_f² + (l_w1/2)²))`
/// rear:  `|M| R_w / (sin(atan(l_w2 / 2 l_r)) √(l_r² + (l_w2/2)²))`
///
/// clamped to `max_torque`.
pub fn brake_torque_for_moment(m: f64, front: bool, delta: f64, p: &VehicleParams, max_torque: f64) -> Result<f64> {
    let den = if front {
        let half = p.lw1 / 2.0;
        libm::sin(libm::atan(p.lw1 / (2.0 * p.lf)) - delta) * libm::sqrt(p.lf * p.lf + half * half)
    } else {
        let half = p.lw2 / 2.0;
        libm::sin(libm::atan(p.lw2 / (2.0 * p.lr))) * libm::sqrt(p.lr * p.lr + half * half)
    };
    if den.abs() <= 1e-3 {
        return Err(Error::SingularBrakeGeometry { delta });
    }
    Ok((m.abs() * p.rw / den).clamp(0.0, max_torque))
}

/// Drive request reduced in proportion to `|M| / M_max` while YSC is active,
/// never below the configured floor and never above the driver request.
pub fn motor_torque_request(m: f64, driver_request: f64, active: bool, p: &ControllerParams) -> f64 {
    if !active {
        return driver_request;
    }
    let frac = (m.abs() / p.max_moment).clamp(0.0, 1.0);
    let reduced = (driver_request * (1.0 - frac)).max(p.motor_torque_floor);
    reduced.min(driver_request)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_law() {
        assert_eq!(corrective_yaw_moment([0.0, 0.0], [1e4, 8000.0], 5000.0), 0.0);
        assert!((corrective_yaw_moment([0.0, 0.1], [0.0, 8000.0], 5000.0) - 800.0).abs() < 1e-9);
        assert_eq!(corrective_yaw_moment([0.0, 1.0], [0.0, 8000.0], 5000.0), 5000.0);
        assert_eq!(corrective_yaw_moment([0.0, -1.0], [0.0, 8000.0], 5000.0), -5000.0);
    }

    #[test]
    fn activation_hysteresis() {
        let p = ControllerParams::default();
        let mut a = Activation::default();
        assert!(!a.update(0.0, 0.0, &p));
        assert!(a.update(2.0 * p.r_deadband, 0.0, &p));
        assert!(a.update(0.7 * p.r_deadband, 0.0, &p));
        assert!(!a.update(0.4 * p.r_deadband, 0.0, &p));
        assert!(!a.update(0.7 * p.r_deadband, 0.0, &p));
        assert!(a.update(0.0, -1.5 * p.beta_deadband, &p));
    }

    #[test]
    fn table_examples() {
        assert_eq!(select_brake_wheel(0.3, 0.2, 0.02), Some(Wheel::FL));
        assert_eq!(select_brake_wheel(0.1, 0.25, 0.02), Some(Wheel::RR));
        assert_eq!(select_brake_wheel(-0.2, 0.05, 0.02), Some(Wheel::FR));
        assert_eq!(select_brake_wheel(0.2, -0.1, 0.02), Some(Wheel::FL));
        assert_eq!(select_brake_wheel(-0.1, -0.3, 0.02), Some(Wheel::RL));
        assert_eq!(select_brake_wheel(-0.3, -0.1, 0.02), Some(Wheel::FR));
        assert_eq!(select_brake_wheel(0.2, 0.21, 0.02), None);
        assert_eq!(brake_wheel_for(0.3, 0.2, 0.02, true), Some(Wheel::FR));
    }

    #[test]
    fn brake_torque_examples() {
        let p = VehicleParams::default();
        let t = brake_torque_for_moment(3000.0, false, 0.0, &p, 1e9).unwrap();
        assert!((t - 1200.0).abs() < 1e-9);
        let t = brake_torque_for_moment(-3000.0, true, 0.0, &p, 1e9).unwrap();
        assert!((t - 3000.0 * p.rw / (p.lw1 / 2.0)).abs() < 1e-9);
        assert_eq!(brake_torque_for_moment(0.0, true, 0.1, &p, 1e9).unwrap(), 0.0);
        assert_eq!(brake_torque_for_moment(3000.0, false, 0.0, &p, 1000.0).unwrap(), 1000.0);
        let singular = libm::atan(p.lw1 / (2.0 * p.lf));
        assert!(matches!(
            brake_torque_for_moment(1000.0, true, singular, &p, 1e9),
            Err(Error::SingularBrakeGeometry { .. })
        ));
    }

    #[test]
    fn motor_request_rules() {
        let p = ControllerParams::default();
        assert_eq!(motor_torque_request(3000.0, 150.0, false, &p), 150.0);
        assert_eq!(motor_torque_request(p.max_moment, 200.0, true, &p), 0.0);
        assert!((motor_torque_request(p.max_moment / 2.0, 200.0, true, &p) - 100.0).abs() < 1e-12);
        assert_eq!(motor_torque_request(1000.0, -50.0, true, &p), -50.0);
    }
}
