//! Yaw-rate and sideslip references from the static single-track model and
//! their friction limits.

use crate::error::Result;
use crate::plant::single_track::MIN_SPEED;
use crate::error::Error;
use crate::params::VehicleParams;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReferenceState {
    pub r_nom: f64,
    pub beta_nom: f64,
    pub r_limited: f64,
    pub beta_limited: f64,
}

/// Steady-state yaw rate and sideslip of the single-track model in per-tire form:
///
/// `r = V δ / (L + m V² (l_r C_r - l_f C_f) / (2 C_f C_r L))`,
/// `β = (l_r - l_f m V² / (2 C_r L)) δ / (same denominator)`,
///
/// where `c_front`, `c_rear` are the stiffness of a single tire.
pub fn nominal_references(delta: f64, vx: f64, p: &VehicleParams, c_front: f64, c_rear: f64) -> (f64, f64) {
    let l = p.wheelbase();
    let v2 = vx * vx;
    let den = l + p.m * v2 * (p.lr * c_rear - p.lf * c_front) / (2.0 * c_front * c_rear * l);
    let r_nom = vx / den * delta;
    let beta_nom = (p.lr - p.lf * p.m * v2 / (2.0 * c_rear * l)) / den * delta;
    (r_nom, beta_nom)
}

/// Unlimited references (`r_limited`/`beta_limited` equal the nominal values).
/// The vehicle stores axle stiffness, which is split over two tires here so
/// that the references coincide with the steady state of the linear model.
pub fn compute_references(delta: f64, vx: f64, p: &VehicleParams) -> Result<ReferenceState> {
    if !(vx > MIN_SPEED) {
        return Err(Error::SpeedTooLow { speed: vx, min: MIN_SPEED });
    }
    let (r_nom, beta_nom) = nominal_references(delta, vx, p, p.cf0 / 2.0, p.cr0 / 2.0);
    Ok(ReferenceState { r_nom, beta_nom, r_limited: r_nom, beta_limited: beta_nom })
}

pub fn yaw_rate_bound(mu: f64, vx: f64, g: f64) -> f64 {
    0.85 * mu * g / vx
}

pub fn sideslip_bound(mu: f64, g: f64) -> f64 {
    libm::atan(0.02 * mu * g)
}

/// Clamps the nominal references to the friction limits.
pub fn apply_limits(r: &ReferenceState, mu: f64, vx: f64, g: f64) -> ReferenceState {
    let rb = yaw_rate_bound(mu, vx, g);
    let bb = sideslip_bound(mu, g);
    ReferenceState {
        r_limited: r.r_nom.clamp(-rb, rb),
        beta_limited: r.beta_nom.clamp(-bb, bb),
        ..*r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plant::single_track::single_track_steady_state;

    #[test]
    fn formula_with_axle_values() {
        // The bare formula evaluated with 80 kN/rad and 90 kN/rad.
        let p = VehicleParams::default();
        let vx = 22.22;
        let l = p.wheelbase();
        let under = p.m * vx * vx * (p.lr * p.cr0 - p.lf * p.cf0) / (2.0 * p.cf0 * p.cr0 * l);
        assert!((under - 1.058).abs() < 1e-3);
        let (r, b) = nominal_references(0.05, vx, &p, p.cf0, p.cr0);
        assert!((r - 0.2880).abs() < 1e-4, "{r}");
        assert!((b + 0.00669).abs() < 1e-5, "{b}");
    }

    #[test]
    fn references_are_linear_model_steady_state() {
        let p = VehicleParams::default();
        for v in [5.0, 10.0, 22.22, 40.0] {
            let r = compute_references(0.03, v, &p).unwrap();
            let ss = single_track_steady_state(&p, v, 0.03, 0.0).unwrap();
            assert!((r.r_nom - ss.r).abs() <= 1e-12 * ss.r.abs());
            assert!((r.beta_nom - ss.beta).abs() <= 1e-12 * ss.beta.abs().max(1e-3));
        }
    }

    #[test]
    fn zero_steer_zero_reference() {
        let r = compute_references(0.0, 20.0, &VehicleParams::default()).unwrap();
        assert_eq!(r.r_nom, 0.0);
        assert_eq!(r.beta_nom, 0.0);
        assert!(compute_references(0.1, 0.3, &VehicleParams::default()).is_err());
    }

    #[test]
    fn limit_values() {
        assert!((yaw_rate_bound(0.9, 22.22, 9.81) - 0.3378).abs() < 1e-4);
        assert!((sideslip_bound(1.0, 9.81) - 0.1937).abs() < 1e-4);
        let r = ReferenceState { r_nom: 0.288, beta_nom: -0.0067, r_limited: 0.288, beta_limited: -0.0067 };
        let l = apply_limits(&r, 0.9, 22.22, 9.81);
        assert_eq!(l.r_limited, 0.288);
        let r = ReferenceState { r_nom: -0.5, beta_nom: 0.3, ..r };
        let l = apply_limits(&r, 0.9, 22.22, 9.81);
        assert!((l.r_limited + 0.3378).abs() < 1e-4);
        assert!(l.beta_limited > 0.0 && l.beta_limited < 0.3);
    }
}
