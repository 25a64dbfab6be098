//! Linear single-track (bicycle) model with a yaw-moment input channel.

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};
use crate::params::VehicleParams;

/// Below this speed the `1/V` and `1/V²` terms make the model meaningless.
pub const MIN_SPEED: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SingleTrackState {
    /// Sideslip angle, rad.
    pub beta: f64,
    /// Yaw rate, rad/s.
    pub r: f64,
}

impl SingleTrackState {
    pub fn as_vec(&self) -> Vec2 {
        Vec2([self.beta, self.r])
    }

    pub fn from_vec(v: Vec2) -> Self {
        Self { beta: v.0[0], r: v.0[1] }
    }
}

fn check_speed(v: f64) -> Result<()> {
    if v > MIN_SPEED {
        Ok(())
    } else {
        Err(Error::SpeedTooLow { speed: v, min: MIN_SPEED })
    }
}

/// State matrix `A` and steering input column `B` for `x = [beta, r]`.
pub fn single_track_matrices(p: &VehicleParams, v: f64) -> Result<(Mat2, Vec2)> {
    check_speed(v)?;
    let (cf, cr, mu) = (p.cf0, p.cr0, p.mu);
    let a = Mat2([
        [
            -(cf + cr) * mu / (p.m * v),
            -1.0 + (cr * p.lr - cf * p.lf) * mu / (p.m * v * v),
        ],
        [
            (cr * p.lr - cf * p.lf) * mu / p.iz,
            -(cr * p.lr * p.lr + cf * p.lf * p.lf) * mu / (p.iz * v),
        ],
    ]);
    let b = Vec2([cf * mu / (p.m * v), cf * p.lf * mu / p.iz]);
    Ok((a, b))
}

/// Input column of a yaw moment acting on `I_z ṙ`.
pub fn moment_input(p: &VehicleParams) -> Vec2 {
    Vec2([0.0, 1.0 / p.iz])
}

pub fn single_track_derivatives(
    x: &SingleTrackState,
    delta: f64,
    m_ext: f64,
    p: &VehicleParams,
    v: f64,
) -> Result<SingleTrackState> {
    let (a, b) = single_track_matrices(p, v)?;
    let dx = a * x.as_vec() + b.scale(delta) + moment_input(p).scale(m_ext);
    Ok(SingleTrackState::from_vec(dx))
}

/// Zero-order-hold discretization of the single-track model at a fixed speed.
/// The estimator uses the same object, so a filter with zero process noise
/// reproduces this plant step exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleTrackDiscrete {
    pub phi: Mat2,
    pub gamma_delta: Vec2,
    pub gamma_moment: Vec2,
}

impl SingleTrackDiscrete {
    pub fn new(p: &VehicleParams, v: f64, dt: f64) -> Result<Self> {
        let (a, b) = single_track_matrices(p, v)?;
        let phi = a.expm(dt);
        let g = a.expm_integral(dt);
        Ok(Self { phi, gamma_delta: g * b, gamma_moment: g * moment_input(p) })
    }

    pub fn step(&self, x: &SingleTrackState, delta: f64, m_ext: f64) -> SingleTrackState {
        let next = self.phi * x.as_vec() + self.gamma_delta.scale(delta) + self.gamma_moment.scale(m_ext);
        SingleTrackState::from_vec(next)
    }
}

/// Steady state of the single-track model under constant steering and moment.
pub fn single_track_steady_state(p: &VehicleParams, v: f64, delta: f64, m_ext: f64) -> Result<SingleTrackState> {
    let (a, b) = single_track_matrices(p, v)?;
    let inv = a.inverse().ok_or(Error::SpeedTooLow { speed: v, min: MIN_SPEED })?;
    let rhs = b.scale(delta) + moment_input(p).scale(m_ext);
    Ok(SingleTrackState::from_vec((inv * rhs).scale(-1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_entries_default() {
        let p = VehicleParams::default();
        let (a, b) = single_track_matrices(&p, 22.22).unwrap();
        // -(80000 + 90000) / (1800 * 22.22) and 80000 / (1800 * 22.22).
        assert!((a.0[0][0] + 4.250425).abs() < 1e-6);
        assert!((b.0[0] - 2.000200).abs() < 1e-6);
    }

    #[test]
    fn zero_friction_leaves_kinematic_coupling_only() {
        let mut p = VehicleParams::default();
        p.mu = 0.0;
        let (a, b) = single_track_matrices(&p, 20.0).unwrap();
        assert_eq!(a, Mat2([[0.0, -1.0], [0.0, 0.0]]));
        assert_eq!(b, Vec2([0.0, 0.0]));
    }

    #[test]
    fn low_speed_rejected() {
        let p = VehicleParams::default();
        assert!(matches!(single_track_matrices(&p, 0.4), Err(Error::SpeedTooLow { .. })));
    }

    #[test]
    fn derivative_examples() {
        let p = VehicleParams::default();
        let z = SingleTrackState::default();
        assert_eq!(single_track_derivatives(&z, 0.0, 0.0, &p, 20.0).unwrap(), z);
        let d = single_track_derivatives(&z, 0.0, 3000.0, &p, 20.0).unwrap();
        assert_eq!(d.beta, 0.0);
        assert!((d.r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hurwitz_over_speed_grid() {
        let p = VehicleParams::default();
        for v in (5..=50).map(f64::from) {
            let (a, _) = single_track_matrices(&p, v).unwrap();
            assert!(a.is_hurwitz(), "not Hurwitz at {v}");
        }
    }

    #[test]
    fn discrete_matches_fine_euler_reference() {
        // Forward Euler with a tiny step as an independent reference.
        let p = VehicleParams::default();
        let v = 20.0;
        let dt = 0.01;
        let disc = SingleTrackDiscrete::new(&p, v, dt).unwrap();
        let x0 = SingleTrackState { beta: 0.01, r: -0.05 };
        let exact = disc.step(&x0, 0.02, 500.0);
        let n = 200_000;
        let h = dt / n as f64;
        let mut x = x0;
        for _ in 0..n {
            let d = single_track_derivatives(&x, 0.02, 500.0, &p, v).unwrap();
            x.beta += h * d.beta;
            x.r += h * d.r;
        }
        assert!((x.beta - exact.beta).abs() < 1e-7);
        assert!((x.r - exact.r).abs() < 1e-7);
    }
}
