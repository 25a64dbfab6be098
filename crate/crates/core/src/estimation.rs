//! Linear Kalman filter for vehicle sideslip from a yaw-rate gyro.
//!
//! The process model is the single-track model discretized exactly at the
//! filter period; the only measurement is yaw rate (`H = [0 1]`).

use crate::error::Result;
use crate::linalg::{Mat2, Vec2};
use crate::params::{KalmanParams, VehicleParams};
use crate::plant::single_track::{SingleTrackDiscrete, SingleTrackState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KalmanState {
    /// Estimated `[beta, r]`.
    pub x_hat: SingleTrackState,
    /// Error covariance.
    pub p: Mat2,
}

impl KalmanState {
    pub fn new(x_hat: SingleTrackState, params: &KalmanParams) -> Self {
        Self { x_hat, p: Mat2::diag(params.p0[0], params.p0[1]) }
    }
}

/// Innovation and gain of the last update, for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Innovation {
    pub residual: f64,
    pub variance: f64,
}

/// Time update with steering `delta`, a known yaw moment `m_ext` and speed `v`.
pub fn kf_predict_with_moment(
    ks: &KalmanState,
    delta: f64,
    m_ext: f64,
    v: f64,
    dt: f64,
    vehicle: &VehicleParams,
    params: &KalmanParams,
) -> Result<KalmanState> {
    let model = SingleTrackDiscrete::new(vehicle, v, dt)?;
    let x_hat = model.step(&ks.x_hat, delta, m_ext);
    let q = Mat2(params.q).scale(dt);
    let p = (model.phi * ks.p * model.phi.transpose() + q).symmetrize();
    Ok(KalmanState { x_hat, p })
}

pub fn kf_predict(
    ks: &KalmanState,
    delta: f64,
    v: f64,
    dt: f64,
    vehicle: &VehicleParams,
    params: &KalmanParams,
) -> Result<KalmanState> {
    kf_predict_with_moment(ks, delta, 0.0, v, dt, vehicle, params)
}

/// Measurement update with a yaw-rate reading, Joseph-form covariance.
pub fn kf_update(ks: &KalmanState, r_meas: f64, params: &KalmanParams) -> (KalmanState, Innovation) {
    let p = ks.p;
    let s = p.0[1][1] + params.r_meas;
    let k = Vec2([p.0[0][1] / s, p.0[1][1] / s]);
    let residual = r_meas - ks.x_hat.r;
    let x = ks.x_hat.as_vec() + k.scale(residual);
    // (I - K H) with H = [0 1].
    let ikh = Mat2([[1.0, -k.0[0]], [0.0, 1.0 - k.0[1]]]);
    let p = (ikh * p * ikh.transpose() + k.outer(&k).scale(params.r_meas)).symmetrize();
    (
        KalmanState { x_hat: SingleTrackState::from_vec(x), p },
        Innovation { residual, variance: s },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> KalmanParams {
        KalmanParams::default()
    }

    #[test]
    fn zero_noise_prediction_matches_plant_step() {
        let v = VehicleParams::default();
        let mut kp = params();
        kp.q = [[0.0; 2]; 2];
        let x = SingleTrackState { beta: 0.01, r: 0.1 };
        let ks = KalmanState::new(x, &kp);
        let pred = kf_predict(&ks, 0.03, 20.0, 0.01, &v, &kp).unwrap();
        let plant = SingleTrackDiscrete::new(&v, 20.0, 0.01).unwrap().step(&x, 0.03, 0.0);
        assert_eq!(pred.x_hat, plant);
    }

    #[test]
    fn covariance_trace_grows_without_updates() {
        let v = VehicleParams::default();
        let kp = params();
        let mut ks = KalmanState { x_hat: SingleTrackState::default(), p: Mat2::ZERO };
        let mut last = 0.0;
        for _ in 0..50 {
            ks = kf_predict(&ks, 0.0, 20.0, 0.01, &v, &kp).unwrap();
            let tr = ks.p.trace();
            assert!(tr > last);
            last = tr;
        }
    }

    #[test]
    fn tiny_step_leaves_state_unchanged() {
        let v = VehicleParams::default();
        let x = SingleTrackState { beta: 0.02, r: -0.1 };
        let ks = KalmanState::new(x, &params());
        let pred = kf_predict(&ks, 0.05, 20.0, 1e-12, &v, &params()).unwrap();
        assert!((pred.x_hat.beta - x.beta).abs() < 1e-9);
        assert!((pred.x_hat.r - x.r).abs() < 1e-9);
    }

    #[test]
    fn measurement_weight_extremes() {
        let x = SingleTrackState { beta: 0.02, r: 0.1 };
        let mut kp = params();
        kp.r_meas = 1e12;
        let ks = KalmanState::new(x, &kp);
        let (post, _) = kf_update(&ks, 0.5, &kp);
        assert!((post.x_hat.r - x.r).abs() < 1e-6 && (post.x_hat.beta - x.beta).abs() < 1e-6);
        kp.r_meas = 1e-12;
        let (post, _) = kf_update(&ks, 0.5, &kp);
        assert!((post.x_hat.r - 0.5).abs() < 1e-6);
    }
}
