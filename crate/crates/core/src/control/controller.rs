use crate::error::Result;
use crate::estimation::{kf_predict_with_moment, kf_update, KalmanState};
use crate::params::{ConfigBundle, ControllerParams, KalmanParams, VehicleParams};
use crate::plant::double_track::brake_yaw_moment;
use crate::plant::single_track::SingleTrackState;

use super::asr::{asr_adapt_torque, AsrSignals};
use super::gains::{design_feedback_gains, GainSchedule};
use super::references::{apply_limits, compute_references, ReferenceState};
use super::ysc::{brake_torque_for_moment, brake_wheel_for, corrective_yaw_moment, motor_torque_request, Activation};
use super::ActuatorCommand;

/// Sensor readings available to the controller at one tick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurements {
    /// Road-wheel steering angle, rad.
    pub delta: f64,
    /// Longitudinal speed, m/s.
    pub vx: f64,
    /// Gyro yaw rate, rad/s.
    pub r_meas: f64,
    /// Wheel circumferential speeds FL, FR, RL, RR, km/h.
    pub wheel_kph: [f64; 4],
    /// Driver drive-torque request at the motor, N·m.
    pub driver_request: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerOutput {
    pub command: ActuatorCommand,
    pub references: ReferenceState,
    pub beta_hat: f64,
    pub active: bool,
    pub asr: AsrSignals,
}

/// The complete two-level controller with its estimator. One instance per run.
#[derive(Debug, Clone)]
pub struct YawStabilityController {
    vehicle: VehicleParams,
    params: ControllerParams,
    kalman: KalmanParams,
    gains: GainSchedule,
    enabled: bool,
    estimate: Option<KalmanState>,
    activation: Activation,
    asr: AsrSignals,
    last: ActuatorCommand,
    last_delta: f64,
}

impl YawStabilityController {
    pub fn new(cfg: &ConfigBundle) -> Result<Self> {
        let gains = design_feedback_gains(&cfg.vehicle, &cfg.controller.weights, &cfg.controller.speed_grid)?;
        Ok(Self::with_gains(cfg, gains))
    }

    pub fn with_gains(cfg: &ConfigBundle, gains: GainSchedule) -> Self {
        Self {
            vehicle: cfg.vehicle.clone(),
            params: cfg.controller.clone(),
            kalman: cfg.kalman.clone(),
            gains,
            enabled: cfg.scenario.ysc_enabled,
            estimate: None,
            activation: Activation::default(),
            asr: AsrSignals::default(),
            last: ActuatorCommand::default(),
            last_delta: 0.0,
        }
    }

    pub fn gains(&self) -> &GainSchedule {
        &self.gains
    }

    /// One control tick, `dt` after the previous one.
    pub fn update(&mut self, m: &Measurements, dt: f64) -> Result<ControllerOutput> {
        let v = &self.vehicle;
        let p = &self.params;

        let prior = match self.estimate {
            None => KalmanState::new(SingleTrackState { beta: 0.0, r: m.r_meas }, &self.kalman),
            Some(ks) => {
                let applied = match self.last.brake_wheel {
                    Some(w) => brake_yaw_moment(w, self.last.brake_torque, self.last_delta, v),
                    None => 0.0,
                };
                kf_predict_with_moment(&ks, self.last_delta, applied, m.vx, dt, v, &self.kalman)?
            }
        };
        let (post, _) = kf_update(&prior, m.r_meas, &self.kalman);
        self.estimate = Some(post);
        let beta_hat = post.x_hat.beta;

        let refs = apply_limits(&compute_references(m.delta, m.vx, v)?, v.mu, m.vx, v.g);
        let e = [refs.beta_limited - beta_hat, refs.r_limited - m.r_meas];
        let active = self.enabled && self.activation.update(e[1], e[0], p);

        let mut cmd = ActuatorCommand::default();
        if active {
            let k = self.gains.gain_at(m.vx);
            cmd.moment = corrective_yaw_moment(e, k, p.max_moment);
            let wheel = brake_wheel_for(m.r_meas, refs.r_limited, p.r_deadband, p.mirror_brake_selection);
            // Brake only when the moment asks for the same yaw direction the
            // table corrects; otherwise the sideslip term dominates and the
            // selected wheel would push the wrong way.
            let agrees = cmd.moment != 0.0 && (cmd.moment > 0.0) == (e[1] > 0.0);
            if let (Some(w), true) = (wheel, agrees) {
                if let Ok(t_b) = brake_torque_for_moment(cmd.moment, w.is_front(), m.delta, v, p.max_brake_torque) {
                    cmd.brake_wheel = Some(w);
                    cmd.brake_torque = t_b;
                }
            }
        }
        let request = motor_torque_request(cmd.moment, m.driver_request, active, p);
        let (request, asr) = asr_adapt_torque(m.wheel_kph, request, &self.asr, p, dt);
        self.asr = asr;
        cmd.motor_torque_request = request;

        self.last = cmd;
        self.last_delta = m.delta;
        Ok(ControllerOutput { command: cmd, references: refs, beta_hat, active, asr })
    }
}
