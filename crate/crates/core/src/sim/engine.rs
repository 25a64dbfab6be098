//! The closed-loop scenario runner.
//!
//! Per integrator step: read the steering profile, run the controller on
//! control ticks (its outputs are held in between), log, then advance the
//! plant with RK4. Steering is evaluated at the RK4 stage times.

use alloc::vec::Vec;

use rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::control::{ActuatorCommand, ControllerOutput, GainSchedule, Measurements, YawStabilityController};
use crate::error::{Error, Result};
use crate::params::{ConfigBundle, PlantKind};
use crate::plant::brake::brake_actuator_derivative;
use crate::plant::double_track::{brake_yaw_moment, DoubleTrackModel, PlantState};
use crate::plant::powertrain::road_load;
use crate::plant::single_track::{single_track_derivatives, SingleTrackState, MIN_SPEED};
use crate::plant::Wheel;
use crate::units::mps_to_kph;

use super::log::{LogRecord, SimulationLog};
use super::maneuver::{steering_profile, ManeuverInput};
use super::rk4::rk4_step;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    Completed,
    /// Longitudinal speed fell below the model limit; the log ends at `time`.
    LowSpeed { time: f64 },
}

const SINGLE_LEN: usize = 9;

/// Single-track plant state: `[beta, r, brake FL..RR, X, Y, psi]`, constant speed.
struct SingleTrackPlant {
    speed: f64,
    state: [f64; SINGLE_LEN],
}

enum Plant {
    Single(SingleTrackPlant),
    Double { model: DoubleTrackModel, state: PlantState },
}

struct Snapshot {
    vx: f64,
    vy: f64,
    beta: f64,
    r: f64,
    a_y: f64,
    omega: [f64; 4],
    brake: [f64; 4],
    motor_torque: f64,
    pose: [f64; 3],
}

impl Plant {
    fn new(cfg: &ConfigBundle, iq0: f64) -> Self {
        let v0 = cfg.scenario.speed;
        match cfg.scenario.plant {
            PlantKind::SingleTrack => Plant::Single(SingleTrackPlant { speed: v0, state: [0.0; SINGLE_LEN] }),
            PlantKind::DoubleTrack => {
                let model = DoubleTrackModel::from_config(cfg);
                let mut state = PlantState::rolling(v0, cfg.vehicle.rw);
                state.iq = iq0;
                Plant::Double { model, state }
            }
        }
    }

    fn vx(&self) -> f64 {
        match self {
            Plant::Single(s) => s.speed,
            Plant::Double { state, .. } => state.vx,
        }
    }

    fn snapshot(&self, cfg: &ConfigBundle, delta: f64, cmd: &ActuatorCommand) -> Result<Snapshot> {
        match self {
            Plant::Single(p) => {
                let x = &p.state;
                let d = single_derivative(cfg, p.speed, x, delta);
                let beta = x[0];
                Ok(Snapshot {
                    vx: p.speed,
                    vy: p.speed * libm::tan(beta),
                    beta,
                    r: x[1],
                    a_y: p.speed * (d[0] + x[1]),
                    omega: [p.speed / cfg.vehicle.rw; 4],
                    brake: [x[2], x[3], x[4], x[5]],
                    motor_torque: cmd.motor_torque_request,
                    pose: [x[6], x[7], x[8]],
                })
            }
            Plant::Double { model, state } => {
                let out = model.outputs(state, delta)?;
                Ok(Snapshot {
                    vx: state.vx,
                    vy: state.vy,
                    beta: state.sideslip(),
                    r: state.r,
                    a_y: out.a_y,
                    omega: state.omega,
                    brake: state.brake,
                    motor_torque: out.motor_torque,
                    pose: [state.x, state.y, state.psi],
                })
            }
        }
    }

    fn step(&mut self, cfg: &ConfigBundle, t: f64, dt: f64, steer: &ManeuverInput, cmd: &ActuatorCommand) -> Result<()> {
        match self {
            Plant::Single(p) => {
                let speed = p.speed;
                let tau = cfg.controller.brake_tau;
                let max = cfg.controller.max_brake_torque;
                let brake_cmd = cmd.brake_torques(max);
                let next = rk4_step(t, &p.state, dt, |t, x| {
                    let mut d = single_derivative(cfg, speed, x, steer.steering(t));
                    for i in 0..4 {
                        d[2 + i] = brake_actuator_derivative(x[2 + i], brake_cmd[i], tau);
                    }
                    Ok::<_, Error>(d)
                })?;
                p.state = next;
                for b in &mut p.state[2..6] {
                    *b = b.clamp(0.0, max);
                }
            }
            Plant::Double { model, state } => {
                let next = rk4_step(t, &state.to_array(), dt, |t, x| {
                    let s = PlantState::from_array(x);
                    model.derivatives(&s, steer.steering(t), cmd).map(|(d, _)| d.to_array())
                })?;
                let mut s = PlantState::from_array(&next);
                model.project(&mut s);
                *state = s;
            }
        }
        Ok(())
    }

    fn is_finite(&self) -> bool {
        match self {
            Plant::Single(p) => p.state.iter().all(|v| v.is_finite()),
            Plant::Double { state, .. } => state.is_finite(),
        }
    }
}

/// Derivative of the constant-speed single-track plant. Brake torques act
/// through the same wheel geometry as on the double-track model; the brake
/// entries are filled in by the caller.
fn single_derivative(cfg: &ConfigBundle, speed: f64, x: &[f64; SINGLE_LEN], delta: f64) -> [f64; SINGLE_LEN] {
    let v = &cfg.vehicle;
    let m_ext: f64 = Wheel::ALL
        .iter()
        .map(|&w| brake_yaw_moment(w, x[2 + w.index()], delta, v))
        .sum();
    let st = SingleTrackState { beta: x[0], r: x[1] };
    // Speed is validated > 1 m/s, above the model limit.
    let d = single_track_derivatives(&st, delta, m_ext, v, speed).unwrap_or_default();
    let course = x[8] + x[0];
    [
        d.beta,
        d.r,
        0.0,
        0.0,
        0.0,
        0.0,
        speed * libm::cos(course),
        speed * libm::sin(course),
        x[1],
    ]
}

/// Motor torque that holds the initial speed against aero and rolling drag.
fn cruise_feedforward(cfg: &ConfigBundle) -> f64 {
    let load = road_load(cfg.scenario.speed, cfg.road.grade, &cfg.vehicle, &cfg.road);
    (load.aero + load.rolling + load.grade) * cfg.vehicle.rw / (cfg.powertrain.eta_t * cfg.powertrain.k)
}

pub fn run_scenario(cfg: &ConfigBundle) -> Result<SimulationLog> {
    cfg.validate()?;
    let ctrl = YawStabilityController::new(cfg)?;
    run(cfg, ctrl)
}

/// Runs with a precomputed gain schedule (shared by paired runs).
pub fn run_scenario_with_gains(cfg: &ConfigBundle, gains: GainSchedule) -> Result<SimulationLog> {
    cfg.validate()?;
    run(cfg, YawStabilityController::with_gains(cfg, gains))
}

fn run(cfg: &ConfigBundle, mut ctrl: YawStabilityController) -> Result<SimulationLog> {
    let scn = &cfg.scenario;
    let steer = steering_profile(scn)?;
    let dt = scn.dt;
    let steps = libm::floor(scn.duration / dt + 1e-9) as usize;
    let decimation = (libm::round(cfg.controller.control_period / dt) as usize).max(1);
    let control_dt = decimation as f64 * dt;

    let feedforward = cruise_feedforward(cfg);
    let mut plant = Plant::new(cfg, feedforward / cfg.powertrain.kt);
    let mut rng = ChaCha8Rng::seed_from_u64(scn.seed);
    let noise = Normal::new(0.0, scn.yaw_rate_noise_std).map_err(|_| Error::OutOfRange {
        key: "scenario.yaw_rate_noise_std",
        value: scn.yaw_rate_noise_std,
        bound: ">= 0",
    })?;

    let mut records = Vec::with_capacity(steps + 1);
    let mut held: Option<(ControllerOutput, f64, f64)> = None;
    let mut termination = Termination::Completed;

    for k in 0..=steps {
        let t = k as f64 * dt;
        let delta = steer.steering(t);
        if !(plant.vx() > MIN_SPEED) {
            termination = Termination::LowSpeed { time: t };
            break;
        }
        let cmd_now = held.map(|h| h.0.command).unwrap_or_default();
        let snap = match plant.snapshot(cfg, delta, &cmd_now) {
            Ok(s) => s,
            Err(Error::SpeedTooLow { .. }) => {
                termination = Termination::LowSpeed { time: t };
                break;
            }
            Err(e) => return Err(e),
        };

        if k % decimation == 0 {
            let r_meas = if scn.yaw_rate_noise_std > 0.0 { snap.r + noise.sample(&mut rng) } else { snap.r };
            let driver = feedforward + cfg.controller.cruise_gain * (scn.speed - snap.vx);
            let meas = Measurements {
                delta,
                vx: snap.vx,
                r_meas,
                wheel_kph: snap.omega.map(|w| mps_to_kph(w * cfg.vehicle.rw)),
                driver_request: driver,
            };
            held = Some((ctrl.update(&meas, control_dt)?, r_meas, driver));
        }
        let (out, r_meas, driver) = held.expect("controller runs on the first step");

        records.push(LogRecord {
            t,
            delta,
            vx: snap.vx,
            vy: snap.vy,
            beta: snap.beta,
            beta_hat: out.beta_hat,
            r: snap.r,
            r_meas,
            r_nom: out.references.r_nom,
            r_limited: out.references.r_limited,
            beta_nom: out.references.beta_nom,
            beta_limited: out.references.beta_limited,
            a_y: snap.a_y,
            ysc_active: out.active,
            moment: out.command.moment,
            brake_wheel: out.command.brake_wheel,
            brake_cmd: out.command.brake_torque,
            brake_torque: snap.brake,
            omega: snap.omega,
            driver_request: driver,
            motor_request: out.command.motor_torque_request,
            motor_torque: snap.motor_torque,
            asr_active: out.asr.asr_active,
            asr_level_pct: out.asr.level_pct(),
            x: snap.pose[0],
            y: snap.pose[1],
            psi: snap.pose[2],
        });
        if k == steps {
            break;
        }

        match plant.step(cfg, t, dt, &steer, &out.command) {
            Ok(()) => {}
            Err(Error::SpeedTooLow { .. }) => {
                termination = Termination::LowSpeed { time: t + dt };
                break;
            }
            Err(e) => return Err(e),
        }
        if !plant.is_finite() {
            return Err(Error::Diverged { time: t + dt });
        }
    }

    Ok(SimulationLog { dt, records, termination })
}
