//! Nonlinear double-track (four-wheel) model with wheel spin, motor current
//! and brake actuator states.

use crate::control::ActuatorCommand;
use crate::error::{Error, Result};
use crate::params::{ConfigBundle, PowertrainParams, RoadParams, TireModelKind, VehicleParams};
use crate::tire::{combined_slip_forces, vertical_loads, AxleTire, Axle, SlipState, TireForces};

use super::brake::brake_actuator_derivative;
use super::powertrain::{
    drive_torque, driver_voltage, motor_current_derivative, motor_torque, road_load, slip_ratio,
    wheel_dynamics,
};
use super::single_track::MIN_SPEED;
use super::Wheel;

/// Smallest wheel longitudinal velocity the slip-angle kinematics accept.
pub const MIN_WHEEL_VELOCITY: f64 = 0.1;

pub const STATE_LEN: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlantState {
    /// Body-frame longitudinal velocity, m/s.
    pub vx: f64,
    /// Body-frame lateral velocity, m/s.
    pub vy: f64,
    /// Yaw rate, rad/s.
    pub r: f64,
    /// Wheel spin rates FL, FR, RL, RR, rad/s.
    pub omega: [f64; 4],
    /// Motor q-axis current, A.
    pub iq: f64,
    /// Brake actuator torque states, N·m.
    pub brake: [f64; 4],
    /// World position, m.
    pub x: f64,
    pub y: f64,
    /// Heading, rad.
    pub psi: f64,
}

impl PlantState {
    /// Straight running at `vx` with free-rolling wheels.
    pub fn rolling(vx: f64, rw: f64) -> Self {
        Self { vx, omega: [vx / rw; 4], ..Self::default() }
    }

    pub fn sideslip(&self) -> f64 {
        libm::atan2(self.vy, self.vx)
    }

    /// Wheel-centre velocities in each wheel's own frame, `(along, across)`.
    pub fn wheel_velocities(&self, delta: f64, p: &VehicleParams) -> [(f64, f64); 4] {
        let (hf, hr) = (p.lw1 / 2.0, p.lw2 / 2.0);
        let front_v = self.vy + p.lf * self.r;
        let rear_v = self.vy - p.lr * self.r;
        let (s, c) = (libm::sin(delta), libm::cos(delta));
        let rot = |u: f64, v: f64| (u * c + v * s, v * c - u * s);
        [
            rot(self.vx - hf * self.r, front_v),
            rot(self.vx + hf * self.r, front_v),
            (self.vx - hr * self.r, rear_v),
            (self.vx + hr * self.r, rear_v),
        ]
    }

    /// Wheel-centre speed magnitudes, m/s.
    pub fn wheel_speeds(&self, p: &VehicleParams) -> [f64; 4] {
        let v = self.wheel_velocities(0.0, p);
        v.map(|(a, b)| libm::hypot(a, b))
    }

    pub fn to_array(&self) -> [f64; STATE_LEN] {
        let w = self.omega;
        let b = self.brake;
        [
            self.vx, self.vy, self.r, w[0], w[1], w[2], w[3], self.iq, b[0], b[1], b[2], b[3], self.x,
            self.y, self.psi,
        ]
    }

    pub fn from_array(a: &[f64; STATE_LEN]) -> Self {
        Self {
            vx: a[0],
            vy: a[1],
            r: a[2],
            omega: [a[3], a[4], a[5], a[6]],
            iq: a[7],
            brake: [a[8], a[9], a[10], a[11]],
            x: a[12],
            y: a[13],
            psi: a[14],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

/// Tire sideslip angles FL, FR, RL, RR with the same steering angle on both
/// front wheels.
pub fn wheel_slip_angles(s: &PlantState, delta: f64, p: &VehicleParams) -> Result<[f64; 4]> {
    let den = [
        s.vx - p.lw1 / 2.0 * s.r,
        s.vx + p.lw1 / 2.0 * s.r,
        s.vx - p.lw2 / 2.0 * s.r,
        s.vx + p.lw2 / 2.0 * s.r,
    ];
    for (wheel, d) in den.iter().enumerate() {
        if d.abs() < MIN_WHEEL_VELOCITY {
            return Err(Error::DegenerateKinematics { wheel, denominator: *d });
        }
    }
    let front = s.vy + p.lf * s.r;
    let rear = s.vy - p.lr * s.r;
    Ok([
        delta - libm::atan(front / den[0]),
        delta - libm::atan(front / den[1]),
        -libm::atan(rear / den[2]),
        -libm::atan(rear / den[3]),
    ])
}

/// Quantities computed alongside the derivative, for logging and analysis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TrackOutputs {
    pub a_x: f64,
    pub a_y: f64,
    pub alpha: [f64; 4],
    pub lambda: [f64; 4],
    pub fz: [f64; 4],
    pub forces: [TireForces; 4],
    /// Motor torque after the map clamp, N·m.
    pub motor_torque: f64,
    /// Any wheel hit the standstill slip convention.
    pub standstill: bool,
}

/// Body-frame force and yaw-moment balance from wheel-frame tire forces.
///
/// Paired terms are summed before they are scaled so that a left/right mirror
/// of the inputs mirrors the outputs bit for bit.
pub fn body_forces(f: &[TireForces; 4], delta: f64, p: &VehicleParams) -> (f64, f64, f64) {
    let (s, c) = (libm::sin(delta), libm::cos(delta));
    let [fl, fr, rl, rr] = *f;
    let fy_front = fl.fy + fr.fy;
    let fx_front = fl.fx + fr.fx;
    let fx = c * fx_front + (rl.fx + rr.fx) - s * fy_front;
    let fy = c * fy_front + (rl.fy + rr.fy) + s * fx_front;
    let mz = p.lf * (c * fy_front + s * fx_front)
        + p.lw1 / 2.0 * (s * (fl.fy - fr.fy) + c * (fr.fx - fl.fx))
        - p.lr * (rl.fy + rr.fy)
        + p.lw2 / 2.0 * (rr.fx - rl.fx);
    (fx, fy, mz)
}

/// Yaw moment produced by a pure braking force `t_b / R_w` at one wheel, with
/// the front wheels steered by `delta`.
pub fn brake_yaw_moment(wheel: Wheel, t_b: f64, delta: f64, p: &VehicleParams) -> f64 {
    let mut f = [TireForces::default(); 4];
    f[wheel.index()].fx = -t_b / p.rw;
    body_forces(&f, delta, p).2
}

/// The double-track plant with everything it needs to evaluate derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleTrackModel {
    pub vehicle: VehicleParams,
    pub road: RoadParams,
    pub powertrain: PowertrainParams,
    pub front_tire: AxleTire,
    pub rear_tire: AxleTire,
    pub tire_model: TireModelKind,
    pub brake_tau: f64,
    pub max_brake_torque: f64,
}

impl DoubleTrackModel {
    pub fn from_config(cfg: &ConfigBundle) -> Self {
        Self {
            vehicle: cfg.vehicle.clone(),
            road: cfg.road.clone(),
            powertrain: cfg.powertrain.clone(),
            front_tire: AxleTire::for_axle(&cfg.tire, &cfg.vehicle, Axle::Front),
            rear_tire: AxleTire::for_axle(&cfg.tire, &cfg.vehicle, Axle::Rear),
            tire_model: cfg.tire.model,
            brake_tau: cfg.controller.brake_tau,
            max_brake_torque: cfg.controller.max_brake_torque,
        }
    }

    /// Motor shaft speed from the mean driven-wheel speed.
    pub fn motor_speed(&self, s: &PlantState) -> f64 {
        let axle = self.powertrain.drive_axle;
        let w: f64 = (0..4).map(|i| axle.share(i) * s.omega[i]).sum();
        w * self.powertrain.k
    }

    fn tire_forces(&self, slip: &SlipState, wheel: usize) -> TireForces {
        let tire = if wheel < 2 { &self.front_tire } else { &self.rear_tire };
        let mu = self.vehicle.mu;
        match self.tire_model {
            TireModelKind::Pacejka => combined_slip_forces(slip, tire, mu),
            TireModelKind::Linear => {
                let c_axle = if wheel < 2 { self.vehicle.cf0 } else { self.vehicle.cr0 };
                let (long, _) = tire.curves(mu, slip.fz);
                TireForces {
                    fx: long.b * long.c * long.d * slip.lambda,
                    fy: mu * c_axle / 2.0 * slip.alpha,
                }
            }
        }
    }

    /// Tire forces, accelerations and slips at a state. With load transfer
    /// enabled the loads use accelerations from a first pass on static loads.
    pub fn outputs(&self, s: &PlantState, delta: f64) -> Result<TrackOutputs> {
        let p = &self.vehicle;
        if !(s.vx > MIN_SPEED) {
            return Err(Error::SpeedTooLow { speed: s.vx, min: MIN_SPEED });
        }
        let alpha = wheel_slip_angles(s, delta, p)?;
        let vel = s.wheel_velocities(delta, p);
        let mut lambda = [0.0; 4];
        let mut standstill = false;
        for i in 0..4 {
            let sr = slip_ratio(s.omega[i], vel[i].0, p.rw);
            lambda[i] = sr.lambda;
            standstill |= sr.standstill;
        }
        let load = road_load(s.vx, self.road.grade, p, &self.road);
        let aero = if s.vx >= 0.0 { load.aero } else { -load.aero };

        let eval = |fz: [f64; 4]| {
            let forces: [TireForces; 4] =
                core::array::from_fn(|i| self.tire_forces(&SlipState { alpha: alpha[i], lambda: lambda[i], fz: fz[i] }, i));
            let (fx, fy, mz) = body_forces(&forces, delta, p);
            (forces, (fx - aero - load.grade) / p.m, fy / p.m, mz)
        };

        let mut fz = vertical_loads(p, &self.road, 0.0, 0.0);
        let mut pass = eval(fz);
        if self.road.longitudinal_transfer || self.road.lateral_transfer {
            fz = vertical_loads(p, &self.road, pass.1, pass.2);
            pass = eval(fz);
        }
        let (forces, a_x, a_y, _) = pass;
        let omega_m = self.motor_speed(s);
        Ok(TrackOutputs {
            a_x,
            a_y,
            alpha,
            lambda,
            fz,
            forces,
            motor_torque: motor_torque(s.iq, omega_m, &self.powertrain),
            standstill,
        })
    }

    /// Full state derivative under steering `delta` and actuator command `cmd`.
    pub fn derivatives(&self, s: &PlantState, delta: f64, cmd: &ActuatorCommand) -> Result<(PlantState, TrackOutputs)> {
        let p = &self.vehicle;
        let out = self.outputs(s, delta)?;
        let (_, _, mz) = body_forces(&out.forces, delta, p);

        let pt = &self.powertrain;
        let omega_m = self.motor_speed(s);
        let vq = driver_voltage(s.iq, cmd.motor_torque_request, omega_m, pt);
        let td_total = drive_torque(out.motor_torque, pt);
        let brake_cmd = cmd.brake_torques(self.max_brake_torque);
        let rolling_per_newton = self.road.crr * libm::cos(self.road.grade);

        let mut d = PlantState {
            vx: out.a_x + s.r * s.vy,
            vy: out.a_y - s.r * s.vx,
            r: mz / p.iz,
            iq: motor_current_derivative(s.iq, vq, omega_m, pt),
            x: s.vx * libm::cos(s.psi) - s.vy * libm::sin(s.psi),
            y: s.vx * libm::sin(s.psi) + s.vy * libm::cos(s.psi),
            psi: s.r,
            ..PlantState::default()
        };
        for i in 0..4 {
            let t_d = td_total * pt.drive_axle.share(i);
            let t_b = s.brake[i].clamp(0.0, self.max_brake_torque);
            let f_r = rolling_per_newton * out.fz[i];
            d.omega[i] = wheel_dynamics(s.omega[i], t_d, t_b, out.forces[i].fx, f_r, p);
            d.brake[i] = brake_actuator_derivative(s.brake[i], brake_cmd[i], self.brake_tau);
        }
        Ok((d, out))
    }

    /// Keeps actuator states inside their physical range after an integration step.
    pub fn project(&self, s: &mut PlantState) {
        for b in &mut s.brake {
            *b = b.clamp(0.0, self.max_brake_torque);
        }
    }
}
