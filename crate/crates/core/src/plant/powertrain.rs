//! Road loads, the motor electrical model, transmission and wheel spin dynamics.

use crate::params::{PowertrainParams, RoadParams, VehicleParams};

/// Wheel speed below which brake and rolling-resistance torques are not
/// allowed to drive the wheel backwards.
pub const WHEEL_STANDSTILL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoadLoad {
    /// Aerodynamic drag, N.
    pub aero: f64,
    /// Total rolling resistance, N.
    pub rolling: f64,
    /// Grade force, N (positive uphill, opposing motion).
    pub grade: f64,
}

pub fn road_load(vx: f64, grade: f64, vehicle: &VehicleParams, road: &RoadParams) -> RoadLoad {
    let w = vehicle.m * vehicle.g;
    RoadLoad {
        aero: 0.5 * road.rho * road.cd * road.af * vx * vx,
        rolling: road.crr * w * libm::cos(grade),
        grade: w * libm::sin(grade),
    }
}

/// `L di/dt = V_q - R i - K_b ω_m`.
pub fn motor_current_derivative(iq: f64, vq: f64, omega_m: f64, pt: &PowertrainParams) -> f64 {
    (vq - pt.rq * iq - pt.kb * omega_m) / pt.lq
}

/// Electromagnetic torque `K_t i_q` limited to the torque map at `omega_m`.
pub fn motor_torque(iq: f64, omega_m: f64, pt: &PowertrainParams) -> f64 {
    pt.torque_map.clamp(pt.kt * iq, omega_m)
}

/// Advances the motor current by `dt` with `V_q` and `ω_m` held, using the
/// exact solution of the first-order circuit.
pub fn motor_step(iq: f64, vq: f64, omega_m: f64, pt: &PowertrainParams, dt: f64) -> (f64, f64) {
    let i_ss = (vq - pt.kb * omega_m) / pt.rq;
    let decay = libm::exp(-pt.rq * dt / pt.lq);
    let next = i_ss + (iq - i_ss) * decay;
    (next, motor_torque(next, omega_m, pt))
}

/// Motor driver: back-emf feedforward plus a proportional current loop
/// tracking `torque_request / K_t`.
pub fn driver_voltage(iq: f64, torque_request: f64, omega_m: f64, pt: &PowertrainParams) -> f64 {
    let i_ref = pt.torque_map.clamp(torque_request, omega_m) / pt.kt;
    pt.rq * i_ref + pt.kb * omega_m + pt.current_gain * (i_ref - iq)
}

/// Total drive torque at the wheels, `T_m η_t k`. Split between the driven
/// wheels with [`crate::params::DriveAxle::share`].
pub fn drive_torque(tm: f64, pt: &PowertrainParams) -> f64 {
    tm * pt.eta_t * pt.k
}

/// `I_w ω̇ = T_d - T_b sgn(ω) - F_x R_w - F_r R_w sgn(ω)`. Brake and rolling
/// resistance oppose the rotation and are zeroed near standstill when the
/// drive torque cannot overcome them.
pub fn wheel_dynamics(omega: f64, t_d: f64, t_b: f64, f_x: f64, f_r: f64, vehicle: &VehicleParams) -> f64 {
    let resist = t_b + f_r * vehicle.rw;
    let resisting = if omega.abs() < WHEEL_STANDSTILL && t_d.abs() < resist {
        0.0
    } else if omega > 0.0 {
        resist
    } else if omega < 0.0 {
        -resist
    } else {
        0.0
    };
    (t_d - resisting - f_x * vehicle.rw) / vehicle.iw
}

/// Normalized slip ratio with a standstill flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlipRatio {
    pub lambda: f64,
    pub standstill: bool,
}

/// Longitudinal slip ratio: `(ωR - V)/V` while braking (`ωR < V`),
/// `(ωR - V)/(ωR)` under traction. Written as division by the larger of the
/// two speeds, which is the same thing for forward motion. Clamped to `[-1, 1]`.
pub fn slip_ratio(omega: f64, v_wheel: f64, rw: f64) -> SlipRatio {
    let u = omega * rw;
    let scale = u.abs().max(v_wheel.abs());
    if scale < 0.1 {
        return SlipRatio { lambda: 0.0, standstill: true };
    }
    SlipRatio { lambda: ((u - v_wheel) / scale).clamp(-1.0, 1.0), standstill: false }
}
