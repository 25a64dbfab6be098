//! First-order lag standing in for the brake hydraulics.

/// `ṗ = (T_cmd - p) / tau`.
pub fn brake_actuator_derivative(p: f64, t_cmd: f64, tau: f64) -> f64 {
    (t_cmd - p) / tau
}

/// Exact step of the lag with the command held over `dt`, clamped to
/// `[0, max_torque]`.
pub fn brake_actuator_step(p: f64, t_cmd: f64, tau: f64, dt: f64, max_torque: f64) -> f64 {
    let cmd = t_cmd.clamp(0.0, max_torque);
    let next = cmd + (p - cmd) * libm::exp(-dt / tau);
    next.clamp(0.0, max_torque)
}
