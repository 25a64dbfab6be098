use alloc::vec::Vec;

use crate::plant::Wheel;

use super::engine::Termination;

/// One logged step. Commands are the zero-order-held values applied over
/// `[t, t + dt)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LogRecord {
    pub t: f64,
    pub delta: f64,
    pub vx: f64,
    pub vy: f64,
    /// True sideslip, rad.
    pub beta: f64,
    pub beta_hat: f64,
    pub r: f64,
    pub r_meas: f64,
    pub r_nom: f64,
    pub r_limited: f64,
    pub beta_nom: f64,
    pub beta_limited: f64,
    pub a_y: f64,
    pub ysc_active: bool,
    pub moment: f64,
    pub brake_wheel: Option<Wheel>,
    pub brake_cmd: f64,
    /// Actuator brake torques FL, FR, RL, RR, N·m.
    pub brake_torque: [f64; 4],
    pub omega: [f64; 4],
    pub driver_request: f64,
    pub motor_request: f64,
    pub motor_torque: f64,
    pub asr_active: bool,
    pub asr_level_pct: f64,
    pub x: f64,
    pub y: f64,
    pub psi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationLog {
    pub dt: f64,
    pub records: Vec<LogRecord>,
    pub termination: Termination,
}

impl SimulationLog {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn column(&self, f: impl Fn(&LogRecord) -> f64) -> Vec<f64> {
        self.records.iter().map(f).collect()
    }
}
