//! Two-level yaw stability control and traction (ASR) torque adaptation.
//!
//! The upper level turns steering and speed into yaw-rate and sideslip
//! references, decides activation and computes a corrective yaw moment by
//! state feedback. The lower level picks the wheel to brake, converts the
//! moment into a brake torque and reduces the drive request.

pub mod asr;
pub mod controller;
pub mod gains;
pub mod references;
pub mod ysc;

pub use asr::{asr_adapt_torque, AsrSignals};
pub use controller::{ControllerOutput, Measurements, YawStabilityController};
pub use gains::{design_feedback_gains, lqr_gain, GainSchedule};
pub use references::{apply_limits, compute_references, nominal_references, ReferenceState};
pub use ysc::{
    brake_torque_for_moment, brake_wheel_for, corrective_yaw_moment, motor_torque_request,
    select_brake_wheel, brake_table_case, Activation,
};

use crate::plant::Wheel;

/// What the controller asks of the actuators for one control period.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ActuatorCommand {
    /// Corrective yaw moment, N·m.
    pub moment: f64,
    pub brake_wheel: Option<Wheel>,
    /// Brake torque at `brake_wheel`, N·m. Zero when no wheel is selected.
    pub brake_torque: f64,
    /// Motor torque request, N·m at the motor shaft.
    pub motor_torque_request: f64,
}

impl ActuatorCommand {
    /// Per-wheel brake torque commands, clamped to `[0, max]`.
    pub fn brake_torques(&self, max: f64) -> [f64; 4] {
        let mut out = [0.0; 4];
        if let Some(w) = self.brake_wheel {
            out[w.index()] = self.brake_torque.clamp(0.0, max);
        }
        out
    }
}
