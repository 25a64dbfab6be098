//! Plant models: linear single-track, nonlinear double-track with an EV
//! powertrain, and the brake actuator lag.

pub mod brake;
pub mod double_track;
pub mod powertrain;
pub mod single_track;

pub use brake::{brake_actuator_derivative, brake_actuator_step};
pub use double_track::{wheel_slip_angles, DoubleTrackModel, PlantState, TrackOutputs};
pub use powertrain::{
    drive_torque, motor_step, road_load, slip_ratio, wheel_dynamics, RoadLoad, SlipRatio,
};
pub use single_track::{
    single_track_derivatives, single_track_matrices, SingleTrackDiscrete, SingleTrackState,
};

use core::fmt;

/// Wheel position. Array order everywhere is FL, FR, RL, RR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wheel {
    FL,
    FR,
    RL,
    RR,
}

impl Wheel {
    pub const ALL: [Wheel; 4] = [Wheel::FL, Wheel::FR, Wheel::RL, Wheel::RR];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_front(self) -> bool {
        matches!(self, Wheel::FL | Wheel::FR)
    }

    pub fn is_left(self) -> bool {
        matches!(self, Wheel::FL | Wheel::RL)
    }

    /// Same axle, other side.
    pub fn mirrored(self) -> Wheel {
        match self {
            Wheel::FL => Wheel::FR,
            Wheel::FR => Wheel::FL,
            Wheel::RL => Wheel::RR,
            Wheel::RR => Wheel::RL,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Wheel::FL => "FL",
            Wheel::FR => "FR",
            Wheel::RL => "RL",
            Wheel::RR => "RR",
        }
    }
}

impl fmt::Display for Wheel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
