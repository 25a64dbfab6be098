//! Fixed-step closed-loop simulation.

pub mod engine;
pub mod log;
pub mod maneuver;
pub mod rk4;

pub use engine::{run_scenario, run_scenario_with_gains, Termination};
pub use log::{LogRecord, SimulationLog};
pub use maneuver::{dlc_amplitude_for_offset, steering_profile, ManeuverInput};
pub use rk4::rk4_step;
