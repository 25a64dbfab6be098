//! Vehicle dynamics and yaw stability control for a front-driven electric vehicle.
//!
//! The crate is `no_std` (it needs `alloc` for gain schedules, torque maps and
//! simulation logs) and performs no IO. File formats, the command line front end
//! and plotting live in the companion `ysc` crate.
//!
//! Sign conventions follow ISO 8855: `x` forward, `y` to the left, yaw rate
//! positive counter-clockwise seen from above, positive road-wheel angle steers
//! left. The left wheels therefore sit at `+track/2`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod control;
pub mod error;
pub mod estimation;
pub mod linalg;
pub mod metrics;
pub mod params;
pub mod plant;
pub mod sim;
pub mod tire;
pub mod units;

pub use error::{Error, Result};
pub use params::{
    ConfigBundle, ControllerParams, KalmanParams, PacejkaParams, PowertrainParams, ScenarioConfig,
    VehicleParams,
};
