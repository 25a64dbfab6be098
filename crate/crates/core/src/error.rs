use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter violated its documented bound.
    OutOfRange {
        key: &'static str,
        value: f64,
        bound: &'static str,
    },
    /// Invalid tabular data (torque map, gain grid, replay samples).
    InvalidTable { key: &'static str, reason: &'static str },
    /// The single-track model is singular at low speed.
    SpeedTooLow { speed: f64, min: f64 },
    /// A wheel-velocity denominator in the slip-angle kinematics vanished.
    DegenerateKinematics { wheel: usize, denominator: f64 },
    /// The front-wheel brake geometry is singular for this steering angle.
    SingularBrakeGeometry { delta: f64 },
    /// Gain synthesis failed at one grid speed.
    Synthesis { speed: f64, reason: &'static str },
    /// A state became non-finite during integration.
    Diverged { time: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRange { key, value, bound } => {
                write!(f, "{key} out of range {bound} (got {value})")
            }
            Error::InvalidTable { key, reason } => write!(f, "{key}: {reason}"),
            Error::SpeedTooLow { speed, min } => {
                write!(f, "speed too low: {speed} m/s (model requires > {min} m/s)")
            }
            Error::DegenerateKinematics { wheel, denominator } => write!(
                f,
                "degenerate wheel kinematics at wheel {wheel}: longitudinal velocity {denominator} m/s"
            ),
            Error::SingularBrakeGeometry { delta } => {
                write!(f, "singular front brake geometry at steering angle {delta} rad")
            }
            Error::Synthesis { speed, reason } => {
                write!(f, "gain synthesis failed at {speed} m/s: {reason}")
            }
            Error::Diverged { time } => write!(f, "simulation diverged at t = {time} s"),
        }
    }
}

impl core::error::Error for Error {}
