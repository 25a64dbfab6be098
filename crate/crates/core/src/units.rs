//! Unit helpers. Everything inside the crate is SI.

/// Standard gravity, m/s².
pub const GRAVITY: f64 = 9.81;

pub fn kph_to_mps(v: f64) -> f64 {
    v / 3.6
}

pub fn mps_to_kph(v: f64) -> f64 {
    v * 3.6
}

pub fn deg_to_rad(a: f64) -> f64 {
    a.to_radians()
}
