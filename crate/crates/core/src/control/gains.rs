//! Speed-scheduled state-feedback gains for the corrective yaw moment.
//!
//! At each grid speed the linear single-track model with a yaw-moment input
//! is regulated by an infinite-horizon quadratic cost
//! `∫ w_β β² + w_r r² + w_M M² dt`. The continuous algebraic Riccati equation
//! is solved by Newton–Kleinman iteration on 2×2 Lyapunov equations.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{lyapunov, Mat2, Vec2};
use crate::params::{FeedbackWeights, VehicleParams};
use crate::plant::single_track::{moment_input, single_track_matrices};

#[derive(Debug, Clone, PartialEq)]
pub struct GainSchedule {
    speeds: Vec<f64>,
    gains: Vec<[f64; 2]>,
    poles: Vec<[f64; 2]>,
}

impl GainSchedule {
    pub fn speeds(&self) -> &[f64] {
        &self.speeds
    }

    /// Gain rows `[k_beta, k_r]`, one per grid speed.
    pub fn gains(&self) -> &[[f64; 2]] {
        &self.gains
    }

    /// Real parts of the closed-loop eigenvalues at each grid speed.
    pub fn pole_real_parts(&self) -> &[[f64; 2]] {
        &self.poles
    }

    /// Gain row at `v`, linearly interpolated and held constant outside the grid.
    pub fn gain_at(&self, v: f64) -> [f64; 2] {
        let s = &self.speeds;
        if v <= s[0] {
            return self.gains[0];
        }
        for i in 1..s.len() {
            if v <= s[i] {
                let w = (v - s[i - 1]) / (s[i] - s[i - 1]);
                let (a, b) = (self.gains[i - 1], self.gains[i]);
                return [a[0] + w * (b[0] - a[0]), a[1] + w * (b[1] - a[1])];
            }
        }
        self.gains[self.gains.len() - 1]
    }
}

/// Quadratic-regulator gain `K` (for `u = -K x`) of `ẋ = A x + b u`.
pub fn lqr_gain(a: &Mat2, b: &Vec2, q: &Mat2, r: f64) -> core::result::Result<[f64; 2], &'static str> {
    if !(r > 0.0) {
        return Err("effort weight must be positive");
    }
    let mut k = if a.is_hurwitz() { Vec2([0.0, 0.0]) } else { place_initial(a, b)? };
    for _ in 0..200 {
        let closed = *a - b.outer(&k);
        if !closed.is_hurwitz() {
            return Err("iteration lost stability");
        }
        let w = *q + k.outer(&k).scale(r);
        let p = lyapunov(&closed, &w).ok_or("singular Lyapunov equation")?;
        let next = (p * *b).scale(1.0 / r);
        let change = (next - k).0[0].abs().max((next - k).0[1].abs());
        k = next;
        if change <= 1e-13 * (1.0 + k.0[0].abs().max(k.0[1].abs())) {
            return Ok(k.0);
        }
    }
    Err("Riccati iteration did not converge")
}

/// Stabilizing gain by pole placement, used to start the iteration when the
/// open loop is unstable.
fn place_initial(a: &Mat2, b: &Vec2) -> core::result::Result<Vec2, &'static str> {
    // Controllability matrix [b, A b].
    let ab = *a * *b;
    let wc = Mat2([[b.0[0], ab.0[0]], [b.0[1], ab.0[1]]]);
    let inv = wc.inverse().ok_or("not controllable")?;
    let scale = a.max_abs().max(1.0);
    // Desired characteristic polynomial (s + scale)(s + 2 scale).
    let (c1, c0) = (3.0 * scale, 2.0 * scale * scale);
    let pa = *a * *a + a.scale(c1) + Mat2::IDENTITY.scale(c0);
    // Ackermann: K = [0 1] Wc⁻¹ p(A).
    let row = Vec2([inv.0[1][0], inv.0[1][1]]);
    let k = Vec2([
        row.0[0] * pa.0[0][0] + row.0[1] * pa.0[1][0],
        row.0[0] * pa.0[0][1] + row.0[1] * pa.0[1][1],
    ]);
    Ok(k)
}

/// Designs one gain row per grid speed. `M = K e` with `e` the reference minus
/// the state, so the rows are the regulator gains directly.
pub fn design_feedback_gains(p: &VehicleParams, w: &FeedbackWeights, grid: &[f64]) -> Result<GainSchedule> {
    if grid.is_empty() {
        return Err(Error::InvalidTable { key: "controller.speed_grid", reason: "empty grid" });
    }
    if grid.windows(2).any(|g| g[1] <= g[0]) {
        return Err(Error::InvalidTable { key: "controller.speed_grid", reason: "speeds must be strictly increasing" });
    }
    let q = Mat2::diag(w.sideslip, w.yaw_rate);
    let b = moment_input(p);
    let mut gains = Vec::with_capacity(grid.len());
    let mut poles = Vec::with_capacity(grid.len());
    for &v in grid {
        let (a, _) = single_track_matrices(p, v).map_err(|_| Error::Synthesis { speed: v, reason: "speed too low" })?;
        let k = lqr_gain(&a, &b, &q, w.effort).map_err(|reason| Error::Synthesis { speed: v, reason })?;
        let closed = a - b.outer(&Vec2(k));
        let re = closed.eigen_real_parts();
        if !(re[1] < 0.0) {
            return Err(Error::Synthesis { speed: v, reason: "closed loop not stable" });
        }
        gains.push(k);
        poles.push(re);
    }
    Ok(GainSchedule { speeds: grid.to_vec(), gains, poles })
}
