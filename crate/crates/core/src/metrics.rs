//! Scalar summaries of a simulation log.

use crate::sim::SimulationLog;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MetricsReport {
    /// RMS of `r - r_limited`, rad/s.
    pub rms_yaw_rate_error: f64,
    /// RMS of `beta - beta_limited`, rad.
    pub rms_sideslip_error: f64,
    /// Peak |beta|, rad.
    pub peak_beta: f64,
    /// Peak |a_y|, m/s².
    pub peak_a_y: f64,
    /// Fraction of logged steps with YSC active.
    pub active_fraction: f64,
    /// Brake energy proxy `∫ Σ T_b |ω| dt`, J.
    pub brake_energy: f64,
}

fn rms(it: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = it.fold((0.0, 0usize), |(s, n), x| (s + x * x, n + 1));
    if n == 0 {
        0.0
    } else {
        libm::sqrt(sum / n as f64)
    }
}

impl MetricsReport {
    pub fn from_log(log: &SimulationLog) -> Self {
        let recs = &log.records;
        if recs.is_empty() {
            return Self::default();
        }
        let peak = |f: fn(&crate::sim::LogRecord) -> f64| recs.iter().map(|r| f(r).abs()).fold(0.0, f64::max);
        // Left-rectangle rule: each record's held state applies over one step.
        let brake_energy = recs
            .iter()
            .map(|r| r.brake_torque.iter().zip(&r.omega).map(|(t, w)| t * w.abs()).sum::<f64>())
            .sum::<f64>()
            * log.dt;
        Self {
            rms_yaw_rate_error: rms(recs.iter().map(|r| r.r - r.r_limited)),
            rms_sideslip_error: rms(recs.iter().map(|r| r.beta - r.beta_limited)),
            peak_beta: peak(|r| r.beta),
            peak_a_y: peak(|r| r.a_y),
            active_fraction: recs.iter().filter(|r| r.ysc_active).count() as f64 / recs.len() as f64,
            brake_energy,
        }
    }
}
