//! Metrics reports (`metrics.json`).

use serde::Serialize;
use ysc_core::metrics::MetricsReport;
use ysc_core::sim::{SimulationLog, Termination};

pub const METRICS_SCHEMA: &str = "ysc-metrics v1";
pub const COMPARE_SCHEMA: &str = "ysc-compare v1";

/// Key set written for every run. Units: rad/s, rad, rad, m/s², fraction, J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub rms_yaw_rate_error: f64,
    pub rms_sideslip_error: f64,
    pub peak_abs_beta: f64,
    pub peak_abs_a_y: f64,
    pub ysc_active_fraction: f64,
    pub brake_energy: f64,
}

impl From<MetricsReport> for Metrics {
    fn from(m: MetricsReport) -> Self {
        Self {
            rms_yaw_rate_error: m.rms_yaw_rate_error,
            rms_sideslip_error: m.rms_sideslip_error,
            peak_abs_beta: m.peak_beta,
            peak_abs_a_y: m.peak_a_y,
            ysc_active_fraction: m.active_fraction,
            brake_energy: m.brake_energy,
        }
    }
}

impl Metrics {
    pub fn from_log(log: &SimulationLog) -> Self {
        MetricsReport::from_log(log).into()
    }

    fn zip(&self, o: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            rms_yaw_rate_error: f(self.rms_yaw_rate_error, o.rms_yaw_rate_error),
            rms_sideslip_error: f(self.rms_sideslip_error, o.rms_sideslip_error),
            peak_abs_beta: f(self.peak_abs_beta, o.peak_abs_beta),
            peak_abs_a_y: f(self.peak_abs_a_y, o.peak_abs_a_y),
            ysc_active_fraction: f(self.ysc_active_fraction, o.ysc_active_fraction),
            brake_energy: f(self.brake_energy, o.brake_energy),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub steps: usize,
    /// False when the run stopped early because the car slowed below the model limit.
    pub completed: bool,
    pub end_time: f64,
    pub metrics: Metrics,
}

impl RunReport {
    pub fn new(log: &SimulationLog) -> Self {
        Self {
            schema: METRICS_SCHEMA,
            steps: log.len(),
            completed: log.termination == Termination::Completed,
            end_time: log.records.last().map_or(0.0, |r| r.t),
            metrics: Metrics::from_log(log),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Member {
    pub label: String,
    #[serde(flatten)]
    pub run: RunReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub schema: &'static str,
    pub a: Member,
    pub b: Member,
    /// `b - a` per metric.
    pub delta: Metrics,
    /// `b / a` per metric; null where `a` is zero.
    pub ratio: Metrics,
    /// `1 - b/a` of the RMS yaw-rate error.
    pub rms_yaw_rate_error_reduction: f64,
    /// `RMS(r_a - r_b) / RMS(r_b)` over the common samples.
    pub yaw_rate_rms_discrepancy: f64,
}

pub fn rms_discrepancy(a: &SimulationLog, b: &SimulationLog) -> f64 {
    let (num, den) = a
        .records
        .iter()
        .zip(&b.records)
        .fold((0.0, 0.0), |(n, d), (x, y)| (n + (x.r - y.r).powi(2), d + y.r * y.r));
    if den == 0.0 {
        if num == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (num / den).sqrt()
    }
}

impl CompareReport {
    pub fn new(a_label: &str, a: &SimulationLog, b_label: &str, b: &SimulationLog) -> Self {
        let ra = RunReport::new(a);
        let rb = RunReport::new(b);
        let delta = rb.metrics.zip(&ra.metrics, |b, a| b - a);
        // serde_json writes non-finite floats as null.
        let ratio = rb.metrics.zip(&ra.metrics, |b, a| b / a);
        Self {
            schema: COMPARE_SCHEMA,
            rms_yaw_rate_error_reduction: 1.0 - ratio.rms_yaw_rate_error,
            yaw_rate_rms_discrepancy: rms_discrepancy(a, b),
            a: Member { label: a_label.into(), run: ra },
            b: Member { label: b_label.into(), run: rb },
            delta,
            ratio,
        }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}
