//! Parameter sets and scenario configuration.
//!
//! Every model constant is reachable from exactly one of these types. The
//! defaults describe a front-driven light commercial EV; they are configuration
//! defaults, not identified values for any particular vehicle.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::units::{kph_to_mps, GRAVITY};

/// Geometric, inertial and cornering-stiffness constants of the vehicle.
#[derive(Debug, Clone, PartialEq)]
pub struct VehicleParams {
    /// Vehicle mass, kg.
    pub m: f64,
    /// Yaw moment of inertia, kg·m².
    pub iz: f64,
    /// CG to front axle, m.
    pub lf: f64,
    /// CG to rear axle, m.
    pub lr: f64,
    /// Front track width, m.
    pub lw1: f64,
    /// Rear track width, m.
    pub lw2: f64,
    /// Effective tire radius, m.
    pub rw: f64,
    /// Wheel spin inertia, kg·m².
    pub iw: f64,
    /// Front axle cornering stiffness, N/rad.
    pub cf0: f64,
    /// Rear axle cornering stiffness, N/rad.
    pub cr0: f64,
    /// Tire-road friction coefficient.
    pub mu: f64,
    /// Gravity, m/s². Fixed at 9.81.
    pub g: f64,
    /// CG height, m. Only used by the optional load-transfer terms.
    pub h_cg: f64,
}

impl Default for VehicleParams {
    fn default() -> Self {
        Self {
            m: 1800.0,
            iz: 3000.0,
            lf: 1.2,
            lr: 1.6,
            lw1: 1.5,
            lw2: 1.5,
            rw: 0.3,
            iw: 1.2,
            cf0: 80_000.0,
            cr0: 90_000.0,
            mu: 1.0,
            g: GRAVITY,
            h_cg: 0.6,
        }
    }
}

impl VehicleParams {
    pub fn wheelbase(&self) -> f64 {
        self.lf + self.lr
    }

    pub fn validate(&self) -> Result<()> {
        positive("vehicle.m", self.m)?;
        positive("vehicle.iz", self.iz)?;
        positive("vehicle.lf", self.lf)?;
        positive("vehicle.lr", self.lr)?;
        positive("vehicle.rw", self.rw)?;
        positive("vehicle.iw", self.iw)?;
        positive("vehicle.cf0", self.cf0)?;
        positive("vehicle.cr0", self.cr0)?;
        positive("vehicle.h_cg", self.h_cg)?;
        let two_l = 2.0 * self.wheelbase();
        for (key, w) in [("vehicle.lw1", self.lw1), ("vehicle.lw2", self.lw2)] {
            if !(w > 0.0 && w < two_l) {
                return Err(Error::OutOfRange {
                    key,
                    value: w,
                    bound: "(0, 2*wheelbase)",
                });
            }
        }
        if !(self.mu > 0.0 && self.mu <= 1.3) {
            return Err(Error::OutOfRange {
                key: "mu",
                value: self.mu,
                bound: "(0,1.3]",
            });
        }
        if self.g != GRAVITY {
            return Err(Error::OutOfRange {
                key: "vehicle.g",
                value: self.g,
                bound: "fixed at 9.81",
            });
        }
        Ok(())
    }
}

/// Shape coefficients of one Magic Formula axis. The peak `D` is not stored
/// here: it is built from the vertical load as `mu * F_z * peak_coefficient`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisShape {
    pub b: f64,
    pub c: f64,
    pub e: f64,
    pub sh: f64,
    pub sv: f64,
}

impl AxisShape {
    fn validate(&self, key: &'static str) -> Result<()> {
        if !(self.b > 0.0) {
            return Err(Error::OutOfRange { key, value: self.b, bound: "B > 0" });
        }
        if !(self.c > 0.0 && self.c <= 3.0) {
            return Err(Error::OutOfRange { key, value: self.c, bound: "C in (0,3]" });
        }
        if !(self.e <= 1.0) {
            return Err(Error::OutOfRange { key, value: self.e, bound: "E <= 1" });
        }
        finite(key, self.sh)?;
        finite(key, self.sv)
    }
}

/// Which tire law the double-track plant uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TireModelKind {
    Pacejka,
    Linear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PacejkaParams {
    pub longitudinal: AxisShape,
    pub lateral: AxisShape,
    /// Normalized peak coefficient: `D = mu * F_z * peak_coefficient`.
    pub peak_coefficient: f64,
    /// When set, the lateral `B` is refitted per axle so that the slope at the
    /// origin under static load equals the axle cornering stiffness.
    pub match_cornering_stiffness: bool,
    pub model: TireModelKind,
}

impl Default for PacejkaParams {
    fn default() -> Self {
        Self {
            longitudinal: AxisShape { b: 12.0, c: 1.65, e: 0.6, sh: 0.0, sv: 0.0 },
            lateral: AxisShape { b: 8.5, c: 1.3, e: -1.2, sh: 0.0, sv: 0.0 },
            peak_coefficient: 1.1,
            match_cornering_stiffness: true,
            model: TireModelKind::Pacejka,
        }
    }
}

impl PacejkaParams {
    pub fn validate(&self) -> Result<()> {
        self.longitudinal.validate("tire.long")?;
        self.lateral.validate("tire.lat")?;
        positive("tire.peak_coefficient", self.peak_coefficient)
    }
}

/// Aerodynamic, rolling-resistance and grade constants.
#[derive(Debug, Clone, PartialEq)]
pub struct RoadParams {
    /// Air density, kg/m³.
    pub rho: f64,
    pub cd: f64,
    /// Frontal area, m².
    pub af: f64,
    /// Rolling resistance coefficient.
    pub crr: f64,
    /// Road grade, rad (positive uphill).
    pub grade: f64,
    /// Quasi-static longitudinal load transfer.
    pub longitudinal_transfer: bool,
    /// Quasi-static lateral load transfer.
    pub lateral_transfer: bool,
}

impl Default for RoadParams {
    fn default() -> Self {
        Self {
            rho: 1.225,
            cd: 0.35,
            af: 3.0,
            crr: 0.012,
            grade: 0.0,
            longitudinal_transfer: false,
            lateral_transfer: false,
        }
    }
}

impl RoadParams {
    pub fn validate(&self) -> Result<()> {
        non_negative("road.rho", self.rho)?;
        non_negative("road.cd", self.cd)?;
        non_negative("road.af", self.af)?;
        non_negative("road.crr", self.crr)?;
        if !(self.grade.abs() < 0.5) {
            return Err(Error::OutOfRange { key: "road.grade", value: self.grade, bound: "(-0.5,0.5) rad" });
        }
        Ok(())
    }
}

/// Peak motor torque versus motor speed, linearly interpolated and symmetric
/// in both speed and torque sign.
#[derive(Debug, Clone, PartialEq)]
pub struct TorqueMap {
    points: Vec<(f64, f64)>,
}

impl TorqueMap {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        const KEY: &str = "powertrain.torque_map";
        if points.len() < 2 {
            return Err(Error::InvalidTable { key: KEY, reason: "needs at least two breakpoints" });
        }
        if points.iter().any(|&(w, t)| !w.is_finite() || !t.is_finite() || w < 0.0) {
            return Err(Error::InvalidTable { key: KEY, reason: "speeds must be finite and >= 0" });
        }
        if points.windows(2).any(|p| p[1].0 <= p[0].0) {
            return Err(Error::InvalidTable { key: KEY, reason: "speeds must be strictly increasing" });
        }
        if points.iter().any(|&(_, t)| t < 0.0) {
            return Err(Error::InvalidTable { key: KEY, reason: "torques must be non-negative" });
        }
        let knee = points
            .iter()
            .enumerate()
            .fold(0, |best, (i, p)| if p.1 > points[best].1 { i } else { best });
        if points[knee..].windows(2).any(|p| p[1].1 > p[0].1) {
            return Err(Error::InvalidTable {
                key: KEY,
                reason: "torques must be non-increasing after the base-speed knee",
            });
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Available torque magnitude at motor speed `omega` (either sign).
    pub fn max_torque(&self, omega: f64) -> f64 {
        let w = omega.abs();
        let pts = &self.points;
        if w <= pts[0].0 {
            return pts[0].1;
        }
        for p in pts.windows(2) {
            if w <= p[1].0 {
                let s = (w - p[0].0) / (p[1].0 - p[0].0);
                return p[0].1 + s * (p[1].1 - p[0].1);
            }
        }
        pts[pts.len() - 1].1
    }

    pub fn clamp(&self, torque: f64, omega: f64) -> f64 {
        let lim = self.max_torque(omega);
        torque.clamp(-lim, lim)
    }
}

impl Default for TorqueMap {
    /// 220 N·m up to 300 rad/s, constant power to 750 rad/s, then down to
    /// 50 N·m at 900 rad/s.
    fn default() -> Self {
        let mut points = vec![(0.0, 220.0)];
        let power = 220.0 * 300.0;
        let mut w = 300.0;
        while w <= 750.0 {
            points.push((w, power / w));
            w += 50.0;
        }
        points.push((900.0, 50.0));
        Self { points }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DriveAxle {
    Front,
    Rear,
    All,
}

impl DriveAxle {
    /// Drive torque share of wheel `i` (FL, FR, RL, RR order).
    pub fn share(self, wheel: usize) -> f64 {
        match (self, wheel) {
            (DriveAxle::Front, 0 | 1) | (DriveAxle::Rear, 2 | 3) => 0.5,
            (DriveAxle::All, _) => 0.25,
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowertrainParams {
    /// Motor resistance, Ω.
    pub rq: f64,
    /// Motor inductance, H.
    pub lq: f64,
    /// Back-emf constant, V·s/rad.
    pub kb: f64,
    /// Torque constant, N·m/A.
    pub kt: f64,
    /// Transmission efficiency.
    pub eta_t: f64,
    /// Gear ratio.
    pub k: f64,
    pub torque_map: TorqueMap,
    /// Proportional gain of the motor driver current loop, V/A.
    pub current_gain: f64,
    pub drive_axle: DriveAxle,
}

impl Default for PowertrainParams {
    fn default() -> Self {
        Self {
            rq: 0.05,
            lq: 0.5e-3,
            kb: 0.3,
            kt: 0.3,
            eta_t: 0.95,
            k: 7.0,
            torque_map: TorqueMap::default(),
            current_gain: 0.05,
            drive_axle: DriveAxle::Front,
        }
    }
}

impl PowertrainParams {
    pub fn validate(&self) -> Result<()> {
        positive("powertrain.rq", self.rq)?;
        positive("powertrain.lq", self.lq)?;
        positive("powertrain.kt", self.kt)?;
        non_negative("powertrain.kb", self.kb)?;
        positive("powertrain.k", self.k)?;
        non_negative("powertrain.current_gain", self.current_gain)?;
        if !(self.eta_t > 0.0 && self.eta_t <= 1.0) {
            return Err(Error::OutOfRange { key: "powertrain.eta_t", value: self.eta_t, bound: "(0,1]" });
        }
        Ok(())
    }
}

/// Quadratic-regulator weights used for the yaw-moment gain schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedbackWeights {
    pub sideslip: f64,
    pub yaw_rate: f64,
    pub effort: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControllerParams {
    /// Yaw-rate activation threshold, rad/s.
    pub r_deadband: f64,
    /// Sideslip activation threshold, rad.
    pub beta_deadband: f64,
    /// Deactivation threshold as a fraction of the activation threshold.
    pub hysteresis_ratio: f64,
    /// Gain schedule speed grid, m/s.
    pub speed_grid: Vec<f64>,
    pub weights: FeedbackWeights,
    /// Corrective yaw moment limit, N·m.
    pub max_moment: f64,
    /// Per-wheel brake torque limit, N·m.
    pub max_brake_torque: f64,
    /// Brake actuator time constant, s.
    pub brake_tau: f64,
    /// Motor torque floor while YSC reduces the drive request, N·m.
    pub motor_torque_floor: f64,
    /// ASR same-side front/rear wheel-speed difference threshold, km/h.
    pub asr_threshold_kph: f64,
    /// ASR torque level slew rate while reducing, %/s.
    pub asr_fast_rate: f64,
    /// ASR torque level recovery rate, %/s.
    pub asr_slow_rate: f64,
    /// Lowest torque level ASR commands, % of the driver request.
    pub asr_floor_pct: f64,
    /// Controller update period, s.
    pub control_period: f64,
    /// Swap left and right in the brake-wheel table.
    pub mirror_brake_selection: bool,
    /// Cruise torque per unit speed error, N·m at the motor per m/s.
    pub cruise_gain: f64,
}

impl Default for ControllerParams {
    fn default() -> Self {
        Self {
            r_deadband: 0.02,
            beta_deadband: 0.01,
            hysteresis_ratio: 0.5,
            speed_grid: (1..=10).map(|i| 5.0 * i as f64).collect(),
            weights: FeedbackWeights { sideslip: 1.0, yaw_rate: 1.0, effort: 1e-10 },
            max_moment: 5000.0,
            max_brake_torque: 2500.0,
            brake_tau: 0.04,
            motor_torque_floor: 0.0,
            asr_threshold_kph: 5.0,
            asr_fast_rate: 200.0,
            asr_slow_rate: 50.0,
            asr_floor_pct: 20.0,
            control_period: 0.01,
            mirror_brake_selection: true,
            cruise_gain: 100.0,
        }
    }
}

impl ControllerParams {
    pub fn validate(&self) -> Result<()> {
        non_negative("controller.r_deadband", self.r_deadband)?;
        non_negative("controller.beta_deadband", self.beta_deadband)?;
        if !(self.hysteresis_ratio > 0.0 && self.hysteresis_ratio <= 1.0) {
            return Err(Error::OutOfRange {
                key: "controller.hysteresis_ratio",
                value: self.hysteresis_ratio,
                bound: "(0,1]",
            });
        }
        if self.speed_grid.is_empty() {
            return Err(Error::InvalidTable { key: "controller.speed_grid", reason: "empty grid" });
        }
        if self.speed_grid.windows(2).any(|w| w[1] <= w[0]) || self.speed_grid[0] <= 0.5 {
            return Err(Error::InvalidTable {
                key: "controller.speed_grid",
                reason: "speeds must be > 0.5 m/s and strictly increasing",
            });
        }
        non_negative("controller.weight_sideslip", self.weights.sideslip)?;
        non_negative("controller.weight_yaw_rate", self.weights.yaw_rate)?;
        positive("controller.weight_effort", self.weights.effort)?;
        positive("controller.max_moment", self.max_moment)?;
        positive("controller.max_brake_torque", self.max_brake_torque)?;
        positive("controller.brake_tau", self.brake_tau)?;
        non_negative("controller.motor_torque_floor", self.motor_torque_floor)?;
        if !(5.0..=6.0).contains(&self.asr_threshold_kph) {
            return Err(Error::OutOfRange {
                key: "controller.asr_threshold_kph",
                value: self.asr_threshold_kph,
                bound: "[5,6] km/h",
            });
        }
        positive("controller.asr_fast_rate", self.asr_fast_rate)?;
        positive("controller.asr_slow_rate", self.asr_slow_rate)?;
        if !(0.0..=100.0).contains(&self.asr_floor_pct) {
            return Err(Error::OutOfRange {
                key: "controller.asr_floor_pct",
                value: self.asr_floor_pct,
                bound: "[0,100]",
            });
        }
        positive("controller.control_period", self.control_period)?;
        non_negative("controller.cruise_gain", self.cruise_gain)
    }
}

/// Covariances of the sideslip Kalman filter.
#[derive(Debug, Clone, PartialEq)]
pub struct KalmanParams {
    /// Process noise intensity, rows of a symmetric 2×2 matrix (per second).
    pub q: [[f64; 2]; 2],
    /// Yaw-rate measurement noise variance, rad²/s².
    pub r_meas: f64,
    /// Initial covariance diagonal.
    pub p0: [f64; 2],
}

impl Default for KalmanParams {
    fn default() -> Self {
        Self {
            q: [[1e-4, 0.0], [0.0, 1e-4]],
            r_meas: 0.005 * 0.005,
            p0: [1e-2, 1e-3],
        }
    }
}

impl KalmanParams {
    pub fn validate(&self) -> Result<()> {
        let q = self.q;
        if q[0][1] != q[1][0] || q[0][0] < 0.0 || q[1][1] < 0.0 || q[0][0] * q[1][1] < q[0][1] * q[0][1] {
            return Err(Error::OutOfRange { key: "kalman.q", value: q[0][1], bound: "symmetric PSD" });
        }
        positive("kalman.r_meas", self.r_meas)?;
        non_negative("kalman.p0_beta", self.p0[0])?;
        non_negative("kalman.p0_r", self.p0[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlantKind {
    SingleTrack,
    DoubleTrack,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ManeuverKind {
    /// Rate-limited step to `amplitude` at `start`.
    Step,
    /// `amplitude * sin(2π f (t - start))` for `t >= start`.
    Sine { frequency: f64 },
    /// Two opposite full-sine swerves of length `swerve_time` separated by `gap`.
    DoubleLaneChange { swerve_time: f64, gap: f64 },
    /// Linear interpolation of recorded `(t, delta)` samples.
    Replay { samples: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub maneuver: ManeuverKind,
    /// Road-wheel steering amplitude, rad.
    pub amplitude: f64,
    /// Maneuver start time, s.
    pub start: f64,
    /// Initial (and cruise target) speed, m/s.
    pub speed: f64,
    pub ysc_enabled: bool,
    pub plant: PlantKind,
    /// Duration, s.
    pub duration: f64,
    /// Integrator step, s.
    pub dt: f64,
    /// Gyro noise standard deviation, rad/s. Zero disables noise.
    pub yaw_rate_noise_std: f64,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            maneuver: ManeuverKind::DoubleLaneChange { swerve_time: 2.5, gap: 1.0 },
            amplitude: 0.16,
            start: 1.0,
            speed: kph_to_mps(80.0),
            ysc_enabled: true,
            plant: PlantKind::DoubleTrack,
            duration: 10.0,
            dt: 1e-3,
            yaw_rate_noise_std: 0.0,
            seed: 0,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(Error::OutOfRange { key: "scenario.duration", value: self.duration, bound: "> 0" });
        }
        if !(1e-4..=1e-2).contains(&self.dt) {
            return Err(Error::OutOfRange { key: "scenario.dt", value: self.dt, bound: "[1e-4,1e-2] s" });
        }
        if !(self.speed > 1.0 && self.speed.is_finite()) {
            return Err(Error::OutOfRange {
                key: "scenario.speed",
                value: self.speed,
                bound: "speed > 1 m/s required",
            });
        }
        if !(self.amplitude.abs() <= 0.6) {
            return Err(Error::OutOfRange { key: "scenario.amplitude", value: self.amplitude, bound: "|delta| <= 0.6 rad" });
        }
        non_negative("scenario.start", self.start)?;
        non_negative("scenario.yaw_rate_noise_std", self.yaw_rate_noise_std)?;
        match &self.maneuver {
            ManeuverKind::Step => {}
            ManeuverKind::Sine { frequency } => positive("scenario.frequency", *frequency)?,
            ManeuverKind::DoubleLaneChange { swerve_time, gap } => {
                positive("scenario.swerve_time", *swerve_time)?;
                non_negative("scenario.gap", *gap)?;
            }
            ManeuverKind::Replay { samples } => {
                if samples.is_empty() {
                    return Err(Error::InvalidTable { key: "scenario.replay", reason: "no samples" });
                }
                if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err(Error::InvalidTable { key: "scenario.replay", reason: "times must be strictly increasing" });
                }
                if samples.iter().any(|s| !(s.1.abs() <= 0.6)) {
                    return Err(Error::InvalidTable { key: "scenario.replay", reason: "|delta| must be <= 0.6 rad" });
                }
            }
        }
        Ok(())
    }
}

/// Everything one simulation run reads.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConfigBundle {
    pub vehicle: VehicleParams,
    pub tire: PacejkaParams,
    pub road: RoadParams,
    pub powertrain: PowertrainParams,
    pub controller: ControllerParams,
    pub kalman: KalmanParams,
    pub scenario: ScenarioConfig,
}

impl ConfigBundle {
    pub fn validate(&self) -> Result<()> {
        self.vehicle.validate()?;
        self.tire.validate()?;
        self.road.validate()?;
        self.powertrain.validate()?;
        self.controller.validate()?;
        self.kalman.validate()?;
        self.scenario.validate()
    }
}

fn finite(key: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange { key, value: v, bound: "finite" })
    }
}

fn positive(key: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange { key, value: v, bound: "> 0" })
    }
}

fn non_negative(key: &'static str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange { key, value: v, bound: ">= 0" })
    }
}
