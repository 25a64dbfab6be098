//! Config files: sectioned `key = value` text (TOML syntax).
//!
//! Every key is optional and falls back to the built-in default. Scalar keys
//! may instead be given with a `_kph` or `_deg` suffix (`speed_kph = 80`,
//! `amplitude_deg = 9`), converted to m/s and rad on load. See
//! `docs/config.md` for the full key list.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;
use ysc_core::params::{
    AxisShape, ConfigBundle, DriveAxle, ManeuverKind, PlantKind, TireModelKind, TorqueMap,
};
use ysc_core::units::{deg_to_rad, kph_to_mps};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("[{section}] {key}: {reason}")]
    Conflict { section: &'static str, key: &'static str, reason: String },
    #[error("replay file {path}: {reason}")]
    Replay { path: PathBuf, reason: String },
    #[error("{}{source}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Invalid { line: Option<usize>, source: ysc_core::Error },
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawFile {
    vehicle: RawVehicle,
    tire: RawTire,
    road: RawRoad,
    powertrain: RawPowertrain,
    controller: RawController,
    kalman: RawKalman,
    scenario: RawScenario,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawVehicle {
    m: Option<f64>,
    iz: Option<f64>,
    lf: Option<f64>,
    lr: Option<f64>,
    lw1: Option<f64>,
    lw2: Option<f64>,
    rw: Option<f64>,
    iw: Option<f64>,
    cf0: Option<f64>,
    cr0: Option<f64>,
    g: Option<f64>,
    h_cg: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawTire {
    model: Option<String>,
    peak_coefficient: Option<f64>,
    match_cornering_stiffness: Option<bool>,
    long_b: Option<f64>,
    long_c: Option<f64>,
    long_e: Option<f64>,
    long_sh: Option<f64>,
    long_sv: Option<f64>,
    lat_b: Option<f64>,
    lat_c: Option<f64>,
    lat_e: Option<f64>,
    lat_sh: Option<f64>,
    lat_sh_deg: Option<f64>,
    lat_sv: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawRoad {
    rho: Option<f64>,
    cd: Option<f64>,
    af: Option<f64>,
    crr: Option<f64>,
    grade: Option<f64>,
    grade_deg: Option<f64>,
    longitudinal_transfer: Option<bool>,
    lateral_transfer: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawPowertrain {
    rq: Option<f64>,
    lq: Option<f64>,
    kb: Option<f64>,
    kt: Option<f64>,
    eta_t: Option<f64>,
    k: Option<f64>,
    current_gain: Option<f64>,
    drive_axle: Option<String>,
    torque_map: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawController {
    r_deadband: Option<f64>,
    r_deadband_deg: Option<f64>,
    beta_deadband: Option<f64>,
    beta_deadband_deg: Option<f64>,
    hysteresis_ratio: Option<f64>,
    speed_grid: Option<Vec<f64>>,
    speed_grid_kph: Option<Vec<f64>>,
    weight_sideslip: Option<f64>,
    weight_yaw_rate: Option<f64>,
    weight_effort: Option<f64>,
    max_moment: Option<f64>,
    max_brake_torque: Option<f64>,
    brake_tau: Option<f64>,
    motor_torque_floor: Option<f64>,
    asr_threshold_kph: Option<f64>,
    asr_fast_rate: Option<f64>,
    asr_slow_rate: Option<f64>,
    asr_floor_pct: Option<f64>,
    control_period: Option<f64>,
    mirror_brake_selection: Option<bool>,
    cruise_gain: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawKalman {
    q: Option<[[f64; 2]; 2]>,
    r_meas: Option<f64>,
    p0: Option<[f64; 2]>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawScenario {
    maneuver: Option<String>,
    amplitude: Option<f64>,
    amplitude_deg: Option<f64>,
    start: Option<f64>,
    frequency: Option<f64>,
    swerve_time: Option<f64>,
    gap: Option<f64>,
    replay: Option<Vec<[f64; 2]>>,
    replay_file: Option<PathBuf>,
    speed: Option<f64>,
    speed_kph: Option<f64>,
    mu: Option<f64>,
    ysc: Option<bool>,
    plant: Option<String>,
    duration: Option<f64>,
    dt: Option<f64>,
    yaw_rate_noise_std: Option<f64>,
    yaw_rate_noise_std_deg: Option<f64>,
    seed: Option<u64>,
}

fn set<T>(dst: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *dst = v;
    }
}

/// Resolves a plain SI key and its suffixed alternative.
fn unit_key(
    section: &'static str,
    key: &'static str,
    si: Option<f64>,
    suffixed: Option<f64>,
    convert: fn(f64) -> f64,
) -> Result<Option<f64>, ConfigError> {
    match (si, suffixed) {
        (Some(_), Some(_)) => Err(ConfigError::Conflict {
            section,
            key,
            reason: "given both with and without a unit suffix".into(),
        }),
        (Some(v), None) => Ok(Some(v)),
        (None, s) => Ok(s.map(convert)),
    }
}

fn choice<T: Copy>(
    section: &'static str,
    key: &'static str,
    value: Option<&str>,
    options: &[(&str, T)],
) -> Result<Option<T>, ConfigError> {
    let Some(v) = value else { return Ok(None) };
    options.iter().find(|(name, _)| *name == v).map(|o| Some(o.1)).ok_or_else(|| ConfigError::Conflict {
        section,
        key,
        reason: format!(
            "unknown value {v:?}, expected one of {}",
            options.iter().map(|o| o.0).collect::<Vec<_>>().join(", ")
        ),
    })
}

/// 1-based line and column of a byte offset.
fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Line on which `key` is assigned inside `[section]`, if present.
fn key_line(src: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = "";
    for (i, raw) in src.lines().enumerate() {
        let line = raw.trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = name.trim();
            continue;
        }
        if current != section {
            continue;
        }
        if let Some((k, _)) = line.split_once('=') {
            let k = k.trim();
            if k == key || k.strip_prefix(key).is_some_and(|s| s == "_kph" || s == "_deg") {
                return Some(i + 1);
            }
        }
    }
    None
}

/// Maps a validation error key such as `scenario.speed` to its line in `src`.
fn locate(src: &str, err: ysc_core::Error) -> ConfigError {
    let key = match &err {
        ysc_core::Error::OutOfRange { key, .. } | ysc_core::Error::InvalidTable { key, .. } => Some(*key),
        _ => None,
    };
    let line = key.and_then(|k| {
        if k == "mu" {
            return key_line(src, "scenario", "mu");
        }
        let (section, name) = k.split_once('.')?;
        key_line(src, section, name)
    });
    ConfigError::Invalid { line, source: err }
}

/// Parses config text. Relative replay file paths are resolved against `base_dir`.
pub fn parse_config(src: &str, base_dir: &Path) -> Result<ConfigBundle, ConfigError> {
    let raw: RawFile = toml::from_str(src).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(src, s.start));
        ConfigError::Parse { line, column, message: e.message().trim().to_string() }
    })?;
    let mut cfg = ConfigBundle::default();

    let v = raw.vehicle;
    let veh = &mut cfg.vehicle;
    set(&mut veh.m, v.m);
    set(&mut veh.iz, v.iz);
    set(&mut veh.lf, v.lf);
    set(&mut veh.lr, v.lr);
    set(&mut veh.lw1, v.lw1);
    set(&mut veh.lw2, v.lw2);
    set(&mut veh.rw, v.rw);
    set(&mut veh.iw, v.iw);
    set(&mut veh.cf0, v.cf0);
    set(&mut veh.cr0, v.cr0);
    set(&mut veh.g, v.g);
    set(&mut veh.h_cg, v.h_cg);

    let t = raw.tire;
    let tire = &mut cfg.tire;
    set(
        &mut tire.model,
        choice("tire", "model", t.model.as_deref(), &[("pacejka", TireModelKind::Pacejka), ("linear", TireModelKind::Linear)])?,
    );
    set(&mut tire.peak_coefficient, t.peak_coefficient);
    set(&mut tire.match_cornering_stiffness, t.match_cornering_stiffness);
    let lo = &mut tire.longitudinal;
    set(&mut lo.b, t.long_b);
    set(&mut lo.c, t.long_c);
    set(&mut lo.e, t.long_e);
    set(&mut lo.sh, t.long_sh);
    set(&mut lo.sv, t.long_sv);
    let la = &mut tire.lateral;
    set(&mut la.b, t.lat_b);
    set(&mut la.c, t.lat_c);
    set(&mut la.e, t.lat_e);
    set(&mut la.sh, unit_key("tire", "lat_sh", t.lat_sh, t.lat_sh_deg, deg_to_rad)?);
    set(&mut la.sv, t.lat_sv);

    let r = raw.road;
    let road = &mut cfg.road;
    set(&mut road.rho, r.rho);
    set(&mut road.cd, r.cd);
    set(&mut road.af, r.af);
    set(&mut road.crr, r.crr);
    set(&mut road.grade, unit_key("road", "grade", r.grade, r.grade_deg, deg_to_rad)?);
    set(&mut road.longitudinal_transfer, r.longitudinal_transfer);
    set(&mut road.lateral_transfer, r.lateral_transfer);

    let p = raw.powertrain;
    let pt = &mut cfg.powertrain;
    set(&mut pt.rq, p.rq);
    set(&mut pt.lq, p.lq);
    set(&mut pt.kb, p.kb);
    set(&mut pt.kt, p.kt);
    set(&mut pt.eta_t, p.eta_t);
    set(&mut pt.k, p.k);
    set(&mut pt.current_gain, p.current_gain);
    set(
        &mut pt.drive_axle,
        choice(
            "powertrain",
            "drive_axle",
            p.drive_axle.as_deref(),
            &[("front", DriveAxle::Front), ("rear", DriveAxle::Rear), ("all", DriveAxle::All)],
        )?,
    );
    if let Some(points) = p.torque_map {
        pt.torque_map =
            TorqueMap::new(points.into_iter().map(|[w, t]| (w, t)).collect()).map_err(|e| locate(src, e))?;
    }

    let c = raw.controller;
    let ctl = &mut cfg.controller;
    set(&mut ctl.r_deadband, unit_key("controller", "r_deadband", c.r_deadband, c.r_deadband_deg, deg_to_rad)?);
    set(
        &mut ctl.beta_deadband,
        unit_key("controller", "beta_deadband", c.beta_deadband, c.beta_deadband_deg, deg_to_rad)?,
    );
    set(&mut ctl.hysteresis_ratio, c.hysteresis_ratio);
    match (c.speed_grid, c.speed_grid_kph) {
        (Some(_), Some(_)) => {
            return Err(ConfigError::Conflict {
                section: "controller",
                key: "speed_grid",
                reason: "given both with and without a unit suffix".into(),
            })
        }
        (Some(g), None) => ctl.speed_grid = g,
        (None, Some(g)) => ctl.speed_grid = g.into_iter().map(kph_to_mps).collect(),
        (None, None) => {}
    }
    set(&mut ctl.weights.sideslip, c.weight_sideslip);
    set(&mut ctl.weights.yaw_rate, c.weight_yaw_rate);
    set(&mut ctl.weights.effort, c.weight_effort);
    set(&mut ctl.max_moment, c.max_moment);
    set(&mut ctl.max_brake_torque, c.max_brake_torque);
    set(&mut ctl.brake_tau, c.brake_tau);
    set(&mut ctl.motor_torque_floor, c.motor_torque_floor);
    set(&mut ctl.asr_threshold_kph, c.asr_threshold_kph);
    set(&mut ctl.asr_fast_rate, c.asr_fast_rate);
    set(&mut ctl.asr_slow_rate, c.asr_slow_rate);
    set(&mut ctl.asr_floor_pct, c.asr_floor_pct);
    set(&mut ctl.control_period, c.control_period);
    set(&mut ctl.mirror_brake_selection, c.mirror_brake_selection);
    set(&mut ctl.cruise_gain, c.cruise_gain);

    let k = raw.kalman;
    set(&mut cfg.kalman.q, k.q);
    set(&mut cfg.kalman.r_meas, k.r_meas);
    set(&mut cfg.kalman.p0, k.p0);

    let s = raw.scenario;
    let scn = &mut cfg.scenario;
    set(&mut cfg.vehicle.mu, s.mu);
    set(&mut scn.amplitude, unit_key("scenario", "amplitude", s.amplitude, s.amplitude_deg, deg_to_rad)?);
    set(&mut scn.start, s.start);
    set(&mut scn.speed, unit_key("scenario", "speed", s.speed, s.speed_kph, kph_to_mps)?);
    set(&mut scn.ysc_enabled, s.ysc);
    set(
        &mut scn.plant,
        choice("scenario", "plant", s.plant.as_deref(), &[("single", PlantKind::SingleTrack), ("double", PlantKind::DoubleTrack)])?,
    );
    set(&mut scn.duration, s.duration);
    set(&mut scn.dt, s.dt);
    set(
        &mut scn.yaw_rate_noise_std,
        unit_key("scenario", "yaw_rate_noise_std", s.yaw_rate_noise_std, s.yaw_rate_noise_std_deg, deg_to_rad)?,
    );
    set(&mut scn.seed, s.seed);
    let kind = s.maneuver.as_deref().unwrap_or(maneuver_name(&scn.maneuver));
    scn.maneuver = match kind {
        "step" => ManeuverKind::Step,
        "sine" => ManeuverKind::Sine { frequency: s.frequency.unwrap_or(DEFAULT_SINE_FREQUENCY) },
        "dlc" => {
            let (swerve_time, gap) = DEFAULT_DLC_TIMING;
            ManeuverKind::DoubleLaneChange {
                swerve_time: s.swerve_time.unwrap_or(swerve_time),
                gap: s.gap.unwrap_or(gap),
            }
        }
        "replay" => ManeuverKind::Replay { samples: replay_samples(s.replay, s.replay_file, base_dir)? },
        other => {
            return Err(ConfigError::Conflict {
                section: "scenario",
                key: "maneuver",
                reason: format!("unknown value {other:?}, expected one of step, sine, dlc, replay"),
            })
        }
    };

    cfg.validate().map_err(|e| locate(src, e))?;
    Ok(cfg)
}

pub const DEFAULT_SINE_FREQUENCY: f64 = 0.5;
pub const DEFAULT_DLC_TIMING: (f64, f64) = (2.5, 1.0);

pub fn maneuver_name(m: &ManeuverKind) -> &'static str {
    match m {
        ManeuverKind::Step => "step",
        ManeuverKind::Sine { .. } => "sine",
        ManeuverKind::DoubleLaneChange { .. } => "dlc",
        ManeuverKind::Replay { .. } => "replay",
    }
}

fn replay_samples(
    inline: Option<Vec<[f64; 2]>>,
    file: Option<PathBuf>,
    base_dir: &Path,
) -> Result<Vec<(f64, f64)>, ConfigError> {
    match (inline, file) {
        (Some(_), Some(_)) => Err(ConfigError::Conflict {
            section: "scenario",
            key: "replay",
            reason: "give either replay or replay_file, not both".into(),
        }),
        (Some(s), None) => Ok(s.into_iter().map(|[t, d]| (t, d)).collect()),
        (None, Some(f)) => load_replay(&base_dir.join(f)),
        (None, None) => Err(ConfigError::Conflict {
            section: "scenario",
            key: "replay",
            reason: "replay maneuver needs replay or replay_file".into(),
        }),
    }
}

/// Reads a steering replay: CSV with header `t,delta` (seconds, rad) or
/// `t,delta_deg`.
pub fn load_replay(path: &Path) -> Result<Vec<(f64, f64)>, ConfigError> {
    let fail = |reason: String| ConfigError::Replay { path: path.to_path_buf(), reason };
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| fail(e.to_string()))?;
    let headers = rdr.headers().map_err(|e| fail(e.to_string()))?.clone();
    let degrees = match (headers.get(0), headers.get(1)) {
        (Some("t"), Some("delta")) => false,
        (Some("t"), Some("delta_deg")) => true,
        _ => return Err(fail("header must be `t,delta` or `t,delta_deg`".into())),
    };
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| fail(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let num = |i: usize| -> Result<f64, ConfigError> {
            rec.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| fail(format!("line {line}: column {} is not a number", i + 1)))
        };
        let d = num(1)?;
        out.push((num(0)?, if degrees { deg_to_rad(d) } else { d }));
    }
    Ok(out)
}

pub fn load_config(path: &Path) -> Result<ConfigBundle, ConfigError> {
    let src = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
    parse_config(&src, path.parent().unwrap_or(Path::new(".")))
}

/// Writes every key in SI units. Floats use the shortest representation that
/// parses back to the same bits, so `parse_config(save_config(c)) == c`.
pub fn save_config(cfg: &ConfigBundle) -> String {
    let mut out = String::new();
    let v = &cfg.vehicle;
    section(&mut out, "vehicle", &[
        ("m", f(v.m)),
        ("iz", f(v.iz)),
        ("lf", f(v.lf)),
        ("lr", f(v.lr)),
        ("lw1", f(v.lw1)),
        ("lw2", f(v.lw2)),
        ("rw", f(v.rw)),
        ("iw", f(v.iw)),
        ("cf0", f(v.cf0)),
        ("cr0", f(v.cr0)),
        ("g", f(v.g)),
        ("h_cg", f(v.h_cg)),
    ]);
    let t = &cfg.tire;
    let model = match t.model {
        TireModelKind::Pacejka => "pacejka",
        TireModelKind::Linear => "linear",
    };
    let axis = |prefix: &str, a: &AxisShape| {
        [("b", a.b), ("c", a.c), ("e", a.e), ("sh", a.sh), ("sv", a.sv)].map(|(k, x)| (format!("{prefix}_{k}"), f(x)))
    };
    let mut tire = vec![
        ("model".to_string(), quoted(model)),
        ("peak_coefficient".to_string(), f(t.peak_coefficient)),
        ("match_cornering_stiffness".to_string(), t.match_cornering_stiffness.to_string()),
    ];
    tire.extend(axis("long", &t.longitudinal));
    tire.extend(axis("lat", &t.lateral));
    section_owned(&mut out, "tire", tire);
    let r = &cfg.road;
    section(&mut out, "road", &[
        ("rho", f(r.rho)),
        ("cd", f(r.cd)),
        ("af", f(r.af)),
        ("crr", f(r.crr)),
        ("grade", f(r.grade)),
        ("longitudinal_transfer", r.longitudinal_transfer.to_string()),
        ("lateral_transfer", r.lateral_transfer.to_string()),
    ]);
    let p = &cfg.powertrain;
    let axle = match p.drive_axle {
        DriveAxle::Front => "front",
        DriveAxle::Rear => "rear",
        DriveAxle::All => "all",
    };
    section(&mut out, "powertrain", &[
        ("rq", f(p.rq)),
        ("lq", f(p.lq)),
        ("kb", f(p.kb)),
        ("kt", f(p.kt)),
        ("eta_t", f(p.eta_t)),
        ("k", f(p.k)),
        ("current_gain", f(p.current_gain)),
        ("drive_axle", quoted(axle)),
        ("torque_map", pairs(p.torque_map.points())),
    ]);
    let c = &cfg.controller;
    section(&mut out, "controller", &[
        ("r_deadband", f(c.r_deadband)),
        ("beta_deadband", f(c.beta_deadband)),
        ("hysteresis_ratio", f(c.hysteresis_ratio)),
        ("speed_grid", list(&c.speed_grid)),
        ("weight_sideslip", f(c.weights.sideslip)),
        ("weight_yaw_rate", f(c.weights.yaw_rate)),
        ("weight_effort", f(c.weights.effort)),
        ("max_moment", f(c.max_moment)),
        ("max_brake_torque", f(c.max_brake_torque)),
        ("brake_tau", f(c.brake_tau)),
        ("motor_torque_floor", f(c.motor_torque_floor)),
        ("asr_threshold_kph", f(c.asr_threshold_kph)),
        ("asr_fast_rate", f(c.asr_fast_rate)),
        ("asr_slow_rate", f(c.asr_slow_rate)),
        ("asr_floor_pct", f(c.asr_floor_pct)),
        ("control_period", f(c.control_period)),
        ("mirror_brake_selection", c.mirror_brake_selection.to_string()),
        ("cruise_gain", f(c.cruise_gain)),
    ]);
    let k = &cfg.kalman;
    section(&mut out, "kalman", &[
        ("q", format!("[{}, {}]", list(&k.q[0]), list(&k.q[1]))),
        ("r_meas", f(k.r_meas)),
        ("p0", list(&k.p0)),
    ]);
    let sc = &cfg.scenario;
    let mut scn = vec![("maneuver".to_string(), quoted(maneuver_name(&sc.maneuver)))];
    match &sc.maneuver {
        ManeuverKind::Step => {}
        ManeuverKind::Sine { frequency } => scn.push(("frequency".into(), f(*frequency))),
        ManeuverKind::DoubleLaneChange { swerve_time, gap } => {
            scn.push(("swerve_time".into(), f(*swerve_time)));
            scn.push(("gap".into(), f(*gap)));
        }
        ManeuverKind::Replay { samples } => scn.push(("replay".into(), pairs(samples))),
    }
    let plant = match sc.plant {
        PlantKind::SingleTrack => "single",
        PlantKind::DoubleTrack => "double",
    };
    scn.extend(
        [
            ("amplitude", f(sc.amplitude)),
            ("start", f(sc.start)),
            ("speed", f(sc.speed)),
            ("mu", f(cfg.vehicle.mu)),
            ("ysc", sc.ysc_enabled.to_string()),
            ("plant", quoted(plant)),
            ("duration", f(sc.duration)),
            ("dt", f(sc.dt)),
            ("yaw_rate_noise_std", f(sc.yaw_rate_noise_std)),
            ("seed", sc.seed.to_string()),
        ]
        .map(|(k, v)| (k.to_string(), v)),
    );
    section_owned(&mut out, "scenario", scn);
    out
}

fn f(x: f64) -> String {
    // Debug formatting is the shortest round-trip representation and always
    // carries a decimal point or exponent, which keeps TOML reading it as a float.
    format!("{x:?}")
}

fn quoted(s: &str) -> String {
    format!("\"{s}\"")
}

fn list(xs: &[f64]) -> String {
    format!("[{}]", xs.iter().map(|&x| f(x)).collect::<Vec<_>>().join(", "))
}

fn pairs(xs: &[(f64, f64)]) -> String {
    format!("[{}]", xs.iter().map(|&(a, b)| format!("[{}, {}]", f(a), f(b))).collect::<Vec<_>>().join(", "))
}

fn section(out: &mut String, name: &str, keys: &[(&str, String)]) {
    section_owned(out, name, keys.iter().map(|(k, v)| (k.to_string(), v.clone())).collect());
}

fn section_owned(out: &mut String, name: &str, keys: Vec<(String, String)>) {
    if !out.is_empty() {
        out.push('\n');
    }
    let _ = writeln!(out, "[{name}]");
    for (k, v) in keys {
        let _ = writeln!(out, "{k} = {v}");
    }
}
