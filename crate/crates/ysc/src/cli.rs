use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ysc_core::control::design_feedback_gains;
use ysc_core::params::{ConfigBundle, ManeuverKind, PlantKind};
use ysc_core::sim::{run_scenario_with_gains, SimulationLog};
use ysc_core::units::kph_to_mps;

use crate::config::{load_config, maneuver_name, DEFAULT_DLC_TIMING, DEFAULT_SINE_FREQUENCY};
use crate::csvlog::{log_to_string, real};
use crate::plot::{overlay_plot, run_plot};
use crate::report::{to_json, CompareReport, RunReport};

#[derive(Debug, Parser)]
#[command(name = "ysc", version, about = "Yaw stability control simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario and write log.csv, metrics.json and plot.svg.
    Simulate(SimulateArgs),
    /// Run a scenario pair and write compare.csv, metrics.json and plot.svg.
    Compare(CompareArgs),
    /// Print the feedback gain schedule as CSV.
    Gains(GainsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Maneuver {
    Step,
    Sine,
    Dlc,
    Replay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Plant {
    Single,
    Double,
}

impl From<Plant> for PlantKind {
    fn from(p: Plant) -> Self {
        match p {
            Plant::Single => PlantKind::SingleTrack,
            Plant::Double => PlantKind::DoubleTrack,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// Config file; built-in defaults when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub maneuver: Option<Maneuver>,
    #[arg(long, allow_negative_numbers = true)]
    pub speed_kph: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long, value_enum)]
    pub ysc: Option<Switch>,
    #[arg(long, value_enum)]
    pub plant: Option<Plant>,
    /// Gyro noise seed (noise level comes from the config).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Vary {
    /// YSC off (a) against YSC on (b).
    Ysc,
    /// Single-track (a) against double-track (b).
    Plant,
    /// The same scenario twice.
    None,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, value_enum, default_value = "ysc")]
    pub vary: Vary,
}

#[derive(Debug, Clone, Args)]
pub struct GainsArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated speed grid in m/s, replacing the configured one.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Grid)
}

fn base_config(path: Option<&Path>) -> Result<ConfigBundle> {
    match path {
        Some(p) => load_config(p).with_context(|| format!("config {}", p.display())),
        None => Ok(ConfigBundle::default()),
    }
}

/// Config file plus command line overrides, validated.
pub fn scenario_config(args: &ScenarioArgs) -> Result<ConfigBundle> {
    let mut cfg = base_config(args.config.as_deref())?;
    if let Some(m) = args.maneuver {
        let current = maneuver_name(&cfg.scenario.maneuver);
        let wanted = match m {
            Maneuver::Step => "step",
            Maneuver::Sine => "sine",
            Maneuver::Dlc => "dlc",
            Maneuver::Replay => "replay",
        };
        if current != wanted {
            cfg.scenario.maneuver = match m {
                Maneuver::Step => ManeuverKind::Step,
                Maneuver::Sine => ManeuverKind::Sine { frequency: DEFAULT_SINE_FREQUENCY },
                Maneuver::Dlc => ManeuverKind::DoubleLaneChange {
                    swerve_time: DEFAULT_DLC_TIMING.0,
                    gap: DEFAULT_DLC_TIMING.1,
                },
                Maneuver::Replay => bail!("--maneuver replay needs a config with replay or replay_file"),
            };
        }
    }
    if let Some(v) = args.speed_kph {
        cfg.scenario.speed = kph_to_mps(v);
    }
    if let Some(mu) = args.mu {
        cfg.vehicle.mu = mu;
    }
    if let Some(s) = args.ysc {
        cfg.scenario.ysc_enabled = s == Switch::On;
    }
    if let Some(p) = args.plant {
        cfg.scenario.plant = p.into();
    }
    if let Some(seed) = args.seed {
        cfg.scenario.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn simulate(cfg: &ConfigBundle) -> Result<SimulationLog> {
    let gains = design_feedback_gains(&cfg.vehicle, &cfg.controller.weights, &cfg.controller.speed_grid)?;
    Ok(run_scenario_with_gains(cfg, gains)?)
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let cfg = scenario_config(&args.scenario)?;
    let log = simulate(&cfg)?;
    let out = &args.scenario.out;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    write(out, "log.csv", &log_to_string(&log))?;
    write(out, "metrics.json", &to_json(&RunReport::new(&log)))?;
    write(out, "plot.svg", &run_plot(&log))?;
    Ok(())
}

/// Side-by-side CSV of the main signals of both runs over their common samples.
pub fn compare_csv(a_label: &str, a: &SimulationLog, b_label: &str, b: &SimulationLog) -> String {
    type Col = (&'static str, fn(&ysc_core::sim::LogRecord) -> f64);
    const COLS: [Col; 6] = [
        ("r", |r| r.r),
        ("r_limited", |r| r.r_limited),
        ("beta", |r| r.beta),
        ("a_y", |r| r.a_y),
        ("moment", |r| r.moment),
        ("vx", |r| r.vx),
    ];
    let mut s = String::from("t");
    for (name, _) in COLS {
        s.push_str(&format!(",{name}_{a_label},{name}_{b_label},{name}_delta"));
    }
    s.push('\n');
    for (ra, rb) in a.records.iter().zip(&b.records) {
        s.push_str(&real(ra.t));
        for (_, get) in COLS {
            let (x, y) = (get(ra), get(rb));
            s.push_str(&format!(",{},{},{}", real(x), real(y), real(y - x)));
        }
        s.push('\n');
    }
    s
}

/// Runs both members of a comparison concurrently.
pub fn run_pair(args: &CompareArgs) -> Result<((String, SimulationLog), (String, SimulationLog))> {
    let base = scenario_config(&args.scenario)?;
    let (mut a, mut b) = (base.clone(), base.clone());
    let (la, lb) = match args.vary {
        Vary::Ysc => {
            a.scenario.ysc_enabled = false;
            b.scenario.ysc_enabled = true;
            ("ysc_off", "ysc_on")
        }
        Vary::Plant => {
            a.scenario.plant = PlantKind::SingleTrack;
            b.scenario.plant = PlantKind::DoubleTrack;
            ("single", "double")
        }
        Vary::None => ("a", "b"),
    };
    let gains = design_feedback_gains(&base.vehicle, &base.controller.weights, &base.controller.speed_grid)?;
    let (ra, rb) = std::thread::scope(|s| {
        let ga = gains.clone();
        let ha = s.spawn(|| run_scenario_with_gains(&a, ga));
        let rb = run_scenario_with_gains(&b, gains);
        (ha.join().expect("simulation thread panicked"), rb)
    });
    Ok(((la.to_string(), ra?), (lb.to_string(), rb?)))
}

pub fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let ((la, a), (lb, b)) = run_pair(args)?;
    let out = &args.scenario.out;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    write(out, "compare.csv", &compare_csv(&la, &a, &lb, &b))?;
    write(out, "metrics.json", &to_json(&CompareReport::new(&la, &a, &lb, &b)))?;
    write(out, "plot.svg", &overlay_plot(&la, &a, &lb, &b))?;
    Ok(())
}

pub fn gains_csv(cfg: &ConfigBundle, grid: &[f64]) -> Result<String> {
    let s = design_feedback_gains(&cfg.vehicle, &cfg.controller.weights, grid)?;
    let mut out = String::from("speed,k_beta,k_r,pole_re_1,pole_re_2\n");
    for ((v, k), p) in s.speeds().iter().zip(s.gains()).zip(s.pole_real_parts()) {
        out.push_str(&format!("{},{},{},{},{}\n", real(*v), real(k[0]), real(k[1]), real(p[0]), real(p[1])));
    }
    Ok(out)
}

pub fn cmd_gains(args: &GainsArgs) -> Result<()> {
    let cfg = base_config(args.config.as_deref())?;
    let grid = args.grid.clone().map_or_else(|| cfg.controller.speed_grid.clone(), |g| g.0);
    let csv = gains_csv(&cfg, &grid)?;
    match &args.out {
        Some(p) => fs::write(p, csv).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{csv}"),
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Compare(a) => cmd_compare(&a),
        Command::Gains(a) => cmd_gains(&a),
    }
}
