//! SVG time-series figures rendered from a log.

use plotters::coord::Shift;
use plotters::prelude::*;
use ysc_core::sim::{LogRecord, SimulationLog};

const WIDTH: u32 = 1000;
const PANEL_HEIGHT: u32 = 300;
/// Traces are decimated to at most this many points.
const MAX_POINTS: usize = 2000;
const PALETTE: [RGBColor; 6] = [
    RGBColor(31, 119, 180),
    RGBColor(214, 39, 40),
    RGBColor(44, 160, 44),
    RGBColor(255, 127, 14),
    RGBColor(148, 103, 189),
    RGBColor(23, 190, 207),
];

type Getter = fn(&LogRecord) -> f64;

struct Trace<'a> {
    label: String,
    log: &'a SimulationLog,
    get: Getter,
    dashed: bool,
}

fn range(traces: &[Trace]) -> (f64, f64, f64, f64) {
    let t_end = traces
        .iter()
        .filter_map(|tr| tr.log.records.last().map(|r| r.t))
        .fold(0.0, f64::max)
        .max(1e-3);
    let (lo, hi) = traces
        .iter()
        .flat_map(|tr| tr.log.records.iter().map(tr.get))
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let (lo, hi) = if lo.is_finite() { (lo, hi) } else { (0.0, 0.0) };
    let pad = ((hi - lo) * 0.05).max(1e-6);
    (0.0, t_end, lo - pad, hi + pad)
}

fn panel<DB: DrawingBackend>(area: &DrawingArea<DB, Shift>, title: &str, unit: &str, traces: &[Trace]) {
    let (t0, t1, y0, y1) = range(traces);
    let Ok(mut chart) = ChartBuilder::on(area)
        .caption(title, ("sans-serif", 18))
        .margin(8)
        .x_label_area_size(30)
        .y_label_area_size(60)
        .build_cartesian_2d(t0..t1, y0..y1)
    else {
        return;
    };
    let _ = chart.configure_mesh().x_desc("t [s]").y_desc(unit).draw();
    for (i, tr) in traces.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let stride = tr.log.records.len().div_ceil(MAX_POINTS).max(1);
        let points: Vec<(f64, f64)> = tr.log.records.iter().step_by(stride).map(|r| (r.t, (tr.get)(r))).collect();
        let style = color.stroke_width(if tr.dashed { 1 } else { 2 });
        let drawn = if tr.dashed {
            chart.draw_series(DashedLineSeries::new(points, 6, 4, style))
        } else {
            chart.draw_series(LineSeries::new(points, style))
        };
        if let Ok(series) = drawn {
            series
                .label(tr.label.clone())
                .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color.stroke_width(2)));
        }
    }
    let _ = chart
        .configure_series_labels()
        .background_style(WHITE.mix(0.8))
        .border_style(BLACK)
        .position(SeriesLabelPosition::UpperRight)
        .draw();
}

fn render(panels: &[(&str, &str, Vec<Trace>)]) -> String {
    let mut svg = String::new();
    {
        let root = SVGBackend::with_string(&mut svg, (WIDTH, PANEL_HEIGHT * panels.len() as u32)).into_drawing_area();
        let _ = root.fill(&WHITE);
        for (area, (title, unit, traces)) in root.split_evenly((panels.len(), 1)).iter().zip(panels) {
            panel(area, title, unit, traces);
        }
        let _ = root.present();
    }
    svg
}

fn trace<'a>(label: &str, log: &'a SimulationLog, get: Getter, dashed: bool) -> Trace<'a> {
    Trace { label: label.to_string(), log, get, dashed }
}

/// Yaw rate against its references, sideslip true against estimated, and the
/// actuator commands.
pub fn run_plot(log: &SimulationLog) -> String {
    render(&[
        (
            "Yaw rate",
            "rad/s",
            vec![
                trace("r", log, |r| r.r, false),
                trace("r_nom", log, |r| r.r_nom, true),
                trace("r_limited", log, |r| r.r_limited, true),
            ],
        ),
        (
            "Sideslip",
            "rad",
            vec![
                trace("beta", log, |r| r.beta, false),
                trace("beta_hat", log, |r| r.beta_hat, true),
                trace("beta_limited", log, |r| r.beta_limited, true),
            ],
        ),
        (
            "Commands",
            "N·m",
            vec![
                trace("moment", log, |r| r.moment, false),
                trace("brake FL", log, |r| r.brake_torque[0], false),
                trace("brake FR", log, |r| r.brake_torque[1], false),
                trace("brake RL", log, |r| r.brake_torque[2], false),
                trace("brake RR", log, |r| r.brake_torque[3], false),
                trace("motor", log, |r| r.motor_torque, true),
            ],
        ),
        ("Steering", "rad", vec![trace("delta", log, |r| r.delta, false)]),
    ])
}

/// The same panels with two runs overlaid (second run dashed).
pub fn overlay_plot(a_label: &str, a: &SimulationLog, b_label: &str, b: &SimulationLog) -> String {
    let pair = |name: &str, get: Getter| {
        vec![trace(&format!("{name} {a_label}"), a, get, false), trace(&format!("{name} {b_label}"), b, get, true)]
    };
    let mut yaw = pair("r", |r| r.r);
    yaw.push(trace("r_limited", b, |r| r.r_limited, true));
    render(&[
        ("Yaw rate", "rad/s", yaw),
        ("Sideslip", "rad", pair("beta", |r| r.beta)),
        ("Corrective moment", "N·m", pair("moment", |r| r.moment)),
        ("Lateral acceleration", "m/s²", pair("a_y", |r| r.a_y)),
    ])
}
