//! `log.csv`: one row per integrator step.
//!
//! The first line is `# ysc-log v1`, then a header naming every column. Reals
//! are written with 9 significant digits in exponent form; flags are `0`/`1`;
//! the brake wheel is `FL`, `FR`, `RL`, `RR` or empty.

use std::io::{Read, Write};

use thiserror::Error;
use ysc_core::plant::Wheel;
use ysc_core::sim::{LogRecord, SimulationLog};

pub const SCHEMA_LINE: &str = "# ysc-log v1";

pub const COLUMNS: [&str; 33] = [
    "t",
    "delta",
    "vx",
    "vy",
    "beta",
    "beta_hat",
    "r",
    "r_meas",
    "r_nom",
    "r_limited",
    "beta_nom",
    "beta_limited",
    "a_y",
    "ysc_active",
    "moment",
    "brake_wheel",
    "brake_cmd",
    "brake_fl",
    "brake_fr",
    "brake_rl",
    "brake_rr",
    "omega_fl",
    "omega_fr",
    "omega_rl",
    "omega_rr",
    "driver_request",
    "motor_request",
    "motor_torque",
    "asr_active",
    "asr_level_pct",
    "x",
    "y",
    "psi",
];

#[derive(Debug, Error)]
pub enum LogError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unsupported log schema {0:?}")]
    Schema(String),
    #[error("row {row}, column {column}: cannot parse {value:?}")]
    Value { row: usize, column: &'static str, value: String },
}

/// Real number with 9 significant digits.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.8e}")
    }
}

fn flag(b: bool) -> String {
    (if b { "1" } else { "0" }).to_string()
}

fn fields(r: &LogRecord) -> Vec<String> {
    let mut v: Vec<String> = [r.t, r.delta, r.vx, r.vy, r.beta, r.beta_hat, r.r, r.r_meas, r.r_nom, r.r_limited, r.beta_nom, r.beta_limited, r.a_y]
        .iter()
        .map(|&x| real(x))
        .collect();
    v.push(flag(r.ysc_active));
    v.push(real(r.moment));
    v.push(r.brake_wheel.map(|w| w.name().to_string()).unwrap_or_default());
    v.push(real(r.brake_cmd));
    v.extend(r.brake_torque.iter().chain(&r.omega).map(|&x| real(x)));
    v.extend([r.driver_request, r.motor_request, r.motor_torque].iter().map(|&x| real(x)));
    v.push(flag(r.asr_active));
    v.extend([r.asr_level_pct, r.x, r.y, r.psi].iter().map(|&x| real(x)));
    v
}

pub fn write_log<W: Write>(mut w: W, log: &SimulationLog) -> Result<(), LogError> {
    writeln!(w, "{SCHEMA_LINE}")?;
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(COLUMNS)?;
    for r in &log.records {
        wtr.write_record(fields(r))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn log_to_string(log: &SimulationLog) -> String {
    let mut buf = Vec::new();
    write_log(&mut buf, log).expect("writing to memory");
    String::from_utf8(buf).expect("log is ASCII")
}

/// Reads a log written by [`write_log`].
pub fn read_log<R: Read>(mut r: R) -> Result<Vec<LogRecord>, LogError> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let (first, rest) = text.split_once('\n').unwrap_or((&text, ""));
    if first.trim_end() != SCHEMA_LINE {
        return Err(LogError::Schema(first.to_string()));
    }
    let mut rdr = csv::Reader::from_reader(rest.as_bytes());
    let header = rdr.headers()?.clone();
    if header.iter().ne(COLUMNS.iter().copied()) {
        return Err(LogError::Schema(header.iter().collect::<Vec<_>>().join(",")));
    }
    let mut out = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let get = |i: usize| -> Result<f64, LogError> {
            let s = &rec[i];
            s.parse().map_err(|_| LogError::Value { row, column: COLUMNS[i], value: s.to_string() })
        };
        let flag = |i: usize| -> Result<bool, LogError> {
            match &rec[i] {
                "0" => Ok(false),
                "1" => Ok(true),
                s => Err(LogError::Value { row, column: COLUMNS[i], value: s.to_string() }),
            }
        };
        let wheel = match &rec[15] {
            "" => None,
            s => Some(
                Wheel::ALL
                    .into_iter()
                    .find(|w| w.name() == s)
                    .ok_or_else(|| LogError::Value { row, column: COLUMNS[15], value: s.to_string() })?,
            ),
        };
        out.push(LogRecord {
            t: get(0)?,
            delta: get(1)?,
            vx: get(2)?,
            vy: get(3)?,
            beta: get(4)?,
            beta_hat: get(5)?,
            r: get(6)?,
            r_meas: get(7)?,
            r_nom: get(8)?,
            r_limited: get(9)?,
            beta_nom: get(10)?,
            beta_limited: get(11)?,
            a_y: get(12)?,
            ysc_active: flag(13)?,
            moment: get(14)?,
            brake_wheel: wheel,
            brake_cmd: get(16)?,
            brake_torque: [get(17)?, get(18)?, get(19)?, get(20)?],
            omega: [get(21)?, get(22)?, get(23)?, get(24)?],
            driver_request: get(25)?,
            motor_request: get(26)?,
            motor_torque: get(27)?,
            asr_active: flag(28)?,
            asr_level_pct: get(29)?,
            x: get(30)?,
            y: get(31)?,
            psi: get(32)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(real(0.0), "0");
        assert_eq!(real(1.0), "1.00000000e0");
        assert_eq!(real(-22.2222222222), "-2.22222222e1");
        assert_eq!(real(1.23456789012e-5), "1.23456789e-5");
    }
}
