// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV and JSON writers for sweep results.
//!
//! A CSV file starts with `#` comment lines holding the tool version and the
//! resolved config as one-line JSON, then a header row. Columns are the swept
//! variables, then each observable with an `_F`/`_B` suffix per drive
//! direction, then `kernel_dim`, `residual` and `error` per direction.
//! Failed cells are empty.

use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Value};

use crate::sweep::SweepResult;

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-4, 1e15)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Empty,
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(x) => json!(x.to_string()),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

pub fn columns(result: &SweepResult) -> Vec<String> {
    let cfg = &result.config;
    let ports = cfg.direction.ports();
    let mut cols: Vec<String> = Vec::new();
    for axis in cfg.sweep.iter().chain(cfg.grid.iter()) {
        cols.push(axis.variable.name().to_string());
    }
    for o in &cfg.outputs {
        for p in ports {
            cols.push(format!("{o}_{}", p.tag()));
        }
    }
    for diag in ["kernel_dim", "residual", "error"] {
        for p in ports {
            cols.push(format!("{diag}_{}", p.tag()));
        }
    }
    cols
}

pub fn cells(result: &SweepResult) -> Vec<Vec<Cell>> {
    let n = result.config.outputs.len();
    result
        .rows
        .iter()
        .map(|row| {
            let mut out: Vec<Cell> = row.coords.iter().map(|&(_, v)| Cell::Num(v)).collect();
            for i in 0..n {
                out.extend(row.ports.iter().map(|p| p.values[i].map_or(Cell::Empty, Cell::Num)));
            }
            out.extend(row.ports.iter().map(|p| p.kernel_dim.map_or(Cell::Empty, Cell::Int)));
            out.extend(row.ports.iter().map(|p| p.residual.map_or(Cell::Empty, Cell::Num)));
            out.extend(
                row.ports
                    .iter()
                    .map(|p| p.error.clone().map_or(Cell::Empty, Cell::Text)),
            );
            out
        })
        .collect()
}

pub fn write_csv<W: Write>(mut w: W, result: &SweepResult) -> io::Result<()> {
    writeln!(w, "# wqed {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# config: {}", result.config.to_json())?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(columns(result))?;
    for row in cells(result) {
        csv.write_record(row.iter().map(Cell::to_csv))?;
    }
    csv.flush()
}

pub fn to_json(result: &SweepResult) -> Value {
    let config: Value = serde_json::from_str(&result.config.to_json()).expect("valid json");
    let rows: Vec<Value> = cells(result)
        .iter()
        .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
        .collect();
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "columns": columns(result),
        "rows": rows,
    })
}

pub fn save_csv(path: &Path, result: &SweepResult) -> io::Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(io::BufWriter::new(file), result)
}

pub fn save_json(path: &Path, result: &SweepResult) -> io::Result<()> {
    let text = serde_json::to_string_pretty(&to_json(result))?;
    std::fs::write(path, text + "\n")
}

#[cfg(test)]
mod tests {
    use super::format_float;

    #[test]
    fn float_format() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(0.25), "0.25");
        assert_eq!(format_float(1e-5), "1e-5");
        assert_eq!(format_float(-3.5e-9), "-3.5e-9");
        assert_eq!(format_float(2e15), "2e15");
        assert_eq!(format_float(1e-4), "0.0001");
        for x in [0.1 + 0.2, 1.0 / 3.0, 7.123456789e-12] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }
}
