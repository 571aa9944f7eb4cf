//! CSV serialization of curves and transition tables.
//!
//! Layout: `# `-prefixed header lines, a header row starting with `T`, then
//! one row per temperature with every number written as `{:.16e}` so a read
//! recovers the exact `f64`. Predicted peaks occupy three trailing columns
//! (`marker_group`, `marker_energy`, `marker_t`), filled in the first rows and
//! empty below.

use std::io::{BufRead, Write};

use thermo_core::TransitionTable;

use crate::error::{CliError, Result};
use crate::run::{Column, Marker, QfiCurve};

const MARKER_COLUMNS: [&str; 3] = ["marker_group", "marker_energy", "marker_t"];

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_err(e: impl std::fmt::Display) -> CliError {
    CliError::Csv(e.to_string())
}

fn write_comments<W: Write>(out: &mut W, lines: &[String]) -> Result<()> {
    for line in lines {
        for part in line.lines() {
            writeln!(out, "# {part}").map_err(csv_err)?;
        }
    }
    Ok(())
}

pub fn write_curve<W: Write>(curve: &QfiCurve, mut out: W) -> Result<()> {
    let n = curve.temperatures.len();
    if curve.columns.iter().any(|c| c.values.len() != n) {
        return Err(CliError::Csv("column length differs from the temperature grid".into()));
    }
    if curve.markers.len() > n {
        return Err(CliError::Config(format!(
            "{} peak markers do not fit on a {n}-point grid",
            curve.markers.len()
        )));
    }
    write_comments(&mut out, &curve.metadata)?;
    let with_markers = !curve.markers.is_empty();
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["T".to_string()];
    header.extend(curve.columns.iter().map(|c| c.name.clone()));
    if with_markers {
        header.extend(MARKER_COLUMNS.iter().map(|s| s.to_string()));
    }
    w.write_record(&header).map_err(csv_err)?;
    for (i, &t) in curve.temperatures.iter().enumerate() {
        let mut record = vec![num(t)];
        record.extend(curve.columns.iter().map(|c| num(c.values[i])));
        if with_markers {
            match curve.markers.get(i) {
                Some(m) => record.extend([m.group.clone(), num(m.energy), num(m.temperature)]),
                None => record.extend([String::new(), String::new(), String::new()]),
            }
        }
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)?;
    Ok(())
}

fn split_comments<R: BufRead>(input: R) -> Result<(Vec<String>, String)> {
    let mut comments = Vec::new();
    let mut body = String::new();
    for line in input.lines() {
        let line = line.map_err(csv_err)?;
        match line.strip_prefix('#') {
            Some(rest) => comments.push(rest.strip_prefix(' ').unwrap_or(rest).to_string()),
            None => {
                body.push_str(&line);
                body.push('\n');
            }
        }
    }
    Ok((comments, body))
}

fn parse(field: &str) -> Result<f64> {
    field.trim().parse().map_err(|_| CliError::Csv(format!("not a number: `{field}`")))
}

pub fn read_curve<R: BufRead>(input: R) -> Result<QfiCurve> {
    let (metadata, body) = split_comments(input)?;
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header: Vec<String> = r.headers().map_err(csv_err)?.iter().map(String::from).collect();
    if header.first().map(String::as_str) != Some("T") {
        return Err(CliError::Csv("first column must be `T`".into()));
    }
    let with_markers = header.len() >= 4 && header[header.len() - 3..] == MARKER_COLUMNS;
    let n_values = header.len() - 1 - if with_markers { 3 } else { 0 };
    let mut curve = QfiCurve {
        metadata,
        columns: header[1..=n_values]
            .iter()
            .map(|name| Column { name: name.clone(), values: Vec::new() })
            .collect(),
        ..QfiCurve::default()
    };
    for record in r.records() {
        let record = record.map_err(csv_err)?;
        curve.temperatures.push(parse(&record[0])?);
        for (k, col) in curve.columns.iter_mut().enumerate() {
            col.values.push(parse(&record[k + 1])?);
        }
        if with_markers && !record[n_values + 2].is_empty() {
            curve.markers.push(Marker {
                group: record[n_values + 1].to_string(),
                energy: parse(&record[n_values + 2])?,
                temperature: parse(&record[n_values + 3])?,
            });
        }
    }
    Ok(curve)
}

pub fn write_transitions<W: Write>(table: &TransitionTable, metadata: &[String], mut out: W) -> Result<()> {
    write_comments(&mut out, metadata)?;
    let mut w = csv::Writer::from_writer(out);
    let branches = table.energies.first().map_or(0, Vec::len);
    let mut header = vec![table.parameter.to_string()];
    header.extend((1..=branches).map(|l| format!("E{l}")));
    w.write_record(&header).map_err(csv_err)?;
    for (v, row) in table.values.iter().zip(&table.energies) {
        let mut record = vec![num(*v)];
        record.extend(row.iter().map(|&e| num(e)));
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)?;
    Ok(())
}
