//! Tabular report output (CSV and JSON) and the literal parsers used by the CLI.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::bounds::Range;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (csv | json)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_num(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(x) => json!(format_num(*x)),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// 17 significant digits, round-trip safe; non-finite values as `inf`, `-inf`, `nan`.
pub fn format_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width for table {}",
            self.name
        );
        self.rows.push(row);
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), v.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    fn write_csv(&self, out: &mut Vec<u8>) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A primary `rows` table plus optional named side tables and a `meta` object.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub meta: Map<String, Value>,
    pub rows: Table,
    pub extra: Vec<Table>,
}

impl Report {
    pub fn new(command: &str, rows: Table) -> Self {
        let mut meta = Map::new();
        meta.insert("command".into(), json!(command));
        meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        Self {
            meta,
            rows,
            extra: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: Value) -> &mut Self {
        self.meta.insert(key.to_string(), value);
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// The primary table, then each side table after a blank line and a `# name` line.
    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.rows.write_csv(&mut buf)?;
        for t in &self.extra {
            buf.extend_from_slice(format!("\n# {}\n", t.name).as_bytes());
            t.write_csv(&mut buf)?;
        }
        String::from_utf8(buf).map_err(|e| Error::Output(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut top = Map::new();
        top.insert("meta".into(), Value::Object(self.meta.clone()));
        top.insert("rows".into(), self.rows.json_rows());
        for t in &self.extra {
            top.insert(t.name.clone(), t.json_rows());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top))?;
        s.push('\n');
        Ok(s)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_csv() {
            Ok(s) => f.write_str(&s),
            Err(_) => Err(fmt::Error),
        }
    }
}

fn parse_real(s: &str) -> Option<f64> {
    let ok = !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'));
    if !ok {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

/// Parse `a`, `bi`, `a+bi` or `a-bi` with decimal reals.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Literal(format!("{s:?} is not of the form a+bi"));
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(s)
            .map(|re| Complex64::new(re, 0.0))
            .ok_or_else(bad);
    };
    // split at the last sign that is not the leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (parse_real(&body[..i]).ok_or_else(bad)?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).ok_or_else(bad)?,
    };
    Ok(Complex64::new(re, im))
}

/// Parse `start:stop:count` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<Range> {
    let bad = |why: &str| Error::InvalidGrid(format!("range {s:?}: {why}"));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(Range::single(
            parse_real(v).ok_or_else(|| bad("not a number"))?,
        )),
        [a, b, n] => {
            let start = parse_real(a).ok_or_else(|| bad("bad start"))?;
            let stop = parse_real(b).ok_or_else(|| bad("bad stop"))?;
            let count = n.parse::<usize>().map_err(|_| bad("bad count"))?;
            Range::new(start, stop, count)
        }
        _ => Err(bad("expected start:stop:count")),
    }
}

/// Integer grid: a `start:stop:count` range whose values are all non-negative integers,
/// or a comma-separated list.
pub fn parse_int_list(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::InvalidGrid(format!("integer list {s:?} is malformed"));
    if s.contains(':') {
        return parse_range(s)?
            .values()
            .into_iter()
            .map(|v| {
                let r = v.round();
                if (v - r).abs() < 1e-9 && r >= 0.0 && r <= u32::MAX as f64 {
                    Ok(r as u32)
                } else {
                    Err(bad())
                }
            })
            .collect();
    }
    let out = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

/// Comma-separated reals.
pub fn parse_real_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            parse_real(t.trim())
                .ok_or_else(|| Error::InvalidGrid(format!("bad number {t:?} in {s:?}")))
        })
        .collect()
}

pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", format_num(z.re), sign, format_num(z.im.abs()))
}
