use std::fmt;

use clap::ValueEnum;
use serde::Serialize;
use tybraid_core::json::ScalarJson;
use tybraid_core::CycScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// Invalid input or an internal error: exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub id: String,
    pub message: String,
}

impl Failure {
    pub fn new(id: impl Into<String>, message: impl fmt::Display) -> Self {
        Failure {
            id: id.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.id, self.message)
    }
}

/// A failed verification: exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Problem {
    pub id: String,
    pub detail: String,
}

#[derive(Debug, Default)]
pub struct Report {
    pub text: String,
    pub problems: Vec<Problem>,
}

impl Report {
    pub fn ok(text: String) -> Self {
        Report {
            text,
            problems: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    pub fn markdown(&self) -> String {
        let line = |cells: &[String]| {
            let escaped: Vec<String> = cells.iter().map(|c| c.replace('|', "\\|")).collect();
            format!("| {} |\n", escaped.join(" | "))
        };
        let mut out = line(&self.header);
        out.push_str(&format!("|{}\n", "---|".repeat(self.header.len())));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }

    pub fn csv(&self) -> Result<String, Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Failure::new("output", e);
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::new("output", e))?;
        String::from_utf8(bytes).map_err(|e| Failure::new("output", e))
    }

    pub fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Markdown => Ok(self.markdown()),
            Format::Csv => self.csv(),
            Format::Json => {
                let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|r| {
                        self.header
                            .iter()
                            .cloned()
                            .zip(r.iter().map(|c| c.clone().into()))
                            .collect()
                    })
                    .collect();
                to_json(&rows)
            }
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::new("output", e))
}

/// `±2^k`, `±2^k i` and units written plainly; anything else in root-of-unity form.
pub fn pretty(x: &CycScalar) -> String {
    let n = x.modulus();
    if let Some((j, k)) = x.as_unit_times_sqrt2_power() {
        if k % 2 == 0 && k >= 0 && (4 * j) % n == 0 {
            let mag = 1u64 << (k / 2);
            let quarter = 4 * j / n;
            let sign = if quarter >= 2 { "-" } else { "" };
            return match (quarter % 2, mag) {
                (0, m) => format!("{sign}{m}"),
                (_, 1) => format!("{sign}i"),
                (_, m) => format!("{sign}{m}i"),
            };
        }
    }
    x.to_string()
}

pub fn pretty_json(x: &ScalarJson) -> String {
    CycScalar::try_from(x)
        .map(|s| pretty(&s))
        .unwrap_or_else(|e| format!("<{e}>"))
}

pub fn sign(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

pub fn opt_sign(s: Option<i8>) -> &'static str {
    s.map(sign).unwrap_or("")
}
