use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

/// Rows of one output table; each row is a flat JSON object.
#[derive(Debug, Default)]
pub struct Rows {
    pub title: Option<String>,
    rows: Vec<Map<String, Value>>,
}

impl Rows {
    pub fn titled(title: &str) -> Self {
        Rows { title: Some(title.to_string()), rows: Vec::new() }
    }

    pub fn push<T: Serialize>(&mut self, row: &T) -> Result<()> {
        match serde_json::to_value(row)? {
            Value::Object(m) => self.rows.push(m),
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                self.rows.push(m);
            }
        }
        Ok(())
    }

    fn headers(&self) -> Vec<String> {
        self.rows.first().map(|r| r.keys().cloned().collect()).unwrap_or_default()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Writes tables one after another: JSON lines, CSV blocks separated by a
/// blank line, or aligned text with an optional title.
pub fn emit<W: Write>(out: &mut W, tables: &[Rows], format: Format) -> Result<()> {
    for (k, t) in tables.iter().enumerate() {
        match format {
            Format::Json => {
                for r in &t.rows {
                    let mut r = r.clone();
                    if let (Some(title), true) = (&t.title, tables.len() > 1) {
                        r.insert("table".into(), Value::String(title.clone()));
                    }
                    serde_json::to_writer(&mut *out, &r)?;
                    writeln!(out)?;
                }
            }
            Format::Csv => {
                if k > 0 {
                    writeln!(out)?;
                }
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(t.headers())?;
                for r in &t.rows {
                    w.write_record(r.values().map(cell))?;
                }
                w.flush()?;
            }
            Format::Text => {
                if k > 0 {
                    writeln!(out)?;
                }
                if let Some(title) = &t.title {
                    writeln!(out, "{title}")?;
                }
                if t.rows.is_empty() {
                    writeln!(out, "(none)")?;
                    continue;
                }
                let headers = t.headers();
                let body: Vec<Vec<String>> = t.rows.iter().map(|r| r.values().map(cell).collect()).collect();
                let widths: Vec<usize> = (0..headers.len())
                    .map(|i| body.iter().map(|r| r[i].chars().count()).chain([headers[i].len()]).max().unwrap_or(0))
                    .collect();
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .enumerate()
                        .map(|(i, (c, w))| if i + 1 == cells.len() { c.clone() } else { format!("{c:<w$}") })
                        .collect();
                    padded.join("  ")
                };
                writeln!(out, "{}", line(&headers))?;
                for r in &body {
                    writeln!(out, "{}", line(r))?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct R {
        name: &'static str,
        n: usize,
    }

    fn sample() -> Rows {
        let mut t = Rows::titled("demo");
        t.push(&R { name: "a", n: 1 }).unwrap();
        t.push(&R { name: "bbb", n: 22 }).unwrap();
        t
    }

    #[test]
    fn text_is_aligned() {
        let mut out = Vec::new();
        emit(&mut out, &[sample()], Format::Text).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "demo\nname  n\na     1\nbbb   22\n");
    }

    #[test]
    fn csv_and_json() {
        let mut out = Vec::new();
        emit(&mut out, &[sample()], Format::Csv).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "name,n\na,1\nbbb,22\n");
        let mut out = Vec::new();
        emit(&mut out, &[sample()], Format::Json).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "{\"name\":\"a\",\"n\":1}\n{\"name\":\"bbb\",\"n\":22}\n");
    }
}
