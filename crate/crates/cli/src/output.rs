use std::io::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputKind {
    Text,
    Json,
    Csv,
}

/// A report in all three renderings. `rows` names the array field that
/// becomes the CSV body; without it the whole report is one CSV row.
pub struct Report {
    pub value: Value,
    pub text: String,
    pub rows: Option<&'static str>,
}

impl Report {
    pub fn new<T: Serialize>(data: &T, text: String, rows: Option<&'static str>) -> Result<Self, String> {
        let value = serde_json::to_value(data).map_err(|e| format!("could not serialize report: {e}"))?;
        Ok(Report { value, text, rows })
    }

    pub fn write(&self, kind: OutputKind, out: &mut impl Write) -> std::io::Result<()> {
        match kind {
            OutputKind::Text => {
                out.write_all(self.text.as_bytes())?;
                if !self.text.ends_with('\n') {
                    out.write_all(b"\n")?;
                }
                Ok(())
            }
            OutputKind::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.value)?;
                out.write_all(b"\n")
            }
            OutputKind::Csv => write_csv(&self.value, self.rows, out),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Columns are the JSON field names in declaration order.
fn write_csv(value: &Value, rows: Option<&str>, out: &mut impl Write) -> std::io::Result<()> {
    let records: Vec<&Value> = match rows.and_then(|k| value.get(k)) {
        Some(Value::Array(items)) => items.iter().collect(),
        _ => vec![value],
    };
    let mut header: Vec<String> = Vec::new();
    for r in &records {
        if let Value::Object(map) = r {
            for k in map.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    if header.is_empty() {
        w.write_record(["value"])?;
        for r in &records {
            w.write_record([cell(r)])?;
        }
    } else {
        w.write_record(&header)?;
        for r in &records {
            let row: Vec<String> = header.iter().map(|k| r.get(k).map(cell).unwrap_or_default()).collect();
            w.write_record(&row)?;
        }
    }
    w.flush()
}
