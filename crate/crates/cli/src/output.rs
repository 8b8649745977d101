//! Flat result records and their CSV / JSON encodings.

use std::io::Write;

use serde_json::{Map, Number, Value};

/// One cell of a record.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i64),
    Uint(u64),
    Float(f64),
    Text(String),
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Uint(v)
    }
}

impl From<i64> for Field {
    fn from(v: i64) -> Self {
        Field::Int(v)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_owned())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Int(v) => Value::from(*v),
            Field::Uint(v) => Value::from(*v),
            Field::Float(v) => {
                Number::from_f64(*v).map_or_else(|| Value::String(non_finite(*v)), Value::Number)
            }
            Field::Text(s) => Value::String(s.clone()),
        }
    }

    /// The same digits JSON would carry; shortest round-trip form for floats.
    fn to_csv(&self) -> String {
        match self {
            Field::Text(s) => s.clone(),
            other => match other.to_json() {
                Value::String(s) => s,
                v => v.to_string(),
            },
        }
    }
}

fn non_finite(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Ordered key/value row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(&'static str, Field)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Field>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &'static str, value: impl Into<Field>) {
        self.fields.push((key, value.into()));
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.fields.iter().map(|(k, _)| *k)
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Writes records with a header taken from the first one. Every record must
/// carry the same keys in the same order.
pub fn emit<W: Write>(records: &[Record], format: Format, out: W) -> std::io::Result<()> {
    let header: Vec<&str> = records
        .first()
        .map(|r| r.keys().collect())
        .unwrap_or_default();
    if let Some(r) = records
        .iter()
        .find(|r| !r.keys().eq(header.iter().copied()))
    {
        return Err(std::io::Error::other(format!(
            "record columns differ: {:?}",
            r.keys().collect::<Vec<_>>()
        )));
    }
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            w.write_record(&header).map_err(csv_io)?;
            for r in records {
                w.write_record(r.fields.iter().map(|(_, v)| v.to_csv()))
                    .map_err(csv_io)?;
            }
            w.flush()
        }
        Format::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    Value::Object(
                        r.fields
                            .iter()
                            .map(|(k, v)| (k.to_string(), v.to_json()))
                            .collect::<Map<_, _>>(),
                    )
                })
                .collect();
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &rows)?;
            out.write_all(b"\n")
        }
    }
}

// keep the io kind so callers can tell a closed pipe apart
fn csv_io(e: csv::Error) -> std::io::Error {
    if e.is_io_error() {
        if let csv::ErrorKind::Io(io) = e.into_kind() {
            return io;
        }
        unreachable!()
    }
    std::io::Error::other(e)
}
