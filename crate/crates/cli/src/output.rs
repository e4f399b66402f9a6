//! Output formats and streaming writers.

use std::io::{self, Write};

use clap::ValueEnum;
use gt_core::SqrtRational;
use serde::Serialize;

/// Significant digits of the decimal column.
pub const DIGITS: u32 = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Exact value with its decimal evaluation.
#[derive(Serialize)]
pub struct Value<'a> {
    pub exact: String,
    #[serde(flatten)]
    pub fields: &'a SqrtRational,
    pub decimal: String,
}

impl<'a> Value<'a> {
    pub fn new(v: &'a SqrtRational) -> Self {
        Value {
            exact: v.to_compact_string(),
            fields: v,
            decimal: v.to_decimal(DIGITS),
        }
    }
}

/// A query echo paired with its value.
#[derive(Serialize)]
pub struct Record<'a, Q: Serialize> {
    pub query: Q,
    pub value: Value<'a>,
}

/// Streams rows as a table, CSV, or one JSON array without buffering the whole set.
pub struct RowWriter<W: Write> {
    sink: Sink<W>,
    rows: usize,
}

enum Sink<W: Write> {
    Table(W),
    Json(W),
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> RowWriter<W> {
    /// An empty header suppresses the header line.
    pub fn new(mut out: W, format: Format, header: Vec<&'static str>) -> io::Result<Self> {
        let sink = match format {
            Format::Json => {
                write!(out, "[")?;
                Sink::Json(out)
            }
            Format::Table => {
                if !header.is_empty() {
                    writeln!(out, "{}", header.join("\t"))?;
                }
                Sink::Table(out)
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
                if !header.is_empty() {
                    w.write_record(&header)?;
                }
                Sink::Csv(Box::new(w))
            }
        };
        Ok(RowWriter { sink, rows: 0 })
    }

    /// Writes one row; `json` is its JSON form.
    pub fn row<T: Serialize>(&mut self, cells: &[String], json: &T) -> io::Result<()> {
        match &mut self.sink {
            Sink::Json(out) => {
                let sep = if self.rows == 0 { "\n" } else { ",\n" };
                write!(out, "{sep}{}", serde_json::to_string(json).map_err(io::Error::other)?)?;
            }
            Sink::Csv(w) => w.write_record(cells)?,
            Sink::Table(out) => writeln!(out, "{}", cells.join("\t"))?,
        }
        self.rows += 1;
        Ok(())
    }

    pub fn finish(self) -> io::Result<()> {
        match self.sink {
            Sink::Json(mut out) => {
                writeln!(out, "{}]", if self.rows == 0 { "" } else { "\n" })?;
                out.flush()
            }
            Sink::Table(mut out) => out.flush(),
            Sink::Csv(mut w) => w.flush(),
        }
    }
}
