//! Output records and their CSV / JSON encodings.

use serde::{Deserialize, Serialize};
use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One evaluated quantity. Missing numbers are empty CSV fields or JSON nulls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub target: String,
    /// `key=value` pairs joined by `;`.
    pub inputs: String,
    pub value_re: Option<f64>,
    pub value_im: Option<f64>,
    pub reference_re: Option<f64>,
    pub reference_im: Option<f64>,
    pub method: String,
    pub est_error: Option<f64>,
    pub wall_time_ms: f64,
    pub error: Option<String>,
}

pub const FIELDS: [&str; 11] = [
    "command",
    "target",
    "inputs",
    "value_re",
    "value_im",
    "reference_re",
    "reference_im",
    "method",
    "est_error",
    "wall_time_ms",
    "error",
];

pub fn emit<W: Write>(records: &[OutputRecord], format: Format, out: W) -> io::Result<()> {
    match format {
        Format::Csv => {
            // Written by hand so an empty list still gets its header.
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(FIELDS)?;
            for r in records {
                w.serialize(r)?;
            }
            w.flush()
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out)
        }
    }
}

pub fn parse(text: &str, format: Format) -> Result<Vec<OutputRecord>, String> {
    match format {
        Format::Csv => {
            let mut r = csv::Reader::from_reader(text.as_bytes());
            let header: Vec<String> = r.headers().map_err(|e| e.to_string())?.iter().map(String::from).collect();
            if header != FIELDS {
                return Err(format!("unexpected header {header:?}"));
            }
            r.deserialize().collect::<Result<_, _>>().map_err(|e| e.to_string())
        }
        Format::Json => serde_json::from_str(text).map_err(|e| e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        OutputRecord {
            command: "eval".into(),
            target: "bessel".into(),
            inputs: "order=0.5;z=1+2j".into(),
            value_re: Some(0.1),
            value_im: Some(-3e-17),
            reference_re: None,
            reference_im: None,
            method: "series".into(),
            est_error: Some(1e-16),
            wall_time_ms: 0.0,
            error: None,
        }
    }

    #[test]
    fn empty_outputs() {
        let mut buf = Vec::new();
        emit(&[], Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), FIELDS.join(",") + "\n");
        let mut buf = Vec::new();
        emit(&[], Format::Json, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().trim(), "[]");
    }

    #[test]
    fn one_line_per_record() {
        let mut buf = Vec::new();
        emit(&[sample()], Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(text.lines().nth(1).unwrap(), "eval,bessel,order=0.5;z=1+2j,0.1,-3e-17,,,series,1e-16,0.0,");
        assert_eq!(parse(&text, Format::Csv).unwrap(), vec![sample()]);
    }
}
