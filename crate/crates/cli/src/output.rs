//! CSV tables with a fixed header and 17-significant-digit numbers.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

/// Scientific notation with 16 digits after the point, which round-trips
/// every finite `f64`. Negative zero prints as zero.
pub fn sci(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

/// Send `bytes` to `path`, or to stdout when no path is given.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, bytes),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}
