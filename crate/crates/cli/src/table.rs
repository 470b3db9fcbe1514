//! CSV output: header row, comma separated, LF line endings, floats with
//! 17 significant digits.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

/// Formats a float with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Serialises `rows` under `header` into an in-memory buffer.
pub fn to_bytes(header: &[&str], rows: &[Vec<String>]) -> io::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

pub fn write(path: &Path, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let bytes = to_bytes(header, rows)?;
    File::create(path)?.write_all(&bytes)
}

/// A CSV file read back as a header and string cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn read(path: &Path) -> Result<Self, csv::Error> {
        let mut r = csv::Reader::from_path(path)?;
        let header = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|r| r.iter().map(str::to_string).collect()))
            .collect::<Result<_, _>>()?;
        Ok(Self { header, rows })
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Numeric view of a column. Booleans read as 0/1; empty or
    /// unparsable cells become `None`.
    pub fn column(&self, index: usize) -> Vec<Option<f64>> {
        self.rows
            .iter()
            .map(|row| {
                let cell = row.get(index)?.trim();
                match cell {
                    "true" => Some(1.0),
                    "false" => Some(0.0),
                    _ => cell.parse::<f64>().ok().filter(|x| x.is_finite()),
                }
            })
            .collect()
    }
}
