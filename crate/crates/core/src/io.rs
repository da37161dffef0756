//! Headerless CSV for points (one row per point) and labels (one integer
//! per row).

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

fn csv_error(e: csv::Error) -> Error {
    let row = e.position().map(|p| p.record() as usize + 1).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        kind => Error::Parse {
            row,
            col: 0,
            msg: format!("{kind:?}"),
        },
    }
}

fn records<R: Read>(reader: R) -> impl Iterator<Item = (usize, Result<StringRecord>)> {
    ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(reader)
        .into_records()
        .enumerate()
        .map(|(i, r)| (i + 1, r.map_err(csv_error)))
}

/// Parses points; rows and columns in errors are 1-based.
pub fn parse_points<R: Read>(reader: R) -> Result<Dataset> {
    let mut data = Vec::new();
    let mut d = 0;
    let mut n = 0;
    for (row, rec) in records(reader) {
        let rec = rec?;
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if n == 0 {
            d = rec.len();
        } else if rec.len() != d {
            return Err(Error::Parse {
                row,
                col: rec.len().min(d) + 1,
                msg: format!("expected {d} columns, found {}", rec.len()),
            });
        }
        for (j, cell) in rec.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| Error::Parse {
                row,
                col: j + 1,
                msg: format!("not a number: {cell:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    col: j + 1,
                    msg: format!("non-finite value {cell:?}"),
                });
            }
            data.push(v);
        }
        n += 1;
    }
    if n == 0 {
        return Err(Error::InvalidDataset("no points in input".into()));
    }
    Dataset::new(data, n, d)
}

pub fn read_points(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    parse_points(File::open(path).map_err(Error::file(path))?)
}

pub fn parse_labels<R: Read>(reader: R) -> Result<Vec<u32>> {
    let mut labels = Vec::new();
    for (row, rec) in records(reader) {
        let rec = rec?;
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 1 {
            return Err(Error::Parse {
                row,
                col: 2,
                msg: format!("expected one label, found {} columns", rec.len()),
            });
        }
        labels.push(rec[0].parse().map_err(|_| Error::Parse {
            row,
            col: 1,
            msg: format!("not a label: {:?}", &rec[0]),
        })?);
    }
    Ok(labels)
}

pub fn read_labels(path: impl AsRef<Path>) -> Result<Vec<u32>> {
    let path = path.as_ref();
    parse_labels(File::open(path).map_err(Error::file(path))?)
}

pub fn write_points_to<W: Write>(w: W, ds: &Dataset) -> Result<()> {
    let mut wtr = WriterBuilder::new().has_headers(false).from_writer(w);
    for row in ds.rows() {
        wtr.write_record(row.iter().map(|v| v.to_string()))
            .map_err(csv_error)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_points(path: impl AsRef<Path>, ds: &Dataset) -> Result<()> {
    let path = path.as_ref();
    write_points_to(BufWriter::new(File::create(path).map_err(Error::file(path))?), ds)
}

pub fn write_labels_to<W: Write>(mut w: W, labels: &[u32]) -> Result<()> {
    for l in labels {
        writeln!(w, "{l}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_labels(path: impl AsRef<Path>, labels: &[u32]) -> Result<()> {
    let path = path.as_ref();
    write_labels_to(BufWriter::new(File::create(path).map_err(Error::file(path))?), labels)
}
