//! CSV persistence for record sets.
//!
//! Format: UTF-8, `.` decimal point, LF line endings, header exactly
//! `x_coord,y_coord,...,los`. Floats are written with 17 significant
//! digits so a save/load round trip is value-identical.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::DataError;
use crate::record::{Provenance, Record, RecordSet, COLUMNS};

fn io_err(path: &Path, source: std::io::Error) -> DataError {
    DataError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// 17-significant-digit decimal text; round-trips any finite f64 exactly.
pub fn format_value(v: f64) -> String {
    format!("{:.16e}", v)
}

pub fn save_csv(set: &RecordSet, path: &Path) -> Result<(), DataError> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    write_records(&mut w, set.records(), &[]).map_err(|e| io_err(path, e))
}

/// Writes records with optional extra label columns (used by poisoned-set
/// sidecar output). `extra` pairs a column name with one value per record.
pub fn write_records<W: Write>(
    w: &mut W,
    records: &[Record],
    extra: &[(&str, &[u8])],
) -> Result<(), std::io::Error> {
    let mut header = COLUMNS.join(",");
    for (name, vals) in extra {
        assert_eq!(vals.len(), records.len(), "extra column length mismatch");
        header.push(',');
        header.push_str(name);
    }
    writeln!(w, "{header}")?;
    for (i, r) in records.iter().enumerate() {
        let v = r.values();
        let mut line = String::with_capacity(12 * 26);
        for (col, x) in v.iter().enumerate() {
            if col > 0 {
                line.push(',');
            }
            if col == 11 {
                line.push_str(&format!("{}", r.los));
            } else {
                line.push_str(&format_value(*x));
            }
        }
        for (_, vals) in extra {
            line.push(',');
            line.push_str(&format!("{}", vals[i]));
        }
        writeln!(w, "{line}")?;
    }
    w.flush()
}

pub fn load_csv(path: &Path) -> Result<RecordSet, DataError> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines();
    let header = match lines.next() {
        Some(line) => line.map_err(|e| io_err(path, e))?,
        None => return Err(DataError::Empty),
    };
    check_header(&header, &[])?;

    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line.map_err(|e| io_err(path, e))?;
        if line.is_empty() {
            continue;
        }
        let row = idx + 1; // data rows are 1-based; header excluded
        records.push(parse_row(&line, row, 0)?.0);
    }
    RecordSet::new(records, Provenance::Ingested)
}

/// Verifies the header carries exactly the documented columns (plus the
/// given extras, in order). Reports the first missing / unexpected /
/// out-of-order name.
pub fn check_header(header: &str, extra: &[&str]) -> Result<(), DataError> {
    let found: Vec<&str> = header.trim_end_matches('\r').split(',').collect();
    let expected: Vec<&str> = COLUMNS.iter().copied().chain(extra.iter().copied()).collect();
    for (pos, want) in expected.iter().enumerate() {
        match found.get(pos) {
            None => return Err(DataError::MissingColumn((*want).to_string())),
            Some(got) if got == want => {}
            Some(got) => {
                if !found.contains(want) {
                    return Err(DataError::MissingColumn((*want).to_string()));
                }
                return Err(DataError::ColumnOrder {
                    position: pos,
                    found: (*got).to_string(),
                    expected: (*want).to_string(),
                });
            }
        }
    }
    if found.len() > expected.len() {
        return Err(DataError::UnexpectedColumn(found[expected.len()].to_string()));
    }
    Ok(())
}

/// Parses one data row; returns the record plus any trailing extra cells.
pub fn parse_row(line: &str, row: usize, n_extra: usize) -> Result<(Record, Vec<String>), DataError> {
    let cells: Vec<&str> = line.trim_end_matches('\r').split(',').collect();
    let want = COLUMNS.len() + n_extra;
    if cells.len() != want {
        return Err(DataError::Cell {
            row,
            column: "<row>".into(),
            reason: format!("expected {want} cells, found {}", cells.len()),
        });
    }
    let mut vals = [0.0f64; 12];
    for (col, cell) in cells.iter().take(12).enumerate() {
        let v: f64 = cell.parse().map_err(|_| DataError::Cell {
            row,
            column: COLUMNS[col].to_string(),
            reason: format!("non-numeric cell `{cell}`"),
        })?;
        if !v.is_finite() {
            return Err(DataError::Cell {
                row,
                column: COLUMNS[col].to_string(),
                reason: format!("non-finite cell `{cell}`"),
            });
        }
        vals[col] = v;
    }
    let los = if vals[11] == 0.0 {
        0u8
    } else if vals[11] == 1.0 {
        1u8
    } else {
        return Err(DataError::Cell {
            row,
            column: "los".into(),
            reason: format!("los must be 0 or 1, got {}", cells[11]),
        });
    };
    let record = Record {
        x_coord: vals[0],
        y_coord: vals[1],
        distance: vals[2],
        pathloss: vals[3],
        doa_phi: vals[4],
        doa_theta: vals[5],
        dod_phi: vals[6],
        dod_theta: vals[7],
        phase: vals[8],
        power: vals[9],
        time_of_arrival: vals[10],
        los,
    };
    let extras = cells[12..].iter().map(|s| s.to_string()).collect();
    Ok((record, extras))
}
