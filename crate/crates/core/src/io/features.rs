//! Feature files (`sample_id,f0,f1,...`) and correctness files
//! (`sample_id,prediction_correct`).

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;

use super::numfmt::fmt_shortest;
use super::scores::{csv_reader, csv_writer, parse_bool};
use crate::error::{Error, Result};
use crate::supervisors::FeatureMatrix;

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::read(path, e))
}

pub fn read_feature_csv(path: &Path) -> Result<FeatureMatrix> {
    parse_feature_csv(open(path)?, path)
}

pub fn parse_feature_csv<R: io::Read>(rdr: R, path: &Path) -> Result<FeatureMatrix> {
    let parse_err = |line: u64, message: String| Error::Parse { path: path.to_owned(), line, message };
    let mut rdr = csv_reader(rdr);
    let mut records = rdr.records();

    let header = match records.next() {
        Some(h) => h.map_err(|e| parse_err(1, e.to_string()))?,
        None => return Err(parse_err(1, "empty file; expected header `sample_id,f0,...`".into())),
    };
    let cols = header.len().saturating_sub(1);
    let header_ok =
        cols > 0 && &header[0] == "sample_id" && header.iter().skip(1).enumerate().all(|(i, h)| h == format!("f{i}"));
    if !header_ok {
        return Err(parse_err(
            1,
            format!("expected header `sample_id,f0,f1,...`, found `{}`", header.iter().collect::<Vec<_>>().join(",")),
        ));
    }

    let mut ids = Vec::new();
    let mut values = Vec::new();
    let mut seen = HashSet::new();
    for rec in records {
        let rec = rec.map_err(|e| parse_err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != cols + 1 {
            return Err(parse_err(line, format!("expected {} fields, found {}", cols + 1, rec.len())));
        }
        for (j, field) in rec.iter().skip(1).enumerate() {
            let v: f64 =
                field.trim().parse().map_err(|_| parse_err(line, format!("f{j} value {field:?} is not a number")))?;
            if !v.is_finite() {
                return Err(parse_err(line, format!("f{j} value {field:?} is not finite")));
            }
            values.push(v);
        }
        if !seen.insert(rec[0].to_owned()) {
            return Err(Error::DuplicateId { path: path.to_owned(), line, sample_id: rec[0].to_owned() });
        }
        ids.push(rec[0].to_owned());
    }
    if ids.is_empty() {
        return Err(parse_err(1, "no data rows".into()));
    }
    FeatureMatrix::new(ids, cols, values)
}

pub fn write_feature_csv(path: &Path, m: &FeatureMatrix) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::write(path, e))?;
    let mut out = BufWriter::new(file);
    render_feature_csv(&mut out, m).map_err(|e| Error::write(path, e))?;
    out.flush().map_err(|e| Error::write(path, e))
}

pub fn render_feature_csv<W: io::Write>(w: W, m: &FeatureMatrix) -> io::Result<()> {
    let mut wtr = csv_writer(w);
    let mut header = vec!["sample_id".to_owned()];
    header.extend((0..m.cols()).map(|j| format!("f{j}")));
    wtr.write_record(&header)?;
    for (id, row) in m.row_ids().iter().zip(m.iter_rows()) {
        let mut rec = Vec::with_capacity(m.cols() + 1);
        rec.push(id.clone());
        rec.extend(row.iter().map(|v| fmt_shortest(*v)));
        wtr.write_record(&rec)?;
    }
    wtr.flush()
}

/// Reads `sample_id,prediction_correct` rows.
pub fn read_correctness_csv(path: &Path) -> Result<Vec<(String, bool)>> {
    let parse_err = |line: u64, message: String| Error::Parse { path: path.to_owned(), line, message };
    let mut rdr = csv_reader(open(path)?);
    let mut records = rdr.records();
    match records.next() {
        Some(Ok(h)) if h.iter().eq(["sample_id", "prediction_correct"]) => {}
        Some(Err(e)) => return Err(parse_err(1, e.to_string())),
        _ => return Err(parse_err(1, "expected header `sample_id,prediction_correct`".into())),
    }
    let mut out = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| parse_err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 2 {
            return Err(parse_err(line, format!("expected 2 fields, found {}", rec.len())));
        }
        let flag = parse_bool(rec[1].trim())
            .ok_or_else(|| parse_err(line, format!("prediction_correct must be true or false, found {:?}", &rec[1])))?;
        out.push((rec[0].to_owned(), flag));
    }
    Ok(out)
}

pub fn write_correctness_csv(path: &Path, rows: &[(String, bool)]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::write(path, e))?;
    let mut wtr = csv_writer(BufWriter::new(file));
    let write = |wtr: &mut csv::Writer<_>| -> io::Result<()> {
        wtr.write_record(["sample_id", "prediction_correct"])?;
        for (id, ok) in rows {
            wtr.write_record([id.as_str(), if *ok { "true" } else { "false" }])?;
        }
        wtr.flush()
    };
    write(&mut wtr).map_err(|e| Error::write(path, e))
}
