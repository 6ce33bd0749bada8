//! Score files: `sample_id,anomaly_score[,prediction_correct]`, UTF-8, LF.

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::io::numfmt::fmt_shortest;
use crate::sample::ScoredSample;

const ID: &str = "sample_id";
const SCORE: &str = "anomaly_score";
const CORRECT: &str = "prediction_correct";

pub(crate) fn csv_reader<R: io::Read>(rdr: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(rdr)
}

pub(crate) fn csv_writer<W: io::Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

pub(crate) fn parse_bool(field: &str) -> Option<bool> {
    if field.eq_ignore_ascii_case("true") {
        Some(true)
    } else if field.eq_ignore_ascii_case("false") {
        Some(false)
    } else {
        None
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::read(path, e))
}

/// Reads one class's score file. Every row becomes an inlier or, with
/// `is_outlier`, an outlier.
pub fn read_score_csv(path: &Path, is_outlier: bool) -> Result<Vec<ScoredSample>> {
    parse_score_csv(open(path)?, path, is_outlier)
}

/// [`read_score_csv`] over any reader; `path` only labels diagnostics.
pub fn parse_score_csv<R: io::Read>(rdr: R, path: &Path, is_outlier: bool) -> Result<Vec<ScoredSample>> {
    let parse_err = |line: u64, message: String| Error::Parse { path: path.to_owned(), line, message };
    let mut rdr = csv_reader(rdr);
    let mut record = csv::StringRecord::new();

    let read = |rdr: &mut csv::Reader<R>, record: &mut csv::StringRecord| {
        rdr.read_record(record).map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })
    };

    if !read(&mut rdr, &mut record)? {
        return Err(parse_err(1, format!("empty file; expected header `{ID},{SCORE}[,{CORRECT}]`")));
    }
    let header: Vec<&str> = record.iter().collect();
    let with_flags = match header.as_slice() {
        [ID, SCORE] => false,
        [ID, SCORE, CORRECT] => true,
        _ => {
            return Err(parse_err(
                1,
                format!("expected header `{ID},{SCORE}[,{CORRECT}]`, found `{}`", header.join(",")),
            ))
        }
    };
    let width = header.len();

    let mut samples = Vec::new();
    let mut seen = HashSet::new();
    while read(&mut rdr, &mut record)? {
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != width {
            return Err(parse_err(line, format!("expected {width} fields, found {}", record.len())));
        }
        let id = &record[0];
        if id.is_empty() {
            return Err(parse_err(line, "empty sample_id".into()));
        }
        let raw = record[1].trim();
        let score: f64 = raw.parse().map_err(|_| parse_err(line, format!("anomaly_score {raw:?} is not a number")))?;
        if !score.is_finite() {
            return Err(Error::NonFiniteScore { path: path.to_owned(), line, sample_id: id.to_owned() });
        }
        let prediction_correct = if with_flags {
            let raw = record[2].trim();
            if raw.is_empty() {
                None
            } else {
                Some(parse_bool(raw).ok_or_else(|| {
                    parse_err(line, format!("prediction_correct must be true or false, found {raw:?}"))
                })?)
            }
        } else {
            None
        };
        if !seen.insert(id.to_owned()) {
            return Err(Error::DuplicateId { path: path.to_owned(), line, sample_id: id.to_owned() });
        }
        samples.push(ScoredSample { sample_id: id.to_owned(), anomaly_score: score, is_outlier, prediction_correct });
    }
    Ok(samples)
}

/// Writes samples in score-file format. The correctness column appears when
/// any sample carries a flag; missing flags are left empty.
pub fn write_score_csv(path: &Path, samples: &[ScoredSample]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::write(path, e))?;
    let mut out = BufWriter::new(file);
    render_score_csv(&mut out, samples).map_err(|e| Error::write(path, e))?;
    out.flush().map_err(|e| Error::write(path, e))
}

pub fn render_score_csv<W: io::Write>(w: W, samples: &[ScoredSample]) -> io::Result<()> {
    let with_flags = samples.iter().any(|s| s.prediction_correct.is_some());
    let mut wtr = csv_writer(w);
    if with_flags {
        wtr.write_record([ID, SCORE, CORRECT])?;
    } else {
        wtr.write_record([ID, SCORE])?;
    }
    for s in samples {
        let score = fmt_shortest(s.anomaly_score);
        if with_flags {
            let flag = s.prediction_correct.map_or("", |c| if c { "true" } else { "false" });
            wtr.write_record([s.sample_id.as_str(), &score, flag])?;
        } else {
            wtr.write_record([s.sample_id.as_str(), &score])?;
        }
    }
    wtr.flush()
}
