//! Invariant tables in CSV form: `knot,invariant,lo,hi[,source]`.
//!
//! An empty `lo` or `hi` is unbounded. The header row is optional and lines
//! starting with `#` are comments.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::ineq::{check_soundness, BoundState, InvariantId, Interval, RelationGraph};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dataset {
    pub bounds: BoundState,
    /// Provenance tag per `(knot, invariant)`, when the row carries one.
    pub sources: BTreeMap<(String, InvariantId), String>,
}

pub fn read_invariant_csv<R: Read>(reader: R) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut data = Dataset::default();
    for (n, rec) in rdr.records().enumerate() {
        let record = n + 1;
        let err = |msg: String| Error::Bounds { record, msg };
        let rec = rec.map_err(|e| err(e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if n == 0 && rec.get(0) == Some("knot") && rec.get(1) == Some("invariant") {
            continue;
        }
        if rec.len() != 4 && rec.len() != 5 {
            return Err(err(format!("expected 4 or 5 fields, found {}", rec.len())));
        }
        let knot = &rec[0];
        if knot.is_empty() {
            return Err(err("empty knot name".into()));
        }
        let inv: InvariantId = rec[1].parse().map_err(err)?;
        let bound = |s: &str| -> Result<Option<i64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse()
                    .map(Some)
                    .map_err(|_| err(format!("non-integer value {s:?}")))
            }
        };
        let iv = Interval::new(bound(&rec[2])?, bound(&rec[3])?);
        if iv.is_empty() {
            return Err(err(format!("{knot} {inv}: empty interval {iv}")));
        }
        let key = (knot.to_string(), inv);
        let known = data.bounds.entries(knot).any(|(i, _)| i == inv) || data.sources.contains_key(&key);
        if known && data.bounds.get(knot, inv) != iv {
            return Err(err(format!(
                "{knot} {inv}: {iv} conflicts with earlier {}",
                data.bounds.get(knot, inv)
            )));
        }
        data.bounds.set(knot, inv, iv);
        if let Some(src) = rec.get(4).filter(|s| !s.is_empty()) {
            if let Some(old) = data.sources.get(&key) {
                if old != src {
                    return Err(err(format!("{knot} {inv}: source {src:?} conflicts with {old:?}")));
                }
            }
            data.sources.insert(key, src.to_string());
        }
    }
    Ok(data)
}

pub fn read_invariant_csv_str(text: &str) -> Result<Dataset> {
    read_invariant_csv(text.as_bytes())
}

/// Read a table and reject it if any theorem edge is contradicted.
pub fn ingest<R: Read>(g: &RelationGraph, reader: R) -> Result<Dataset> {
    let data = read_invariant_csv(reader)?;
    check_soundness(g, &data.bounds)?;
    Ok(data)
}

pub fn write_invariant_csv<W: Write>(data: &Dataset, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(writer);
    let with_source = !data.sources.is_empty();
    let io = |e: csv::Error| Error::Io(e.to_string());
    if with_source {
        w.write_record(["knot", "invariant", "lo", "hi", "source"]).map_err(io)?;
    } else {
        w.write_record(["knot", "invariant", "lo", "hi"]).map_err(io)?;
    }
    let show = |b: Option<i64>| b.map(|v| v.to_string()).unwrap_or_default();
    for (knot, inv, iv) in data.bounds.iter() {
        let mut row = vec![knot.to_string(), inv.name().to_string(), show(iv.lo), show(iv.hi)];
        if with_source {
            row.push(data.sources.get(&(knot.to_string(), inv)).cloned().unwrap_or_default());
        }
        w.write_record(&row).map_err(io)?;
    }
    // knots with no bounded entries still need a row to survive a round trip
    for knot in data.bounds.knots() {
        if data.bounds.entries(knot).next().is_none() {
            w.write_record([knot, InvariantId::C.name(), "", ""]).map_err(io)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn bounds_to_csv(data: &Dataset) -> String {
    let mut buf = Vec::new();
    write_invariant_csv(data, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}

/// Bundled data: the 28 knots of the td example, small-knot ground truth,
/// and the same ground truth with one corrupted value.
pub const TD_EXAMPLE: &str = include_str!("../data/td_example.csv");
pub const SMALL_KNOTS: &str = include_str!("../data/knots_small.csv");
pub const SMALL_KNOTS_CORRUPTED: &str = include_str!("../data/knots_corrupted.csv");
