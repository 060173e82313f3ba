//! On-disk cache of `L(1, n^2 - 4)` as CSV with header `n,delta,D,l,L1`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use crate::arith::is_fundamental;
use crate::error::{Error, Result};
use crate::geodesics::{trace_l_value, TraceLValue};

/// One cache row; `L1` is stored with 17 significant digits.
pub type LCacheEntry = TraceLValue;

pub const HEADER: [&str; 5] = ["n", "delta", "D", "l", "L1"];

/// Every `SPOT_CHECK_STRIDE`-th accepted row is recomputed on load.
pub const SPOT_CHECK_STRIDE: usize = 100;

/// Largest accepted `|L1(cached) - L1(recomputed)|`.
pub const SPOT_CHECK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LCache {
    entries: BTreeMap<u64, LCacheEntry>,
}

fn parse_field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize) -> std::result::Result<T, String> {
    let raw = rec.get(i).ok_or_else(|| format!("missing column `{}`", HEADER[i]))?;
    raw.trim().parse().map_err(|_| format!("`{raw}` is not a valid `{}`", HEADER[i]))
}

/// Parses one row and checks `delta = n^2 - 4 = D l^2` with `D` fundamental.
pub fn parse_row(rec: &csv::StringRecord) -> std::result::Result<LCacheEntry, String> {
    if rec.len() != HEADER.len() {
        return Err(format!("expected {} columns, found {}", HEADER.len(), rec.len()));
    }
    let n: u64 = parse_field(rec, 0)?;
    let delta: u64 = parse_field(rec, 1)?;
    let d: i64 = parse_field(rec, 2)?;
    let l: u64 = parse_field(rec, 3)?;
    let l1: f64 = parse_field(rec, 4)?;
    if !(3..=3_000_000_000).contains(&n) {
        return Err(format!("trace {n} out of range"));
    }
    if delta != n * n - 4 {
        return Err(format!("delta = {delta} but n^2 - 4 = {}", n * n - 4));
    }
    if !is_fundamental(d) || d <= 1 {
        return Err(format!("D = {d} is not a positive fundamental discriminant"));
    }
    if l.checked_mul(l).and_then(|l2| l2.checked_mul(d as u64)) != Some(delta) {
        return Err(format!("D l^2 = {d}*{l}^2 differs from delta = {delta}"));
    }
    if !(l1 > 0.0) || !l1.is_finite() {
        return Err(format!("L1 = {l1} must be positive and finite"));
    }
    Ok(TraceLValue { n, delta, fundamental: d, l, l1 })
}

impl LCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads `path`, skipping (with a warning on `warn`) malformed rows and
    /// rows that fail the recomputation spot check. A missing or unreadable
    /// file yields an empty cache.
    pub fn load(path: &Path, warn: &mut dyn Write) -> Self {
        let mut cache = Self::new();
        let file = match std::fs::File::open(path) {
            Ok(f) => f,
            Err(e) => {
                if e.kind() != std::io::ErrorKind::NotFound {
                    let _ = writeln!(warn, "warning: cannot read cache {}: {e}; starting fresh", path.display());
                }
                return cache;
            }
        };
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(file);
        let mut records = rdr.records();
        match records.next() {
            None => return cache,
            Some(Ok(h)) if h.iter().map(str::trim).eq(HEADER) => {}
            Some(_) => {
                let _ = writeln!(warn, "warning: cache {} has no `n,delta,D,l,L1` header; starting fresh", path.display());
                return cache;
            }
        }
        let mut accepted = 0usize;
        for (i, rec) in records.enumerate() {
            let line = i + 2;
            let entry = match rec.map_err(|e| e.to_string()).and_then(|r| parse_row(&r)) {
                Ok(e) => e,
                Err(msg) => {
                    let _ = writeln!(warn, "warning: {}:{line}: skipped: {msg}", path.display());
                    continue;
                }
            };
            if accepted.is_multiple_of(SPOT_CHECK_STRIDE) {
                match trace_l_value(entry.n) {
                    Ok(fresh) if (fresh.l1 - entry.l1).abs() <= SPOT_CHECK_TOL * fresh.l1.max(1.0) => {}
                    Ok(fresh) => {
                        let _ = writeln!(
                            warn,
                            "warning: {}:{line}: skipped: L1 = {:.16e} but recomputation gives {:.16e}",
                            path.display(),
                            entry.l1,
                            fresh.l1
                        );
                        accepted += 1;
                        continue;
                    }
                    Err(e) => {
                        let _ = writeln!(warn, "warning: {}:{line}: skipped: {e}", path.display());
                        accepted += 1;
                        continue;
                    }
                }
            }
            accepted += 1;
            cache.entries.insert(entry.n, entry);
        }
        cache
    }

    /// Writes all rows sorted by `n`, replacing `path` atomically.
    pub fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("csv.tmp");
        {
            let mut w = csv::Writer::from_path(&tmp).map_err(|e| Error::Io(e.to_string()))?;
            w.write_record(HEADER).map_err(|e| Error::Io(e.to_string()))?;
            for e in self.entries.values() {
                w.write_record([
                    e.n.to_string(),
                    e.delta.to_string(),
                    e.fundamental.to_string(),
                    e.l.to_string(),
                    format!("{:.16e}", e.l1),
                ])
                .map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn entries(&self) -> &BTreeMap<u64, LCacheEntry> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds rows; returns how many were new.
    pub fn extend(&mut self, rows: &[LCacheEntry]) -> usize {
        let before = self.entries.len();
        for r in rows {
            self.entries.entry(r.n).or_insert(*r);
        }
        self.entries.len() - before
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(s: &str) -> csv::StringRecord {
        csv::StringRecord::from(s.split(',').collect::<Vec<_>>())
    }

    #[test]
    fn row_validation() {
        let e = parse_row(&rec("3,5,5,1,4.3040894096400246e-1")).unwrap();
        assert_eq!((e.n, e.delta, e.fundamental, e.l), (3, 5, 5, 1));
        assert!(parse_row(&rec("3,6,5,1,0.43")).is_err());
        assert!(parse_row(&rec("6,32,32,1,0.93")).is_err());
        assert!(parse_row(&rec("6,32,8,2,0.93")).is_ok());
        assert!(parse_row(&rec("6,32,8,2,-1")).is_err());
        assert!(parse_row(&rec("6,32,8")).is_err());
        assert!(parse_row(&rec("x,32,8,2,1")).is_err());
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("l.csv");
        let mut c = LCache::new();
        let rows: Vec<_> = (3..40).map(|n| trace_l_value(n).unwrap()).collect();
        assert_eq!(c.extend(&rows), rows.len());
        c.store(&path).unwrap();
        let mut warn = Vec::new();
        let back = LCache::load(&path, &mut warn);
        assert!(warn.is_empty());
        assert_eq!(back, c);
        // 17 significant digits round-trip exactly
        for r in &rows {
            assert_eq!(back.entries()[&r.n].l1.to_bits(), r.l1.to_bits());
        }
    }

    #[test]
    fn missing_and_empty_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut warn = Vec::new();
        assert!(LCache::load(&dir.path().join("none.csv"), &mut warn).is_empty());
        assert!(warn.is_empty());
        let empty = dir.path().join("empty.csv");
        std::fs::write(&empty, "").unwrap();
        assert!(LCache::load(&empty, &mut warn).is_empty());
    }
}
