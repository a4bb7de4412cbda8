//! Delimited-text loading of a single real-valued column into a [`Signal`].
//!
//! Rows are taken in file order as positions 0..N−1 of Z_N; label columns are
//! carried through verbatim and never parsed.

use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::Signal;

/// A column chosen by header name or by 0-based position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ColumnRef {
    Name(String),
    Index(usize),
}

impl ColumnRef {
    /// Names are matched against the header first; a purely numeric name that
    /// matches no header falls back to a position.
    pub fn parse(s: &str) -> Self {
        ColumnRef::Name(s.to_string())
    }

    fn resolve(&self, headers: Option<&csv::StringRecord>) -> Option<usize> {
        match self {
            ColumnRef::Index(i) => Some(*i),
            ColumnRef::Name(name) => headers
                .and_then(|h| h.iter().position(|c| c.trim() == name.trim()))
                .or_else(|| name.trim().parse().ok()),
        }
    }

    fn describe(&self) -> String {
        match self {
            ColumnRef::Name(n) => format!("\"{n}\""),
            ColumnRef::Index(i) => format!("#{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MissingPolicy {
    /// A missing cell is an error.
    #[default]
    Error,
    /// Linear interpolation between the nearest present neighbours; leading
    /// and trailing gaps take the nearest present value.
    Interpolate,
}

#[derive(Debug, Clone)]
pub struct SeriesFile {
    pub path: PathBuf,
    pub value_column: ColumnRef,
    pub label_column: Option<ColumnRef>,
    pub delimiter: u8,
    pub has_header: bool,
    pub missing: MissingPolicy,
}

impl SeriesFile {
    pub fn new(path: impl Into<PathBuf>, value_column: ColumnRef) -> Self {
        Self {
            path: path.into(),
            value_column,
            label_column: None,
            delimiter: b',',
            has_header: true,
            missing: MissingPolicy::Error,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LoadedSeries {
    pub signal: Signal,
    /// One label per sample when a label column was requested.
    pub labels: Option<Vec<String>>,
    /// Header name of the value column, or its position.
    pub column: String,
    /// Number of cells filled by interpolation.
    pub filled: usize,
}

fn is_missing(cell: &str) -> bool {
    cell.is_empty()
        || ["na", "nan", "null", "n/a"]
            .iter()
            .any(|m| cell.eq_ignore_ascii_case(m))
}

/// Loads the configured column of a delimited file.
pub fn load_series(cfg: &SeriesFile) -> Result<LoadedSeries> {
    let file = File::open(&cfg.path).map_err(|e| ingest_err(&cfg.path, e.to_string()))?;
    load_series_from_reader(cfg, file)
}

/// As [`load_series`], reading bytes from `reader`; `cfg.path` is used only
/// in error messages.
pub fn load_series_from_reader<R: Read>(cfg: &SeriesFile, reader: R) -> Result<LoadedSeries> {
    let path = &cfg.path;
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(cfg.delimiter)
        .has_headers(cfg.has_header)
        .flexible(true)
        .from_reader(reader);

    let headers = if cfg.has_header {
        Some(
            rdr.headers()
                .map_err(|e| ingest_err(path, e.to_string()))?
                .clone(),
        )
    } else {
        None
    };
    let value_idx = resolve(&cfg.value_column, headers.as_ref(), path)?;
    let label_idx = cfg
        .label_column
        .as_ref()
        .map(|c| resolve(c, headers.as_ref(), path))
        .transpose()?;

    let mut cells: Vec<Option<f64>> = Vec::new();
    let mut labels = label_idx.map(|_| Vec::new());
    for record in rdr.records() {
        let record = record.map_err(|e| match e.position() {
            Some(pos) => row_err(path, pos.line(), e.to_string()),
            None => ingest_err(path, e.to_string()),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let raw = record
            .get(value_idx)
            .ok_or_else(|| row_err(path, line, format!("no column at position {value_idx}")))?
            .trim();
        if is_missing(raw) {
            if cfg.missing == MissingPolicy::Error {
                return Err(row_err(path, line, "missing value".to_string()));
            }
            cells.push(None);
        } else {
            let v: f64 = raw
                .parse()
                .map_err(|_| row_err(path, line, format!("cannot parse {raw:?} as a number")))?;
            if !v.is_finite() {
                return Err(row_err(path, line, format!("non-finite value {raw:?}")));
            }
            cells.push(Some(v));
        }
        if let (Some(labels), Some(idx)) = (labels.as_mut(), label_idx) {
            labels.push(record.get(idx).unwrap_or("").trim().to_string());
        }
    }

    if cells.is_empty() {
        return Err(ingest_err(path, "no data rows".to_string()));
    }
    let filled = cells.iter().filter(|c| c.is_none()).count();
    let values = interpolate(&cells)
        .ok_or_else(|| ingest_err(path, "every value is missing".to_string()))?;
    let signal = Signal::from_real(&values)?;

    let column = match (&headers, &cfg.value_column) {
        (Some(h), _) if h.get(value_idx).is_some() => h[value_idx].trim().to_string(),
        (_, ColumnRef::Name(n)) => n.clone(),
        (_, ColumnRef::Index(i)) => i.to_string(),
    };
    Ok(LoadedSeries {
        signal,
        labels,
        column,
        filled,
    })
}

fn resolve(col: &ColumnRef, headers: Option<&csv::StringRecord>, path: &Path) -> Result<usize> {
    let idx = col
        .resolve(headers)
        .ok_or_else(|| ingest_err(path, format!("column {} not found", col.describe())))?;
    if let Some(h) = headers {
        if idx >= h.len() {
            return Err(ingest_err(
                path,
                format!(
                    "column {} out of range ({} columns)",
                    col.describe(),
                    h.len()
                ),
            ));
        }
    }
    Ok(idx)
}

/// Fills `None` gaps linearly between present neighbours. `None` if no
/// value is present.
fn interpolate(cells: &[Option<f64>]) -> Option<Vec<f64>> {
    let present: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].is_some()).collect();
    let (&first, &last) = (present.first()?, present.last()?);
    let mut out = Vec::with_capacity(cells.len());
    let mut next = 0;
    for (i, cell) in cells.iter().enumerate() {
        if let Some(v) = cell {
            out.push(*v);
            next += 1;
            continue;
        }
        let v = if i < first {
            cells[first].unwrap()
        } else if i > last {
            cells[last].unwrap()
        } else {
            let (lo, hi) = (present[next - 1], present[next]);
            let (a, b) = (cells[lo].unwrap(), cells[hi].unwrap());
            a + (b - a) * (i - lo) as f64 / (hi - lo) as f64
        };
        out.push(v);
    }
    Some(out)
}

fn ingest_err(path: &Path, message: String) -> Error {
    Error::Ingest {
        path: path.to_path_buf(),
        message,
    }
}

fn row_err(path: &Path, line: u64, message: String) -> Error {
    Error::IngestRow {
        path: path.to_path_buf(),
        line,
        message,
    }
}
