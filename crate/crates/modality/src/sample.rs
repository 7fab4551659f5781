//! Univariate sample ingestion and validation.
//!
//! Both tests operate on a [`Sample`]: a sorted vector of finite values with
//! a record of how many missing entries were dropped. Sorting happens once at
//! ingestion; everything downstream relies on it.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

/// A validated univariate sample, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    dropped_missing: usize,
}

/// Column selector for delimited input: by 0-based position or header name.
#[derive(Debug, Clone, PartialEq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

/// Parsing options for delimited text input.
#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Field delimiter; comma and tab are the supported conventions.
    pub delimiter: u8,
    /// Whether the first record is a header row.
    pub has_header: bool,
    /// Column to read; when `None` the input must have exactly one column.
    pub column: Option<ColumnSelector>,
    /// Drop missing entries instead of failing.
    pub complete_case: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            delimiter: b',',
            has_header: false,
            column: None,
            complete_case: false,
        }
    }
}

/// Empty cells and the literal tokens NA/NaN (any case) count as missing.
fn is_missing_token(tok: &str) -> bool {
    let t = tok.trim();
    t.is_empty() || t.eq_ignore_ascii_case("na") || t.eq_ignore_ascii_case("nan")
}

impl Sample {
    /// Build a sample from raw values. Non-finite entries are rejected; the
    /// values are sorted.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::from_parts(values, 0)
    }

    fn from_parts(mut values: Vec<f64>, dropped_missing: usize) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Validation(format!(
                "non-finite value {bad} in sample; only finite numeric data is supported"
            )));
        }
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        values.sort_unstable_by(|a, b| a.total_cmp(b));
        Ok(Sample {
            values,
            dropped_missing,
        })
    }

    /// Parse a sample from delimited text.
    pub fn load<R: Read>(reader: R, opts: &LoadOptions) -> Result<Self> {
        let mut builder = csv::ReaderBuilder::new();
        builder
            .delimiter(opts.delimiter)
            .has_headers(opts.has_header)
            .flexible(true)
            .trim(csv::Trim::All);
        let mut rdr = builder.from_reader(reader);

        let col_index = match &opts.column {
            Some(ColumnSelector::Index(i)) => Some(*i),
            Some(ColumnSelector::Name(name)) => {
                if !opts.has_header {
                    return Err(Error::Validation(format!(
                        "column selected by name {name:?} but input has no header row"
                    )));
                }
                let headers = rdr
                    .headers()
                    .map_err(|e| Error::Validation(format!("cannot read header row: {e}")))?;
                let idx = headers.iter().position(|h| h == name);
                match idx {
                    Some(i) => Some(i),
                    None => {
                        return Err(Error::Validation(format!(
                            "column {name:?} not found; available: {}",
                            headers.iter().collect::<Vec<_>>().join(", ")
                        )))
                    }
                }
            }
            None => None,
        };

        let mut values = Vec::new();
        let mut dropped = 0usize;
        for (row_no, record) in rdr.records().enumerate() {
            let record =
                record.map_err(|e| Error::Validation(format!("cannot parse input: {e}")))?;
            if record.len() == 1 && record[0].is_empty() {
                continue; // blank line
            }
            let idx = match col_index {
                Some(i) => i,
                None => {
                    if record.len() > 1 {
                        return Err(Error::Dimensionality(format!(
                            "input has {} columns but the test requires one-dimensional data; \
                             select a single column",
                            record.len()
                        )));
                    }
                    0
                }
            };
            let field = record.get(idx).ok_or_else(|| {
                Error::Validation(format!(
                    "row {}: column index {idx} out of range (row has {} fields)",
                    row_no + 1,
                    record.len()
                ))
            })?;
            if is_missing_token(field) {
                if opts.complete_case {
                    dropped += 1;
                    continue;
                }
                return Err(Error::MissingData(format!(
                    "missing value at row {}; rerun with complete-case handling to drop it",
                    row_no + 1
                )));
            }
            let parsed: f64 = field.parse().map_err(|_| {
                Error::Validation(format!(
                    "non-numeric data {field:?} at row {}; the test is not run",
                    row_no + 1
                ))
            })?;
            if !parsed.is_finite() {
                return Err(Error::Validation(format!(
                    "non-finite value {field:?} at row {}; infinities are not valid observations",
                    row_no + 1
                )));
            }
            values.push(parsed);
        }
        Self::from_parts(values, dropped)
    }

    pub fn load_path(path: &Path, opts: &LoadOptions) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::load(file, opts)
    }

    /// Sorted values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn dropped_missing(&self) -> usize {
        self.dropped_missing
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.n() as f64
    }

    /// Sample standard deviation (denominator n-1). Needs n >= 2.
    pub fn sd(&self) -> Result<f64> {
        if self.n() < 2 {
            return Err(Error::DegenerateSample {
                n: self.n(),
                needed: 2,
            });
        }
        let mean = self.mean();
        let ss: f64 = self.values.iter().map(|v| (v - mean).powi(2)).sum();
        Ok((ss / (self.n() - 1) as f64).sqrt())
    }
}
