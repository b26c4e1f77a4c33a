//! Dense row-major feature matrices and their CSV form.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::corpus::Label;
use crate::error::{Error, Result};

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// An empty matrix with a fixed column count, to be filled with
    /// [`Matrix::push_row`].
    pub fn with_cols(cols: usize) -> Self {
        Self {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::with_cols(cols);
        for r in rows {
            m.push_row(r.as_ref())?;
        }
        Ok(m)
    }

    pub fn push_row(&mut self, row: &[f64]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::ShapeMismatch {
                what: "row length",
                expected: self.cols,
                found: row.len(),
            });
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn iter_rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    /// Fails on the first NaN or infinite entry.
    pub fn ensure_finite(&self) -> Result<()> {
        for (i, row) in self.iter_rows().enumerate() {
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { row: i, column: j });
            }
        }
        Ok(())
    }

    /// Selects rows by index, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Matrix {
        let mut out = Matrix::with_cols(self.cols);
        for &i in indices {
            out.data.extend_from_slice(self.row(i));
            out.rows += 1;
        }
        out
    }

    pub fn column_means(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.cols];
        for row in self.iter_rows() {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        let n = self.rows.max(1) as f64;
        sums.into_iter().map(|s| s / n).collect()
    }
}

/// A named feature matrix with one label per row.
///
/// The CSV form has a header of feature names followed by `label`; values
/// are written in shortest round-trip notation.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub names: Vec<String>,
    pub x: Matrix,
    pub labels: Vec<Label>,
}

impl FeatureTable {
    pub fn new(names: Vec<String>, x: Matrix, labels: Vec<Label>) -> Result<Self> {
        if names.len() != x.cols() {
            return Err(Error::ShapeMismatch {
                what: "feature names",
                expected: x.cols(),
                found: names.len(),
            });
        }
        if labels.len() != x.rows() {
            return Err(Error::ShapeMismatch {
                what: "labels",
                expected: x.rows(),
                found: labels.len(),
            });
        }
        Ok(Self { names, x, labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(name);
            out.push(',');
        }
        out.push_str("label\n");
        for (row, label) in self.x.iter_rows().zip(&self.labels) {
            for v in row {
                let _ = write!(out, "{v},");
            }
            let _ = writeln!(out, "{}", label.as_u8());
        }
        out
    }

    pub fn parse_csv(text: &str, path: &Path) -> Result<Self> {
        let err = |message: String| Error::Table {
            path: path.to_path_buf(),
            message,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| err("missing header".into()))?;
        let mut names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
        if names.last().map(String::as_str) != Some("label") {
            return Err(err("last column must be `label`".into()));
        }
        names.pop();
        let mut x = Matrix::with_cols(names.len());
        let mut labels = Vec::new();
        let mut row = Vec::with_capacity(names.len());
        for (lineno, line) in lines {
            row.clear();
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != names.len() + 1 {
                return Err(err(format!(
                    "line {}: expected {} fields, found {}",
                    lineno + 1,
                    names.len() + 1,
                    fields.len()
                )));
            }
            for f in &fields[..names.len()] {
                let v: f64 = f
                    .parse()
                    .map_err(|_| err(format!("line {}: bad number {f:?}", lineno + 1)))?;
                row.push(v);
            }
            let label = fields[names.len()]
                .parse::<i64>()
                .ok()
                .and_then(|v| Label::try_from(v).ok())
                .ok_or_else(|| err(format!("line {}: label must be 0 or 1", lineno + 1)))?;
            x.push_row(&row)?;
            labels.push(label);
        }
        Self::new(names, x, labels)
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse_csv(&text, path)
    }
}
