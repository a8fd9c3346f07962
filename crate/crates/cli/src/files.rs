//! JSON matrix files.
//!
//! ```json
//! {"kind": "matrix", "rows": 2, "cols": 2, "data": [[1, 0], [0, 0], [0, 0], [1, 0]]}
//! {"kind": "block",  "n": 2, "m": 1, "data": [...]}    // flatten(R), (nm)² entries
//! {"kind": "map",    "n": 2, "d": 2, "data": [...]}    // flatten(choi(φ)), (nd)² entries
//! {"kind": "kraus",  "n": 2, "d": 2, "operators": [[...], ...]}  // each d x n, row-major
//! ```
//!
//! Entries are `[re, im]` pairs in row-major order. Numbers are written in
//! the shortest decimal form that parses back to the same `f64`.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use tschur::block::{flatten, unflatten};
use tschur::cpmaps::choi;
use tschur::{CBlockMatrix, CKrausSet, CMap, CMatrix, MatLinearMap};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("invalid matrix file: {0}")]
    Invalid(String),
    #[error("expected a {expected} file, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error(transparent)]
    Math(#[from] tschur::Error),
}

type Entry = [f64; 2];

/// On-disk representation; see the module docs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatrixFile {
    Matrix { rows: usize, cols: usize, data: Vec<Entry> },
    Block { n: usize, m: usize, data: Vec<Entry> },
    Map { n: usize, d: usize, data: Vec<Entry> },
    Kraus { n: usize, d: usize, operators: Vec<Vec<Entry>> },
}

impl MatrixFile {
    pub fn kind(&self) -> &'static str {
        match self {
            MatrixFile::Matrix { .. } => "matrix",
            MatrixFile::Block { .. } => "block",
            MatrixFile::Map { .. } => "map",
            MatrixFile::Kraus { .. } => "kraus",
        }
    }

    pub fn from_matrix(a: &CMatrix) -> Self {
        MatrixFile::Matrix {
            rows: a.rows(),
            cols: a.cols(),
            data: encode(a),
        }
    }

    pub fn from_block(r: &CBlockMatrix) -> Self {
        MatrixFile::Block {
            n: r.n(),
            m: r.m(),
            data: encode(&flatten(r)),
        }
    }

    pub fn from_map(phi: &CMap) -> Self {
        MatrixFile::Map {
            n: phi.n(),
            d: phi.d(),
            data: encode(&flatten(&choi(phi))),
        }
    }

    pub fn from_kraus(k: &CKrausSet) -> Self {
        MatrixFile::Kraus {
            n: k.n(),
            d: k.d(),
            operators: k.operators().iter().map(encode).collect(),
        }
    }

    /// The stored entries as a single matrix: the matrix itself, or the
    /// flattened block / Choi matrix.
    pub fn to_matrix(&self) -> Result<CMatrix, FileError> {
        match self {
            MatrixFile::Matrix { rows, cols, data } => decode(*rows, *cols, data),
            MatrixFile::Block { n, m, data } => square(*n, *m, data),
            MatrixFile::Map { n, d, data } => square(*n, *d, data),
            MatrixFile::Kraus { .. } => Err(FileError::WrongKind {
                expected: "matrix, block or map",
                found: "kraus",
            }),
        }
    }

    pub fn to_block(&self) -> Result<CBlockMatrix, FileError> {
        match self {
            MatrixFile::Block { n, m, data } => Ok(unflatten(&square(*n, *m, data)?, *n, *m)?),
            other => Err(FileError::WrongKind {
                expected: "block",
                found: other.kind(),
            }),
        }
    }

    pub fn to_map(&self) -> Result<CMap, FileError> {
        match self {
            MatrixFile::Map { n, d, data } => Ok(MatLinearMap::from_choi(unflatten(&square(*n, *d, data)?, *n, *d)?)),
            other => Err(FileError::WrongKind {
                expected: "map",
                found: other.kind(),
            }),
        }
    }

    pub fn to_kraus(&self) -> Result<CKrausSet, FileError> {
        match self {
            MatrixFile::Kraus { n, d, operators } => {
                let ops = operators.iter().map(|op| decode(*d, *n, op)).collect::<Result<Vec<_>, _>>()?;
                Ok(CKrausSet::new(*n, *d, ops)?)
            }
            other => Err(FileError::WrongKind {
                expected: "kraus",
                found: other.kind(),
            }),
        }
    }

    pub fn parse(text: &str, path: &str) -> Result<Self, FileError> {
        serde_json::from_str(text).map_err(|source| FileError::Json {
            path: path.to_string(),
            source,
        })
    }

    pub fn to_json(&self) -> Result<String, FileError> {
        let entries: Box<dyn Iterator<Item = &Entry>> = match self {
            MatrixFile::Matrix { data, .. } | MatrixFile::Block { data, .. } | MatrixFile::Map { data, .. } => {
                Box::new(data.iter())
            }
            MatrixFile::Kraus { operators, .. } => Box::new(operators.iter().flatten()),
        };
        if entries.flatten().any(|x| !x.is_finite()) {
            return Err(FileError::Invalid("non-finite entry".into()));
        }
        serde_json::to_string(self).map_err(|e| FileError::Invalid(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        let shown = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|source| FileError::Read {
            path: shown.clone(),
            source,
        })?;
        Self::parse(&text, &shown)
    }

    pub fn write(&self, path: &Path) -> Result<(), FileError> {
        let mut text = self.to_json()?;
        text.push('\n');
        fs::write(path, text).map_err(|source| FileError::Write {
            path: path.display().to_string(),
            source,
        })
    }
}

fn encode(a: &CMatrix) -> Vec<Entry> {
    a.data().iter().map(|z| [z.re, z.im]).collect()
}

fn square(n: usize, m: usize, data: &[Entry]) -> Result<CMatrix, FileError> {
    let side = n
        .checked_mul(m)
        .ok_or_else(|| FileError::Invalid(format!("dimensions {n}x{m} overflow")))?;
    decode(side, side, data)
}

fn decode(rows: usize, cols: usize, data: &[Entry]) -> Result<CMatrix, FileError> {
    if rows == 0 || cols == 0 {
        return Err(FileError::Invalid(format!("dimensions must be positive, got {rows}x{cols}")));
    }
    let expected = rows
        .checked_mul(cols)
        .ok_or_else(|| FileError::Invalid(format!("dimensions {rows}x{cols} overflow")))?;
    if data.len() != expected {
        return Err(FileError::Invalid(format!(
            "data has {} entries, {rows}x{cols} needs {expected}",
            data.len()
        )));
    }
    if let Some(pos) = data.iter().position(|e| !e[0].is_finite() || !e[1].is_finite()) {
        return Err(FileError::Invalid(format!("entry {pos} is not finite")));
    }
    Ok(CMatrix::from_vec(
        rows,
        cols,
        data.iter().map(|e| Complex::new(e[0], e[1])).collect(),
    )?)
}
