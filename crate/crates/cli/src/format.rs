//! JSON file formats.
//!
//! Complex numbers are written as `[re, im]`; numbers with a zero imaginary
//! part are written bare and bare numbers are read as reals.

use std::fs;
use std::io::Read;

use framekit::{Matrix, Scalar, Vector, VectorFamily};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub Scalar);

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNum {
    Real(f64),
    Pair([f64; 2]),
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.im == 0.0 {
            self.0.re.serialize(s)
        } else {
            [self.0.re, self.0.im].serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let z = match RawNum::deserialize(d)? {
            RawNum::Real(re) => Scalar::new(re, 0.0),
            RawNum::Pair([re, im]) => Scalar::new(re, im),
        };
        Ok(Num(z))
    }
}

pub fn nums(v: &Vector) -> Vec<Num> {
    v.iter().map(|z| Num(*z)).collect()
}

fn to_vector(values: &[Num]) -> Result<Vector, CliError> {
    if values.iter().any(|n| !(n.0.re.is_finite() && n.0.im.is_finite())) {
        return Err(CliError::parse("non-finite number"));
    }
    Ok(Vector::from_iterator(values.len(), values.iter().map(|n| n.0)))
}

/// `{"dim": N, "vectors": [[...] x M], "frame": bool}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameFile {
    pub dim: usize,
    pub vectors: Vec<Vec<Num>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub frame: bool,
}

impl FrameFile {
    pub fn from_family(f: &VectorFamily, frame: bool) -> Self {
        FrameFile {
            dim: f.dim(),
            vectors: f.vectors().map(|v| nums(&v)).collect(),
            frame,
        }
    }

    pub fn to_family(&self) -> Result<VectorFamily, CliError> {
        if self.vectors.is_empty() {
            return Err(CliError::dimension("frame file has no vectors"));
        }
        let mut columns = Vec::with_capacity(self.vectors.len());
        for (n, v) in self.vectors.iter().enumerate() {
            if v.len() != self.dim {
                return Err(CliError::dimension(format!(
                    "vector {} has {} entries, expected dim = {}",
                    n + 1,
                    v.len(),
                    self.dim
                )));
            }
            columns.push(to_vector(v)?);
        }
        Ok(VectorFamily::from_vectors(&columns)?)
    }
}

/// `{"coeffs": [...], "erased": [indices]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffFile {
    pub coeffs: Vec<Num>,
    #[serde(default)]
    pub erased: Vec<usize>,
}

impl CoeffFile {
    pub fn new(coeffs: &Vector, erased: Vec<usize>) -> Self {
        CoeffFile {
            coeffs: nums(coeffs),
            erased,
        }
    }

    pub fn vector(&self) -> Result<Vector, CliError> {
        to_vector(&self.coeffs)
    }
}

/// A signal file: either a bare JSON array or an object with a `signal` key.
#[derive(Deserialize)]
#[serde(untagged)]
enum SignalFile {
    Bare(Vec<Num>),
    Keyed { signal: Vec<Num> },
}

pub fn parse_signal_file(text: &str) -> Result<Vector, CliError> {
    let parsed: SignalFile = serde_json::from_str(text).map_err(CliError::from_json)?;
    match parsed {
        SignalFile::Bare(v) | SignalFile::Keyed { signal: v } => to_vector(&v),
    }
}

/// Comma-separated real entries, e.g. `1,0,-2.5`.
pub fn parse_inline_reals(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| CliError::parse(format!("'{s}' is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::parse("non-finite number"))
            }
        })
        .collect()
}

/// Comma-separated integers.
pub fn parse_inline_ints<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::parse(format!("'{s}' is not an integer")))
        })
        .collect()
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::io(format!("{path}: {e}")))
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(CliError::from_json)
}

/// Row-major matrix as nested arrays of numbers.
pub fn matrix_rows(m: &Matrix) -> Vec<Vec<Num>> {
    m.row_iter().map(|r| r.iter().map(|z| Num(*z)).collect()).collect()
}

pub fn matrix_from_rows(rows: &[Vec<Num>]) -> Result<Matrix, CliError> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if r == 0 || c == 0 {
        return Err(CliError::dimension("matrix is empty"));
    }
    if rows.iter().any(|row| row.len() != c) {
        return Err(CliError::dimension("matrix rows have different lengths"));
    }
    let m = Matrix::from_fn(r, c, |i, j| rows[i][j].0);
    if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(CliError::parse("non-finite number"));
    }
    Ok(m)
}
