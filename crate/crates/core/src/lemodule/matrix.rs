use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use serde_json::Value;

use super::LeModuleError;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::from(1);
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LeModuleError> {
        if entries.len() != rows * cols {
            return Err(LeModuleError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LeModuleError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LeModuleError::ShapeMismatch("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Self::from_entries(rows.len(), cols, entries)
    }

    /// Either a list of rows, or `{"rows": r, "cols": c, "entries": [...]}`
    /// with a flat row-major list. Entries may be numbers or decimal strings.
    pub fn from_json(v: &Value) -> Result<Self, LeModuleError> {
        let bad = |msg: &str| LeModuleError::Parse(msg.to_string());
        let entry = |e: &Value| -> Result<BigInt, LeModuleError> {
            match e {
                Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().unwrap()),
                Value::String(s) => s.trim().parse().map_err(|_| bad(&format!("not an integer: {s:?}"))),
                other => Err(bad(&format!("not an integer: {other}"))),
            }
        };
        match v {
            Value::Array(rows) => {
                let parsed: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|r| match r {
                        Value::Array(es) => es.iter().map(entry).collect(),
                        _ => Err(bad("expected a list of rows")),
                    })
                    .collect::<Result<_, _>>()?;
                Self::from_rows(&parsed)
            }
            Value::Object(o) => {
                let dim = |k: &str| -> Result<usize, LeModuleError> {
                    o.get(k)
                        .and_then(Value::as_u64)
                        .map(|d| d as usize)
                        .ok_or_else(|| bad(&format!("missing `{k}`")))
                };
                let (rows, cols) = (dim("rows")?, dim("cols")?);
                let entries = match o.get("entries") {
                    // flat, or nested rows as written by `Serialize`
                    Some(Value::Array(es)) => es
                        .iter()
                        .flat_map(|e| match e {
                            Value::Array(row) => row.iter().collect::<Vec<_>>(),
                            single => vec![single],
                        })
                        .map(entry)
                        .collect::<Result<Vec<_>, _>>()?,
                    None if rows * cols == 0 => Vec::new(),
                    _ => return Err(bad("missing `entries`")),
                };
                Self::from_entries(rows, cols, entries)
            }
            _ => Err(bad("expected a matrix")),
        }
    }

    pub fn parse(text: &str) -> Result<Self, LeModuleError> {
        let v: Value = serde_json::from_str(text).map_err(|e| LeModuleError::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &IntegerMatrix) -> Result<IntegerMatrix, LeModuleError> {
        if self.cols != o.rows {
            return Err(LeModuleError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    *out.get_mut(i, j) += a * o.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            *self.get_mut(dst, j) += v;
        }
    }

    /// col[dst] += k * col[src]
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            *self.get_mut(i, dst) += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            *self.get_mut(i, j) = v;
        }
    }

    pub fn max_abs(&self) -> BigInt {
        self.entries.iter().map(|e| e.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Entries go out as decimal strings so nothing is lost to 64-bit readers.
impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        let mut st = s.serialize_struct("IntegerMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}
