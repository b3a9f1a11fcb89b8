//! Sparse integer matrices and the plain triplet text format.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension mismatch: {0}x{1} times {2}x{3}")]
    Dimensions(usize, usize, usize, usize),
}

/// Sparse matrix over ℤ; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, r) in dense.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(
            i < self.rows && j < self.cols,
            "entry ({i},{j}) out of bounds"
        );
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.len() == self.rows
            && self.entries.iter().all(|(&(i, j), v)| i == j && v.is_one())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimensions(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for (&(k, j), v) in &other.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    out.add_to(i, j, &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// Rows and columns reordered: entry `(i, j)` moves to
    /// `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.set(row_perm[i], col_perm[j], v.clone());
        }
        out
    }

    /// `rows cols` header followed by one `row col value` line per nonzero
    /// entry, 0-indexed.
    pub fn to_triplets(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            writeln!(s, "{i} {j} {v}").expect("writing to a String cannot fail");
        }
        s
    }

    /// Parses `row col value` lines. A leading line with exactly two
    /// numbers fixes the dimensions; otherwise they are inferred from the
    /// largest indices. Blank lines and `#` comments are ignored.
    pub fn from_triplets(text: &str) -> Result<IntMatrix, MatrixError> {
        let mut dims: Option<(usize, usize)> = None;
        let mut triples = Vec::new();
        let mut seen_data = false;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| MatrixError::Parse {
                line: n + 1,
                msg: msg.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.len() {
                2 if !seen_data && dims.is_none() => {
                    let r = fields[0].parse().map_err(|_| err("bad row count"))?;
                    let c = fields[1].parse().map_err(|_| err("bad column count"))?;
                    dims = Some((r, c));
                }
                3 => {
                    let i: usize = fields[0].parse().map_err(|_| err("bad row index"))?;
                    let j: usize = fields[1].parse().map_err(|_| err("bad column index"))?;
                    let v: BigInt = fields[2].parse().map_err(|_| err("bad value"))?;
                    triples.push((n + 1, i, j, v));
                    seen_data = true;
                }
                _ => return Err(err("expected `row col value`")),
            }
        }
        let (rows, cols) = dims.unwrap_or_else(|| {
            let r = triples.iter().map(|t| t.1 + 1).max().unwrap_or(0);
            let c = triples.iter().map(|t| t.2 + 1).max().unwrap_or(0);
            (r, c)
        });
        let mut m = IntMatrix::zeros(rows, cols);
        for (line, i, j, v) in triples {
            if i >= rows || j >= cols {
                return Err(MatrixError::Parse {
                    line,
                    msg: "index outside the declared shape".into(),
                });
            }
            m.add_to(i, j, &v);
        }
        Ok(m)
    }
}
