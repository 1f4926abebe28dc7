use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntLinError;

/// Sparse integer matrix; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    /// From row-major nested vectors; all rows must have equal length.
    pub fn from_dense<T: Clone + Into<BigInt>>(data: &[Vec<T>]) -> Self {
        let cols = data.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(data.len(), cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    /// Duplicate coordinates are summed.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Result<Self, IntLinError> {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, j, v) in triples {
            if i >= rows || j >= cols {
                return Err(IntLinError::IndexOutOfRange { row: i, col: j, rows, cols });
            }
            m.add_to(i, j, &v);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) outside {}x{}", self.rows, self.cols);
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

    /// Non-zero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.entries.range((i, 0)..(i + 1, 0)).map(|(&(_, j), v)| (j, v))
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (i, c, v) in self.entries() {
            if c == j {
                out[i] = v.clone();
            }
        }
        out
    }

    /// Entries grouped by column: `result[j]` lists `(row, value)` ascending.
    pub fn columns(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            out[j].push((i, v.clone()));
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    pub fn try_mul(&self, other: &IntMatrix) -> Result<IntMatrix, IntLinError> {
        if self.cols != other.rows {
            return Err(IntLinError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let by_row: Vec<Vec<(usize, &BigInt)>> = {
            let mut r = vec![Vec::new(); other.rows];
            for (i, j, v) in other.entries() {
                r[i].push((j, v));
            }
            r
        };
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (i, k, a) in self.entries() {
            for &(j, b) in &by_row[k] {
                *acc.entry((i, j)).or_default() += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(IntMatrix { rows: self.rows, cols: other.cols, entries: acc })
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length");
        let mut out = vec![BigInt::zero(); self.rows];
        for (i, j, v) in self.entries() {
            if !x[j].is_zero() {
                out[i] += v * &x[j];
            }
        }
        out
    }

    /// `result[perm_r[i]][perm_c[j]] = self[i][j]`.
    pub fn permute(&self, perm_r: &[usize], perm_c: &[usize]) -> IntMatrix {
        assert_eq!(perm_r.len(), self.rows);
        assert_eq!(perm_c.len(), self.cols);
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&(i, j), v)| ((perm_r[i], perm_c[j]), v.clone())).collect(),
        }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> IntMatrix {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        IntMatrix {
            rows: self.rows,
            cols: keep.len(),
            entries: self
                .entries
                .iter()
                .filter_map(|(&(i, j), v)| pos.get(&j).map(|&nj| ((i, nj), v.clone())))
                .collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, IntLinError> {
        if self.rows != self.cols {
            return Err(IntLinError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Coordinate text: optional `%` comment lines, a `rows cols nnz` header,
    /// then one `row col value` line per entry with 1-based indices.
    pub fn to_text(&self) -> String {
        let mut out = String::from("%%MatrixMarket matrix coordinate integer general\n");
        let _ = writeln!(out, "{} {} {}", self.rows, self.cols, self.nnz());
        for (i, j, v) in self.entries() {
            let _ = writeln!(out, "{} {} {}", i + 1, j + 1, v);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<IntMatrix, IntLinError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
        let parse_err = |line: usize, message: &str| IntLinError::Parse { line, message: message.to_string() };
        let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(hline, "header must be `rows cols nnz`")))
            .collect::<Result<_, _>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(parse_err(hline, "header must be `rows cols nnz`"));
        };
        let mut m = IntMatrix::zeros(rows, cols);
        let mut count = 0;
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts[..] else {
                return Err(parse_err(ln, "expected `row col value`"));
            };
            let r: usize = r.parse().map_err(|_| parse_err(ln, "bad row index"))?;
            let c: usize = c.parse().map_err(|_| parse_err(ln, "bad column index"))?;
            let v: BigInt = v.parse().map_err(|_| parse_err(ln, "bad integer value"))?;
            if r == 0 || c == 0 || r > rows || c > cols {
                return Err(parse_err(ln, "index out of range"));
            }
            if m.entries.contains_key(&(r - 1, c - 1)) {
                return Err(parse_err(ln, "duplicate entry"));
            }
            m.set(r - 1, c - 1, v);
            count += 1;
        }
        if count != nnz {
            return Err(parse_err(hline, &format!("header announces {nnz} entries, found {count}")));
        }
        Ok(m)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimensions")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(&a * &b, IntMatrix::from_dense(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.det().unwrap(), BigInt::from(-2));
        assert!(b.is_unimodular());
        assert_eq!(a.mul_vec(&[BigInt::from(1), BigInt::from(-1)]), vec![BigInt::from(-1), BigInt::from(-1)]);
        assert!(a.try_mul(&IntMatrix::zeros(3, 1)).is_err());
        assert_eq!(a.transpose().get(0, 1), BigInt::from(3));
    }

    #[test]
    fn zeros_are_not_stored() {
        let mut m = IntMatrix::zeros(2, 2);
        m.set(0, 0, BigInt::from(5));
        m.add_to(0, 0, &BigInt::from(-5));
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let a = IntMatrix::from_dense(&[vec![2, -1, 0], vec![0, 3, 4], vec![5, 0, -2]]);
        // 2(3*-2 - 0) - (-1)(0 - 20) + 0 = -12 - 20
        assert_eq!(a.det().unwrap(), BigInt::from(-32));
        let singular = IntMatrix::from_dense(&[vec![0, 1], vec![0, 2]]);
        assert_eq!(singular.det().unwrap(), BigInt::zero());
    }

    #[test]
    fn text_round_trip() {
        let a = IntMatrix::from_dense(&[vec![0, -7, 0], vec![12345678901234567890i128, 0, 1]]);
        let text = a.to_text();
        assert_eq!(IntMatrix::from_text(&text).unwrap(), a);
        assert!(IntMatrix::from_text("2 2 1\n3 1 4\n").is_err());
        assert!(IntMatrix::from_text("2 2 2\n1 1 4\n").is_err());
    }
}
