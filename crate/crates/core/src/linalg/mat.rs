use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::Rat;

/// Dense matrix over the rationals, row-major storage. Vectors are rows and
/// matrices act on them from the right: `w = v * m`.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        assert!(!rows.is_empty(), "empty row list");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        Mat {
            rows: nrows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Test helper: build from integer literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn row_vector(v: Vec<Rat>) -> Self {
        let cols = v.len();
        Mat {
            rows: 1,
            cols,
            entries: v,
        }
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

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_to_vec(&self, i: usize) -> Vec<Rat> {
        self.row(i).to_vec()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.entries.iter().enumerate().all(|(k, e)| {
                let (i, j) = (k / self.cols, k % self.cols);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut t = Rat::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// `v * self` for a row vector `v`.
    pub fn apply_row(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.rows, "row-vector length mismatch");
        let mut out = vec![Rat::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let e = &self[(i, j)];
                if !e.is_zero() {
                    out[j] += &(vi * e);
                }
            }
        }
        out
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work[(r, col)].is_zero())?;
            if pivot != col {
                work.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = work[(col, col)].clone();
            if !p.is_one() {
                let pinv = p.recip();
                work.scale_row(col, &pinv);
                inv.scale_row(col, &pinv);
            }
            for r in 0..n {
                if r != col && !work[(r, col)].is_zero() {
                    let f = work[(r, col)].clone();
                    work.sub_scaled_row(r, col, &f);
                    inv.sub_scaled_row(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Determinant via exact Gaussian elimination.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !work[(r, col)].is_zero()) {
                Some(p) => p,
                None => return Rat::zero(),
            };
            if pivot != col {
                work.swap_rows(pivot, col);
                det = -det;
            }
            let p = work[(col, col)].clone();
            det *= &p;
            let pinv = p.recip();
            for r in col + 1..n {
                if !work[(r, col)].is_zero() {
                    let f = &work[(r, col)] * &pinv;
                    work.sub_scaled_row(r, col, &f);
                }
            }
        }
        det
    }

    /// Integer power, negative exponents via the inverse. Panics if the
    /// matrix is singular and `e < 0`.
    pub fn pow(&self, e: i64) -> Mat {
        assert!(self.is_square(), "power of non-square matrix");
        if e == 0 {
            return Mat::identity(self.rows);
        }
        let base = if e < 0 {
            self.inverse().expect("pow of singular matrix")
        } else {
            self.clone()
        };
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// `x^y = y^-1 * x * y`.
    pub fn conj(&self, by: &Mat) -> Mat {
        let byinv = by.inverse().expect("conjugation by singular matrix");
        &(&byinv * self) * by
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, c: &Rat) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            let val = &self.entries[idx] * c;
            self.entries[idx] = val;
        }
    }

    /// row[r] -= c * row[src]
    pub(crate) fn sub_scaled_row(&mut self, r: usize, src: usize, c: &Rat) {
        for j in 0..self.cols {
            let v = &self.entries[src * self.cols + j] * c;
            let idx = r * self.cols + j;
            self.entries[idx] -= &v;
        }
    }

    /// Writes `block` into `self` with top-left corner at `(row, col)`.
    pub fn insert_block(&mut self, block: &Mat, row: usize, col: usize) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Mat {
        assert!(row + rows <= self.rows && col + cols <= self.cols);
        Mat::from_fn(rows, cols, |i, j| self[(row + i, col + j)].clone())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack width mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Joins `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack height mismatch");
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }
}

/// Kronecker product in the row-major block convention:
/// `(a ⊗ b)[(i,k),(j,l)] = a[i,j] * b[k,l]`.
pub fn kronecker(a: &Mat, b: &Mat) -> Mat {
    Mat::from_fn(a.rows * b.rows, a.cols * b.cols, |r, c| {
        let (i, k) = (r / b.rows, r % b.rows);
        let (j, l) = (c / b.cols, c % b.cols);
        &a[(i, j)] * &b[(k, l)]
    })
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct MatVisitor;

        impl<'de> Visitor<'de> for MatVisitor {
            type Value = Mat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-empty rectangular array of rationals")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Mat, A::Error> {
                let mut rows: Vec<Vec<Rat>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<Rat>>()? {
                    rows.push(row);
                }
                if rows.is_empty() {
                    return Err(de::Error::custom("empty matrix"));
                }
                let cols = rows[0].len();
                if rows.iter().any(|r| r.len() != cols) {
                    return Err(de::Error::custom("ragged matrix rows"));
                }
                Ok(Mat::from_rows(rows))
            }
        }

        deserializer.deserialize_seq(MatVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_inverse() {
        let m = Mat::from_i64(&[&[1, 1], &[0, 1]]);
        let minv = m.inverse().unwrap();
        assert_eq!(minv, Mat::from_i64(&[&[1, -1], &[0, 1]]));
        assert!((&m * &minv).is_identity());
        assert!(!Mat::from_i64(&[&[1, 2], &[2, 4]]).is_invertible());
    }

    #[test]
    fn pow_negative() {
        let m = Mat::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(m.pow(-2), Mat::from_i64(&[&[1, -2], &[0, 1]]));
        assert!(m.pow(0).is_identity());
    }

    #[test]
    fn kron_identity() {
        let k = kronecker(&Mat::identity(2), &Mat::identity(2));
        assert!(k.is_identity());
        assert_eq!(k.rows(), 4);

        let u = Mat::from_i64(&[&[1, 1], &[0, 1]]);
        let k2 = kronecker(&u, &Mat::identity(2));
        let off_diag_ones = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && k2[(i, j)].is_one())
            .count();
        assert_eq!(off_diag_ones, 2);
    }

    #[test]
    fn row_action_matches_product() {
        let m = Mat::from_i64(&[&[2, 3], &[5, 7]]);
        let v = vec![Rat::from_int(1), Rat::from_int(-1)];
        let out = m.apply_row(&v);
        assert_eq!(out, vec![Rat::from_int(-3), Rat::from_int(-4)]);
    }

    #[test]
    fn det_examples() {
        assert_eq!(Mat::identity(3).det(), Rat::one());
        let m = Mat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), Rat::from_int(-1));
    }

    #[test]
    fn serde_nested_arrays() {
        let m = Mat::from_rows(vec![
            vec![Rat::new(1, 2), Rat::from_int(3)],
            vec![Rat::zero(), Rat::from_int(-1)],
        ]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["1/2","3"],["0","-1"]]"#);
        let back: Mat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
