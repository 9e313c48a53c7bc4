use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::mat::Mat;
use super::rat::Rat;

/// Reduced row-echelon form and rank, computed exactly.
pub fn rref(m: &Mat) -> (Mat, usize) {
    let mut work = m.clone();
    let rank = rref_in_place(&mut work);
    (work, rank)
}

pub(crate) fn rref_in_place(work: &mut Mat) -> usize {
    let (rows, cols) = (work.rows(), work.cols());
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let pivot = match (pivot_row..rows).find(|&r| !work[(r, col)].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        work.swap_rows(pivot, pivot_row);
        let p = work[(pivot_row, col)].clone();
        if !p.is_one() {
            work.scale_row(pivot_row, &p.recip());
        }
        for r in 0..rows {
            if r != pivot_row && !work[(r, col)].is_zero() {
                let f = work[(r, col)].clone();
                work.sub_scaled_row(r, pivot_row, &f);
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("sub is not contained in ambient")]
    NotContained,
}

/// Linear subspace of row vectors, canonically represented by its reduced
/// row-echelon basis. Two subspaces are equal iff their bases are identical.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::from_rows(
            ambient_dim,
            (0..ambient_dim)
                .map(|i| {
                    let mut v = vec![Rat::zero(); ambient_dim];
                    v[i] = Rat::one();
                    v
                })
                .collect(),
        )
    }

    /// Span of the given row vectors.
    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<Rat>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ambient_dim));
        if rows.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let mut m = Mat::from_rows(rows);
        let rank = rref_in_place(&mut m);
        let basis = (0..rank).map(|i| m.row_to_vec(i)).collect();
        Subspace { ambient_dim, basis }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Mat) -> Self {
        Subspace::from_rows(m.cols(), (0..m.rows()).map(|i| m.row_to_vec(i)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis_rows(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Basis rows stacked into a `dim x ambient_dim` matrix.
    pub fn basis_mat(&self) -> Mat {
        assert!(!self.basis.is_empty(), "basis of the zero subspace");
        Mat::from_rows(self.basis.clone())
    }

    /// Reduces `v` against the RREF basis, returning the remainder.
    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|e| !e.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let f = v[pivot].clone();
                for (vj, rj) in v.iter_mut().zip(row) {
                    *vj -= &(&f * rj);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        self.reduce(v).iter().all(Rat::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::from_rows(self.ambient_dim, rows)
    }

    /// Zassenhaus intersection: row-reduce [B1 B1; B2 0] and read the
    /// intersection from rows whose left half vanished.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let n = self.ambient_dim;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(n);
        }
        let total = self.dim() + other.dim();
        let mut block = Mat::zero(total, 2 * n);
        for (i, row) in self.basis.iter().enumerate() {
            for j in 0..n {
                block[(i, j)] = row[j].clone();
                block[(i, n + j)] = row[j].clone();
            }
        }
        for (i, row) in other.basis.iter().enumerate() {
            for j in 0..n {
                block[(self.dim() + i, j)] = row[j].clone();
            }
        }
        rref_in_place(&mut block);
        let mut rows = Vec::new();
        for i in 0..total {
            let left_zero = (0..n).all(|j| block[(i, j)].is_zero());
            let right = (n..2 * n)
                .map(|j| block[(i, j)].clone())
                .collect::<Vec<_>>();
            if left_zero && right.iter().any(|e| !e.is_zero()) {
                rows.push(right);
            }
        }
        Subspace::from_rows(n, rows)
    }

    /// Image of the subspace under `v -> v * m`.
    pub fn apply(&self, m: &Mat) -> Subspace {
        Subspace::from_rows(
            m.cols(),
            self.basis.iter().map(|v| m.apply_row(v)).collect(),
        )
    }
}

/// Kernel `{x : m x = 0}` of the column action, returned as row vectors.
pub fn kernel(m: &Mat) -> Subspace {
    let (r, rank) = rref(m);
    let cols = m.cols();
    let mut pivots = Vec::with_capacity(rank);
    for i in 0..rank {
        let p = (0..cols).find(|&j| !r[(i, j)].is_zero()).unwrap();
        pivots.push(p);
    }
    let free: Vec<usize> = (0..cols).filter(|j| !pivots.contains(j)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -&r[(i, f)];
        }
        basis.push(v);
    }
    Subspace::from_rows(cols, basis)
}

/// Kernel of the row action, `{v : v m = 0}`.
pub fn left_kernel(m: &Mat) -> Subspace {
    kernel(&m.transpose())
}

/// Image of the row action, `{v m : v}` = row space of `m`.
pub fn image(m: &Mat) -> Subspace {
    Subspace::row_space(m)
}

/// Fixed space `{x : m x = x}` = kernel(m - 1). Requires square `m`.
pub fn fixed_space(m: &Mat) -> Result<Subspace, SubspaceError> {
    if !m.is_square() {
        return Err(SubspaceError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(kernel(&(m - &Mat::identity(m.rows()))))
}

/// Solves `a * x = b` for `x`; `None` when the system is inconsistent.
pub fn solve_right(a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows(), b.rows(), "solve_right shape mismatch");
    let aug = a.hstack(b);
    let (r, _) = rref(&aug);
    let (n, w) = (a.cols(), b.cols());
    let mut x = Mat::zero(n, w);
    for i in 0..r.rows() {
        let lead = (0..n + w).find(|&j| !r[(i, j)].is_zero());
        match lead {
            None => continue,
            Some(j) if j >= n => return None, // 0 = nonzero row
            Some(j) => {
                for k in 0..w {
                    x[(j, k)] = r[(i, n + k)].clone();
                }
            }
        }
    }
    Some(x)
}

/// Completes `sub` to a basis of `ambient`. Returns the complement rows and
/// the projection matrix `P` (ambient-space columns x complement count) such
/// that for `v` in `ambient`, `v * P` is the class of `v` in complement
/// coordinates. `P` kills `sub` and is a left inverse of the complement rows.
pub fn quotient_basis(
    ambient: &Subspace,
    sub: &Subspace,
) -> Result<(Vec<Vec<Rat>>, Mat), SubspaceError> {
    if ambient.ambient_dim() != sub.ambient_dim() {
        return Err(SubspaceError::AmbientMismatch(
            ambient.ambient_dim(),
            sub.ambient_dim(),
        ));
    }
    if !ambient.contains_subspace(sub) {
        return Err(SubspaceError::NotContained);
    }
    let n = ambient.ambient_dim();
    let mut acc = sub.clone();
    let mut complement: Vec<Vec<Rat>> = Vec::new();
    for v in ambient.basis_rows() {
        let reduced = Subspace::from_rows(n, {
            let mut rows: Vec<Vec<Rat>> = acc.basis_rows().to_vec();
            rows.extend(complement.iter().cloned());
            rows.push(v.clone());
            rows
        });
        if reduced.dim() > acc.dim() + complement.len() {
            complement.push(v.clone());
        }
        if acc.dim() + complement.len() == ambient.dim() {
            acc = ambient.clone();
            break;
        }
    }
    let _ = acc;
    let w = complement.len();
    debug_assert_eq!(w, ambient.dim() - sub.dim());
    if w == 0 {
        return Ok((complement, Mat::zero(n, 0)));
    }
    // Solve B * P = [0; I] with B the rows of sub followed by the complement.
    let mut rows: Vec<Vec<Rat>> = sub.basis_rows().to_vec();
    rows.extend(complement.iter().cloned());
    let b = Mat::from_rows(rows);
    let mut rhs = Mat::zero(b.rows(), w);
    for k in 0..w {
        rhs[(sub.dim() + k, k)] = Rat::one();
    }
    let p = solve_right(&b, &rhs).expect("independent rows always admit a projection");
    Ok((complement, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        v
    }

    #[test]
    fn rref_examples() {
        let (r, rank) = rref(&Mat::identity(3));
        assert!(r.is_identity());
        assert_eq!(rank, 3);

        let (z, zrank) = rref(&Mat::zero(2, 5));
        assert!(z.is_zero());
        assert_eq!(zrank, 0);

        let (_, prank) = rref(&Mat::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(prank, 1);
    }

    #[test]
    fn rref_idempotent() {
        let m = Mat::from_i64(&[&[2, 4, 1], &[1, 2, 3], &[3, 6, 4]]);
        let (r1, _) = rref(&m);
        let (r2, _) = rref(&r1);
        assert_eq!(r1, r2);
    }

    #[test]
    fn kernel_rank_nullity() {
        let m = Mat::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let (_, rank) = rref(&m);
        let k = kernel(&m);
        assert_eq!(rank + k.dim(), m.cols());
        for v in k.basis_rows() {
            let prod = m.transpose().apply_row(v); // m * v^T as rows of m^T acted on
            assert!(prod.iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn fixed_space_unipotent() {
        let m = Mat::from_i64(&[&[1, 1], &[0, 1]]);
        let f = fixed_space(&m).unwrap();
        assert_eq!(f, Subspace::from_rows(2, vec![e(2, 0)]));
        assert!(fixed_space(&Mat::zero(2, 3)).is_err());
        assert!(fixed_space(&Mat::identity(4)).unwrap().is_full());
    }

    #[test]
    fn image_of_rank_one_nilpotent() {
        let m = Mat::from_i64(&[&[1, 1], &[0, 1]]);
        let nil = &m - &Mat::identity(2);
        let im = image(&nil);
        assert_eq!(im, Subspace::from_rows(2, vec![e(2, 1)]));
    }

    #[test]
    fn sum_intersect_dims() {
        let s1 = Subspace::from_rows(3, vec![e(3, 0)]);
        let s2 = Subspace::from_rows(3, vec![e(3, 1)]);
        assert!(s1.intersect(&s2).is_zero());

        let s3 = Subspace::from_rows(3, vec![vec![Rat::one(), Rat::one(), Rat::zero()]]);
        assert_eq!(s1.sum(&s3).dim(), 2);

        // dim(s1) + dim(s2) = dim(sum) + dim(intersection)
        let a = Subspace::from_rows(3, vec![e(3, 0), e(3, 1)]);
        let b = Subspace::from_rows(3, vec![e(3, 1), e(3, 2)]);
        assert_eq!(a.dim() + b.dim(), a.sum(&b).dim() + a.intersect(&b).dim());
        assert_eq!(a.intersect(&b), Subspace::from_rows(3, vec![e(3, 1)]));
    }

    #[test]
    fn solve_right_consistent_and_not() {
        let a = Mat::from_i64(&[&[1, 2], &[2, 4]]);
        let b = Mat::from_i64(&[&[3], &[6]]);
        let x = solve_right(&a, &b).unwrap();
        assert_eq!(&a * &x, b);

        let b_bad = Mat::from_i64(&[&[3], &[7]]);
        assert!(solve_right(&a, &b_bad).is_none());
    }

    #[test]
    fn quotient_of_three_dim_by_one() {
        let ambient = Subspace::full(3);
        let sub = Subspace::from_rows(3, vec![e(3, 0)]);
        let (complement, proj) = quotient_basis(&ambient, &sub).unwrap();
        assert_eq!(complement.len(), 2);
        // projection kills the sub and is a left inverse on the complement
        assert!(proj.apply_row(&e(3, 0)).iter().all(Rat::is_zero));
        for (k, c) in complement.iter().enumerate() {
            let coords = proj.apply_row(c);
            for (j, v) in coords.iter().enumerate() {
                assert_eq!(v.is_one(), j == k);
            }
        }
        // sub not contained in a smaller ambient -> error
        let small = Subspace::from_rows(3, vec![e(3, 1)]);
        assert_eq!(
            quotient_basis(&small, &sub).unwrap_err(),
            SubspaceError::NotContained
        );
    }
}
