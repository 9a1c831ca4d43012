//! Small dense matrices over a [`FiniteField`], stored inline so they can be
//! hashed and copied as group elements.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Fe, FiniteField};
use crate::group::{closure_labeled, Enumerated};
use crate::{Error, Result};

pub const MAX_DIM: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: u8,
    cols: u8,
    data: [Fe; MAX_DIM * MAX_DIM],
}

pub type MatrixGroup = Enumerated<Matrix>;

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&show(self))
    }
}

fn show(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let row: Vec<String> = (0..m.cols()).map(|j| format!("{}", m[(i, j)])).collect();
            format!("[{}]", row.join(" "))
        })
        .collect();
    format!("[{}]", rows.join(" "))
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Fe;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        &self.data[i * MAX_DIM + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        &mut self.data[i * MAX_DIM + j]
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        assert!(rows <= MAX_DIM && cols <= MAX_DIM, "matrix dimension exceeds {MAX_DIM}");
        Matrix { rows: rows as u8, cols: cols as u8, data: [Fe::ZERO; MAX_DIM * MAX_DIM] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Fe::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[Fe]]) -> Matrix {
        let mut m = Matrix::zero(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Fe) -> Matrix {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows as usize
    }

    pub fn cols(&self) -> usize {
        self.cols as usize
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols(), self.rows(), |i, j| self[(j, i)])
    }

    /// Top-left `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn map(&self, f: impl Fn(Fe) -> Fe) -> Matrix {
        Matrix::from_fn(self.rows(), self.cols(), |i, j| f(self[(i, j)]))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rows()).all(|i| (0..self.cols()).all(|j| self[(i, j)] == Fe::ZERO))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows()).all(|i| {
                (0..=i).all(|j| self[(i, j)] == if i == j { Fe::ONE } else { Fe::ZERO })
            })
    }
}

pub fn mul(f: &FiniteField, a: &Matrix, b: &Matrix) -> Matrix {
    debug_assert_eq!(a.cols(), b.rows());
    let mut c = Matrix::zero(a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = a[(i, k)];
            if x == Fe::ZERO {
                continue;
            }
            for j in 0..b.cols() {
                c[(i, j)] = f.add(c[(i, j)], f.mul(x, b[(k, j)]));
            }
        }
    }
    c
}

pub fn add(f: &FiniteField, a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| f.add(a[(i, j)], b[(i, j)]))
}

pub fn sub(f: &FiniteField, a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| f.sub(a[(i, j)], b[(i, j)]))
}

pub fn neg(f: &FiniteField, a: &Matrix) -> Matrix {
    a.map(|x| f.neg(x))
}

pub fn scale(f: &FiniteField, c: Fe, a: &Matrix) -> Matrix {
    a.map(|x| f.mul(c, x))
}

/// Entrywise field conjugation.
pub fn conj(f: &FiniteField, a: &Matrix) -> Result<Matrix> {
    if !f.has_conjugation() {
        return Err(Error::OddDegree(f.degree()));
    }
    Ok(a.map(|x| f.conj(x).expect("even degree checked")))
}

/// Row reduction; returns `(rank, determinant)` (determinant only for
/// square input, otherwise zero).
fn eliminate(f: &FiniteField, a: &Matrix) -> (usize, Fe) {
    let mut m = *a;
    let (rows, cols) = (m.rows(), m.cols());
    let mut det = Fe::ONE;
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[(r, c)] != Fe::ZERO) else {
            det = Fe::ZERO;
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                let t = m[(pivot, j)];
                m[(pivot, j)] = m[(rank, j)];
                m[(rank, j)] = t;
            }
            det = f.neg(det);
        }
        let pv = m[(rank, c)];
        det = f.mul(det, pv);
        let pinv = f.inv(pv).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let factor = f.mul(m[(r, c)], pinv);
            if factor == Fe::ZERO {
                continue;
            }
            for j in c..cols {
                m[(r, j)] = f.sub(m[(r, j)], f.mul(factor, m[(rank, j)]));
            }
        }
        rank += 1;
    }
    if rows != cols || rank < rows {
        det = Fe::ZERO;
    }
    (rank, det)
}

pub fn rank(f: &FiniteField, a: &Matrix) -> usize {
    eliminate(f, a).0
}

pub fn det(f: &FiniteField, a: &Matrix) -> Fe {
    assert!(a.is_square(), "determinant of a non-square matrix");
    eliminate(f, a).1
}

/// Gauss-Jordan inverse; `None` for singular matrices.
pub fn inverse(f: &FiniteField, a: &Matrix) -> Option<Matrix> {
    assert!(a.is_square(), "inverse of a non-square matrix");
    let n = a.rows();
    let mut m = *a;
    let mut inv = Matrix::identity(n);
    for c in 0..n {
        let pivot = (c..n).find(|&r| m[(r, c)] != Fe::ZERO)?;
        if pivot != c {
            for j in 0..n {
                let (t, u) = (m[(pivot, j)], inv[(pivot, j)]);
                m[(pivot, j)] = m[(c, j)];
                inv[(pivot, j)] = inv[(c, j)];
                m[(c, j)] = t;
                inv[(c, j)] = u;
            }
        }
        let pinv = f.inv(m[(c, c)])?;
        for j in 0..n {
            m[(c, j)] = f.mul(m[(c, j)], pinv);
            inv[(c, j)] = f.mul(inv[(c, j)], pinv);
        }
        for r in 0..n {
            if r == c || m[(r, c)] == Fe::ZERO {
                continue;
            }
            let factor = m[(r, c)];
            for j in 0..n {
                m[(r, j)] = f.sub(m[(r, j)], f.mul(factor, m[(c, j)]));
                inv[(r, j)] = f.sub(inv[(r, j)], f.mul(factor, inv[(c, j)]));
            }
        }
    }
    Some(inv)
}

/// `I + c E_ij`.
pub fn elementary(n: usize, i: usize, j: usize, c: Fe) -> Matrix {
    let mut m = Matrix::identity(n);
    m[(i, j)] = c;
    m
}

/// Block diagonal matrix with square blocks.
pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
    let n = blocks.iter().map(|b| b.rows()).sum();
    let mut m = Matrix::zero(n, n);
    let mut at = 0;
    for b in blocks {
        m.set_block(at, at, b);
        at += b.rows();
    }
    m
}

/// Group generated by invertible matrices under multiplication.
pub fn matrix_group(
    f: &Arc<FiniteField>,
    n: usize,
    gens: &[Matrix],
    budget: usize,
) -> Result<MatrixGroup> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::InvalidParameter(format!("matrix dimension {n} outside 1..={MAX_DIM}")));
    }
    for g in gens {
        if g.rows() != n || !g.is_square() || det(f, g) == Fe::ZERO {
            return Err(Error::InvalidParameter(format!("{g:?} is not an invertible {n}x{n} matrix")));
        }
    }
    let (fm, fi) = (f.clone(), f.clone());
    closure_labeled(
        gens,
        Matrix::identity(n),
        move |a, b| mul(&fm, a, b),
        move |a| inverse(&fi, a).expect("group elements are invertible"),
        budget,
        show,
    )
}

/// Additive group of matrices generated by `gens`.
pub fn additive_group(
    f: &Arc<FiniteField>,
    rows: usize,
    cols: usize,
    gens: &[Matrix],
    budget: usize,
) -> Result<MatrixGroup> {
    let (fa, fn_) = (f.clone(), f.clone());
    closure_labeled(
        gens,
        Matrix::zero(rows, cols),
        move |a, b| add(&fa, a, b),
        move |a| neg(&fn_, a),
        budget,
        show,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    #[test]
    fn inverse_and_determinant() {
        let f = FiniteField::new(3, 1).unwrap();
        let a = Matrix::from_rows(&[&[Fe(1), Fe(2)], &[Fe(0), Fe(2)]]);
        assert_eq!(det(&f, &a), Fe(2));
        let ai = inverse(&f, &a).unwrap();
        assert_eq!(mul(&f, &a, &ai), Matrix::identity(2));
        let singular = Matrix::from_rows(&[&[Fe(1), Fe(2)], &[Fe(2), Fe(1)]]);
        assert_eq!(det(&f, &singular), Fe::ZERO);
        assert!(inverse(&f, &singular).is_none());
        assert_eq!(rank(&f, &singular), 1);
    }

    #[test]
    fn sl2_f3_from_transvections() {
        let f = FiniteField::new(3, 1).unwrap();
        let g = matrix_group(
            &f,
            2,
            &[elementary(2, 0, 1, Fe::ONE), elementary(2, 1, 0, Fe::ONE)],
            1000,
        )
        .unwrap();
        assert_eq!(g.order(), 24);
        // oracle: every 2x2 matrix over F_3 with determinant 1
        let mut count = 0;
        for code in 0..81u32 {
            let e = |k: u32| Fe(((code / 3u32.pow(k)) % 3) as u8);
            let m = Matrix::from_rows(&[&[e(0), e(1)], &[e(2), e(3)]]);
            if det(&f, &m) == Fe::ONE {
                count += 1;
                assert!(g.index_of(&m).is_some());
            }
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn gl2_f3_by_filter() {
        let f = FiniteField::new(3, 1).unwrap();
        let mut count = 0;
        for code in 0..81u32 {
            let e = |k: u32| Fe(((code / 3u32.pow(k)) % 3) as u8);
            let m = Matrix::from_rows(&[&[e(0), e(1)], &[e(2), e(3)]]);
            if det(&f, &m) != Fe::ZERO {
                count += 1;
            }
        }
        assert_eq!(count, 48);
    }

    #[test]
    fn determinant_is_multiplicative() {
        let f = FiniteField::new(2, 2).unwrap();
        let a = Matrix::from_fn(3, 3, |i, j| Fe(((i * 3 + j * 2 + 1) % 4) as u8));
        let b = Matrix::from_fn(3, 3, |i, j| Fe(((i + j * j + 2) % 4) as u8));
        assert_eq!(det(&f, &mul(&f, &a, &b)), f.mul(det(&f, &a), det(&f, &b)));
    }
}
