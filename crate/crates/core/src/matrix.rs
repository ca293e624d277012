//! Matrices of rational expressions and exact linear algebra.
//!
//! Determinants of polynomial matrices use fraction-free Bareiss elimination
//! above size 4 (intermediate divisions are exact, which keeps expression
//! swell under control); small or properly rational matrices use cofactor
//! expansion. Linear systems are solved by Cramer's rule over the
//! rational-function field. Numeric (rational-valued) rank and kernel run
//! exact Gaussian elimination.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ratexpr::RationalExpr;
use crate::rational::BigRational;
use crate::vars::VarId;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalExpr>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RationalExpr>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        PolyMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![RationalExpr::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, RationalExpr::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RationalExpr) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &RationalExpr {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: RationalExpr) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        PolyMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RationalExpr::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix by zero-based inclusive index lists.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }

    pub fn is_polynomial(&self) -> bool {
        self.entries.iter().all(|e| e.is_polynomial())
    }

    /// Exact determinant. Polynomial matrices above size 4 go through
    /// fraction-free Bareiss elimination; everything else is cofactor
    /// expansion.
    pub fn det(&self) -> Result<RationalExpr> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.is_polynomial() && self.rows > 4 {
            self.det_via_bareiss()
        } else {
            self.det_via_cofactor()
        }
    }

    /// Cofactor expansion along the first row. Public so cross-checks can
    /// force this code path.
    pub fn det_via_cofactor(&self) -> Result<RationalExpr> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(det_cofactor(self))
    }

    /// Fraction-free Bareiss elimination; requires polynomial entries. Public
    /// so cross-checks can force this code path.
    pub fn det_via_bareiss(&self) -> Result<RationalExpr> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        assert!(self.is_polynomial(), "Bareiss path requires polynomial entries");
        let grid: Vec<Vec<MultiPoly>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).num().clone()).collect())
            .collect();
        Ok(RationalExpr::from_poly(det_bareiss(grid)))
    }

    /// Solves A x = rhs by Cramer's rule over the rational-function field.
    pub fn cramer_solve(&self, rhs: &[RationalExpr]) -> Result<Vec<RationalExpr>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let d = self.det()?;
        if d.is_zero() {
            return Err(Error::SingularSystem);
        }
        let mut sol = Vec::with_capacity(self.rows);
        for col in 0..self.cols {
            let mut replaced = self.clone();
            for i in 0..self.rows {
                replaced.set(i, col, rhs[i].clone());
            }
            sol.push(replaced.det()?.div(&d)?);
        }
        Ok(sol)
    }
}

fn det_cofactor(m: &PolyMatrix) -> RationalExpr {
    let n = m.rows();
    match n {
        0 => return RationalExpr::one(),
        1 => return m.get(0, 0).clone(),
        _ => {}
    }
    let mut acc = RationalExpr::zero();
    for j in 0..n {
        let entry = m.get(0, j);
        if entry.is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = det_cofactor(&m.select(&rows, &cols));
        let signed = if j % 2 == 0 { minor } else { minor.neg() };
        acc = acc.add(&entry.mul(&signed));
    }
    acc
}

fn det_bareiss(mut a: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign = 1i64;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        for row in a.iter_mut().skip(k + 1) {
            row[k] = MultiPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Exact rank of the Jacobian matrix (df_l / dv_m) evaluated at a rational
/// point. Fails with `DenominatorVanishes` when any denominator does, so the
/// caller can resample.
pub fn jacobian_rank_at(
    fs: &[RationalExpr],
    vars: &[VarId],
    point: &BTreeMap<VarId, BigRational>,
) -> Result<usize> {
    let mut grid = Vec::with_capacity(fs.len());
    for f in fs {
        let q = f.den().eval(point)?;
        if q.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        let p = f.num().eval(point)?;
        let mut row = Vec::with_capacity(vars.len());
        for &v in vars {
            let pv = f.num().partial(v).eval(point)?;
            let qv = f.den().partial(v).eval(point)?;
            row.push((&pv * &q - &p * &qv) / (&q * &q));
        }
        grid.push(row);
    }
    Ok(rational_rank(grid))
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rational_rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(r) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, r);
        let inv = a[pivot_row][col].clone().recip();
        for c in col..cols {
            let scaled = &a[pivot_row][c] * &inv;
            a[pivot_row][c] = scaled;
        }
        for r2 in 0..rows {
            if r2 != pivot_row && !a[r2][col].is_zero() {
                let factor = a[r2][col].clone();
                for c in col..cols {
                    let delta = &a[pivot_row][c] * &factor;
                    a[r2][c] = &a[r2][c] - &delta;
                }
            }
        }
        pivot_row += 1;
        rank += 1;
        if pivot_row == rows {
            break;
        }
    }
    rank
}

/// Basis of the right kernel { x : A x = 0 } of a rational matrix, via
/// reduced row echelon form. The basis is canonical: one vector per free
/// column, with a 1 in that column.
pub fn rational_kernel(mut a: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let rows = a.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(r) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, r);
        let inv = a[pivot_row][col].clone().recip();
        for c in 0..cols {
            let scaled = &a[pivot_row][c] * &inv;
            a[pivot_row][c] = scaled;
        }
        for r2 in 0..rows {
            if r2 != pivot_row && !a[r2][col].is_zero() {
                let factor = a[r2][col].clone();
                for c in 0..cols {
                    let delta = &a[pivot_row][c] * &factor;
                    a[r2][c] = &a[r2][c] - &delta;
                }
            }
        }
        pivot_of_col[col] = Some(pivot_row);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::from_integer(1.into());
        for col in 0..cols {
            if let Some(pr) = pivot_of_col[col] {
                v[col] = -a[pr][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}
