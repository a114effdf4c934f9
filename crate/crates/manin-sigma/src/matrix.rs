//! Small dense real-matrix kernel.
//!
//! Everything in this crate operates on matrices of order at most
//! [`MAX_DIM`] (twice the largest supported subalgebra dimension), so the
//! kernel sticks to simple dense algorithms: naive multiplication, pivoted
//! Gauss-Jordan inversion, and a scaling-and-squaring exponential.

use crate::error::{Error, Result};

/// Largest matrix order the kernel accepts.
pub const MAX_DIM: usize = 32;

/// Relative pivot threshold below which elimination reports a singular input.
pub const SINGULAR_PIVOT_REL: f64 = 1e-12;

/// 1-norm bound above which the exponential refuses to run.
pub const EXP_NORM_BOUND: f64 = 1e3;

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Zero matrix. Panics if a dimension is zero or exceeds [`MAX_DIM`];
    /// sizes are an internal invariant, validated at the input boundary.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&rows) && (1..=MAX_DIM).contains(&cols),
            "matrix dimensions {rows}x{cols} outside 1..={MAX_DIM}"
        );
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Build from a row-major slice of `rows * cols` entries.
    pub fn from_rows(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let mut m = Matrix::zeros(rows, cols);
        m.data.copy_from_slice(entries);
        m
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: f64) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * out.cols + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Copy of the sub-matrix over the given half-open ranges.
    pub fn block(
        &self,
        row_range: std::ops::Range<usize>,
        col_range: std::ops::Range<usize>,
    ) -> Result<Matrix> {
        if row_range.end > self.rows || row_range.start >= row_range.end {
            return Err(Error::OutOfRange {
                what: "block row range",
                index: row_range.end,
                limit: self.rows,
            });
        }
        if col_range.end > self.cols || col_range.start >= col_range.end {
            return Err(Error::OutOfRange {
                what: "block col range",
                index: col_range.end,
                limit: self.cols,
            });
        }
        let mut out = Matrix::zeros(row_range.len(), col_range.len());
        for (ro, r) in row_range.clone().enumerate() {
            for (co, c) in col_range.clone().enumerate() {
                out.set(ro, co, self.get(r, c));
            }
        }
        Ok(out)
    }

    /// Matrix exponential by scaling and squaring.
    ///
    /// The input is scaled by 2^-s so its 1-norm drops to at most 0.5, the
    /// series is summed until terms fall below 1e-20 relative weight, and the
    /// result is squared back s times. Inputs with 1-norm beyond
    /// [`EXP_NORM_BOUND`] are rejected as overflow.
    pub fn exp(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_finite() {
            return Err(Error::NonFinite {
                what: "matrix exponential input",
            });
        }
        let norm = self.norm_1();
        if norm > EXP_NORM_BOUND {
            return Err(Error::NormOverflow {
                norm,
                bound: EXP_NORM_BOUND,
            });
        }

        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(0.5f64.powi(squarings as i32));

        let n = self.rows;
        let mut sum = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        // With the scaled norm <= 0.5 the series drops below 1e-20 well
        // before 30 terms.
        for k in 1..=30 {
            term = term.mul(&scaled).scale(1.0 / k as f64);
            sum = sum.add(&term);
            if term.norm_max() < 1e-20 * sum.norm_max().max(1.0) {
                break;
            }
        }

        let mut result = sum;
        for _ in 0..squarings {
            result = result.mul(&result);
        }
        if !result.is_finite() {
            return Err(Error::NonFinite {
                what: "matrix exponential result",
            });
        }
        Ok(result)
    }

    /// Inverse via Gauss-Jordan elimination with partial pivoting.
    ///
    /// A pivot smaller than [`SINGULAR_PIVOT_REL`] times the largest input
    /// entry reports a singular matrix; callers treat that as a coordinate
    /// chart breakdown.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_finite() {
            return Err(Error::NonFinite {
                what: "matrix inverse input",
            });
        }
        let n = self.rows;
        let threshold = SINGULAR_PIVOT_REL * self.norm_max().max(1e-300);
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);

        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_val = a.get(col, col).abs();
            for r in col + 1..n {
                let v = a.get(r, col).abs();
                if v > pivot_val {
                    pivot_val = v;
                    pivot_row = r;
                }
            }
            if pivot_val < threshold {
                return Err(Error::Singular {
                    pivot: pivot_val,
                    threshold,
                });
            }
            if pivot_row != col {
                for c in 0..n {
                    let (x, y) = (a.get(col, c), a.get(pivot_row, c));
                    a.set(col, c, y);
                    a.set(pivot_row, c, x);
                    let (x, y) = (inv.get(col, c), inv.get(pivot_row, c));
                    inv.set(col, c, y);
                    inv.set(pivot_row, c, x);
                }
            }
            let p = a.get(col, col);
            for c in 0..n {
                a.set(col, c, a.get(col, c) / p);
                inv.set(col, c, inv.get(col, c) / p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == 0.0 {
                    continue;
                }
                for c in 0..n {
                    a.set(r, c, a.get(r, c) - factor * a.get(col, c));
                    inv.set(r, c, inv.get(r, c) - factor * inv.get(col, c));
                }
            }
        }
        Ok(inv)
    }

    /// Determinant via LU with partial pivoting. Returns 0.0 when a pivot
    /// collapses below the singularity threshold.
    pub fn det(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_val = a.get(col, col).abs();
            for r in col + 1..n {
                let v = a.get(r, col).abs();
                if v > pivot_val {
                    pivot_val = v;
                    pivot_row = r;
                }
            }
            if pivot_val == 0.0 {
                return Ok(0.0);
            }
            if pivot_row != col {
                det = -det;
                for c in 0..n {
                    let (x, y) = (a.get(col, c), a.get(pivot_row, c));
                    a.set(col, c, y);
                    a.set(pivot_row, c, x);
                }
            }
            let p = a.get(col, col);
            det *= p;
            for r in col + 1..n {
                let factor = a.get(r, col) / p;
                if factor == 0.0 {
                    continue;
                }
                for c in col..n {
                    a.set(r, c, a.get(r, c) - factor * a.get(col, c));
                }
            }
        }
        Ok(det)
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:>12.6}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
