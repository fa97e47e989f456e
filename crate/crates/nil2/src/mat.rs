//! Dense matrices over the rationals and the exact elimination kernels the
//! rest of the crate is built on: reduced row echelon form, null spaces,
//! inverses and Pfaffians.
//!
//! Target dimensions are small (a dozen or so), so storage is dense and every
//! routine favours determinism over pivoting heuristics: elimination always
//! takes the first nonzero entry in column order.

use crate::rat::{rat_int, Rat};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("{op}: dimension mismatch ({lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols})")]
    DimensionMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkew { row: usize, col: usize },
    #[error("skew matrix has odd dimension {dim}")]
    OddDimension { dim: usize },
    #[error("block grid is ragged at block ({row}, {col})")]
    BlockShape { row: usize, col: usize },
}

/// A dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Output of [`RatMatrix::rref`]: the reduced form plus the pivot columns in
/// strictly increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from row vectors. Panics on ragged input; callers that
    /// read untrusted data validate shapes first.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor for integer literals in tests and fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rat_int(rows[i][j]))
    }

    /// A column vector as an `n x 1` matrix.
    pub fn column(v: &[Rat]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| v[i].clone())
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

    pub fn at(&self, row: usize, col: usize) -> &Rat {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rat] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn col(&self, col: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, col).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    fn shape_err(&self, rhs: &Self, op: &'static str) -> MatError {
        MatError::DimensionMismatch {
            op,
            lhs_rows: self.rows,
            lhs_cols: self.cols,
            rhs_rows: rhs.rows,
            rhs_cols: rhs.cols,
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self, MatError> {
        if self.cols != rhs.rows {
            return Err(self.shape_err(rhs, "matmul"));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                acc += self.at(i, k) * rhs.at(k, j);
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_err(rhs, "add"));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j) + rhs.at(i, j)
        }))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_err(rhs, "sub"));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j) - rhs.at(i, j)
        }))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * k)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, MatError> {
        if v.len() != self.cols {
            return Err(MatError::DimensionMismatch {
                op: "mul_vec",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: v.len(),
                rhs_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    acc += self.at(i, j) * &v[j];
                }
                acc
            })
            .collect())
    }

    /// First position `(i, j)` violating `A = -A^T`, if any.
    pub fn skew_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if self.at(i, j) != &-self.at(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && self.skew_violation().is_none()
    }

    /// Reduced row echelon form with deterministic pivoting: the pivot is the
    /// first row (top to bottom) with a nonzero entry in the current column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = Rat::one() / m.at(pivot_row, col).clone();
            for j in col..m.cols {
                let v = m.at(pivot_row, j) * &inv;
                m.set(pivot_row, j, v);
            }
            for r in 0..m.rows {
                if r != pivot_row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for j in col..m.cols {
                        let v = m.at(r, j) - &(m.at(pivot_row, j) * &factor);
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// A basis of the right null space, one vector per free column, in
    /// ascending free-column order. `M v = 0` holds exactly for each.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let Rref { matrix, pivots } = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|c| !is_pivot[*c]) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -matrix.at(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse via Gauss-Jordan on `[M | I]`.
    pub fn inverse(&self) -> Result<Self, MatError> {
        if !self.is_square() {
            return Err(MatError::DimensionMismatch {
                op: "inverse",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: self.rows,
                rhs_cols: self.rows,
            });
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else if j - n == i {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(MatError::SingularMatrix);
        }
        Ok(Self::from_fn(n, n, |i, j| matrix.at(i, n + j).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Pfaffian of a skew-symmetric even-dimensional matrix.
    ///
    /// Dimension at most eight expands recursively along the first row;
    /// larger inputs go through exact skew elimination, which is cubic.
    pub fn pfaffian(&self) -> Result<Rat, MatError> {
        if !self.is_square() {
            return Err(MatError::DimensionMismatch {
                op: "pfaffian",
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: self.cols,
                rhs_cols: self.cols,
            });
        }
        if let Some((row, col)) = self.skew_violation() {
            return Err(MatError::NotSkew { row, col });
        }
        if !self.rows.is_multiple_of(2) {
            return Err(MatError::OddDimension { dim: self.rows });
        }
        if self.rows <= 8 {
            let active: Vec<usize> = (0..self.rows).collect();
            Ok(self.pfaffian_recursive(&active))
        } else {
            Ok(self.pfaffian_eliminate())
        }
    }

    fn pfaffian_recursive(&self, active: &[usize]) -> Rat {
        if active.is_empty() {
            return Rat::one();
        }
        let first = active[0];
        let mut acc = Rat::zero();
        let mut sign = Rat::one();
        for k in 1..active.len() {
            let entry = self.at(first, active[k]);
            if !entry.is_zero() {
                let rest: Vec<usize> = active[1..]
                    .iter()
                    .copied()
                    .filter(|&i| i != active[k])
                    .collect();
                acc += &sign * entry * self.pfaffian_recursive(&rest);
            }
            sign = -sign;
        }
        acc
    }

    /// Skew elimination: congruence transforms reduce the matrix to 2x2
    /// blocks whose product, corrected by swap signs, is the Pfaffian.
    fn pfaffian_eliminate(&self) -> Rat {
        let n = self.rows;
        let mut m = self.clone();
        let mut pf = Rat::one();
        let mut k = 0;
        while k + 1 < n {
            // Bring a nonzero entry to (k, k+1) by a simultaneous row/column
            // swap; the congruence has determinant -1, flipping the sign.
            if m.at(k, k + 1).is_zero() {
                let Some(src) = (k + 2..n).find(|&j| !m.at(k, j).is_zero()) else {
                    return Rat::zero();
                };
                m.swap_rows(k + 1, src);
                for i in 0..n {
                    let a = i * n + k + 1;
                    let b = i * n + src;
                    m.entries.swap(a, b);
                }
                pf = -pf;
            }
            let pivot = m.at(k, k + 1).clone();
            pf *= &pivot;
            for j in k + 2..n {
                // Clear (k, j) with a unit-determinant congruence by row k+1.
                let f = m.at(k, j) / &pivot;
                if !f.is_zero() {
                    m.add_scaled_row_col(j, k + 1, &-f);
                }
                // Clear (k+1, j) likewise by row k.
                let g = m.at(k + 1, j) / &pivot;
                if !g.is_zero() {
                    m.add_scaled_row_col(j, k, &g);
                }
            }
            k += 2;
        }
        pf
    }

    /// `row[dst] += c * row[src]` together with the matching column update,
    /// keeping skew symmetry.
    fn add_scaled_row_col(&mut self, dst: usize, src: usize, c: &Rat) {
        let n = self.cols;
        for j in 0..n {
            let v = self.at(dst, j) + &(self.at(src, j) * c);
            self.set(dst, j, v);
        }
        for i in 0..n {
            let v = self.at(i, dst) + &(self.at(i, src) * c);
            self.set(i, dst, v);
        }
    }
}

impl std::fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", crate::rat::format_rat(self.at(i, j)))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Assembles a matrix from a rectangular grid of blocks, checking that block
/// heights agree along each grid row and widths along each grid column.
pub fn block_compose(grid: &[Vec<RatMatrix>]) -> Result<RatMatrix, MatError> {
    if grid.is_empty() {
        return Ok(RatMatrix::zeros(0, 0));
    }
    let block_cols = grid[0].len();
    for (i, row) in grid.iter().enumerate() {
        if row.len() != block_cols {
            return Err(MatError::BlockShape { row: i, col: 0 });
        }
        for (j, b) in row.iter().enumerate() {
            if b.rows() != row[0].rows() {
                return Err(MatError::BlockShape { row: i, col: j });
            }
            if b.cols() != grid[0][j].cols() {
                return Err(MatError::BlockShape { row: i, col: j });
            }
        }
    }
    let row_heights: Vec<usize> = grid.iter().map(|r| r[0].rows()).collect();
    let col_widths: Vec<usize> = grid[0].iter().map(RatMatrix::cols).collect();
    let total_rows: usize = row_heights.iter().sum();
    let total_cols: usize = col_widths.iter().sum();
    let mut out = RatMatrix::zeros(total_rows, total_cols);
    let mut row_off = 0;
    for (bi, row) in grid.iter().enumerate() {
        let mut col_off = 0;
        for (bj, b) in row.iter().enumerate() {
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    out.set(row_off + i, col_off + j, b.at(i, j).clone());
                }
            }
            col_off += col_widths[bj];
        }
        row_off += row_heights[bi];
    }
    Ok(out)
}
