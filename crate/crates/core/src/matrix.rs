//! Dense complex matrices.
//!
//! Every object in the crate (column vectors, Gell-Mann matrices, elementary
//! matrices, materialised commutation matrices) is a [`ComplexMatrix`].
//! Storage is row-major and 0-based; the public constructors that name a
//! single entry ([`ComplexMatrix::elementary`], [`ComplexMatrix::get`]) take
//! 1-based `(row, col)` so they read like `E^{(i,j)}`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar field of every matrix.
pub type Complex = Complex64;

/// Default comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

fn checked_len(rows: usize, cols: usize) -> Result<usize> {
    if rows == 0 || cols == 0 {
        return Err(Error::domain(format!(
            "matrix dimensions must be positive, got {rows}x{cols}"
        )));
    }
    rows.checked_mul(cols)
        .filter(|&len| len <= isize::MAX as usize / std::mem::size_of::<Complex>())
        .ok_or(Error::Size { rows, cols })
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        let len = checked_len(rows, cols)?;
        Ok(Self {
            rows,
            cols,
            data: vec![ZERO; len],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for k in 0..n {
            m.data[k * n + k] = ONE;
        }
        Ok(m)
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        let len = checked_len(rows, cols)?;
        if data.len() != len {
            return Err(Error::Dimension {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[Complex]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (k, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension {
                    op: "from_rows",
                    left: (0, cols),
                    right: (k, r.len()),
                });
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(rows.len(), cols, data)
    }

    /// Builds a real-valued matrix from nested rows.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let rows: Vec<Vec<Complex>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Complex::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Column vector from its entries.
    pub fn column(entries: &[Complex]) -> Result<Self> {
        Self::from_vec(entries.len(), 1, entries.to_vec())
    }

    /// `E^{(i,j)}`: zero except a 1 at 1-based position `(i, j)`.
    pub fn elementary(rows: usize, cols: usize, i: usize, j: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(Error::Index {
                row: i,
                col: j,
                rows,
                cols,
            });
        }
        m.data[(i - 1) * cols + (j - 1)] = ONE;
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex> {
        self.data
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Result<Complex> {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            return Err(Error::Index {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.data[(i - 1) * self.cols + (j - 1)])
    }

    /// Entry at 0-based `(r, c)`. Panics when out of range.
    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Complex {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        self.data[r * self.cols + c]
    }

    #[inline]
    pub(crate) fn at_mut(&mut self, r: usize, c: usize) -> &mut Complex {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        &mut self.data[r * self.cols + c]
    }

    /// Kronecker product: the `(i, j)` block of the result is `self[i, j] * other`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let rows = self
            .rows
            .checked_mul(other.rows)
            .ok_or(Error::Size { rows: usize::MAX, cols: 0 })?;
        let cols = self
            .cols
            .checked_mul(other.cols)
            .ok_or(Error::Size { rows, cols: usize::MAX })?;
        let mut out = Self::zeros(rows, cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    let dst = (i * other.rows + k) * cols + j * other.cols;
                    let src = &other.data[k * other.cols..(k + 1) * other.cols];
                    for (d, &b) in out.data[dst..dst + other.cols].iter_mut().zip(src) {
                        *d = a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.data[r * self.cols + c].conj());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.data[r * self.cols + c]);
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            let row_out = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row_b = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in row_out.iter_mut().zip(row_b) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product on a plain slice.
    pub fn matvec(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                op: "matvec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok(self
            .data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    pub fn trace(&self) -> Result<Complex> {
        if !self.is_square() {
            return Err(Error::Dimension {
                op: "trace",
                left: self.shape(),
                right: self.shape(),
            });
        }
        Ok((0..self.rows).map(|k| self.data[k * self.cols + k]).sum())
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::Dimension {
                op: "trace_product",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self.data[i * self.cols + k] * other.data[k * other.cols + i];
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, alpha: Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| alpha * x).collect(),
        }
    }

    /// `self += alpha * other`.
    pub fn add_scaled(&mut self, alpha: Complex, other: &Self) -> Result<()> {
        self.check_same_shape("add_scaled", other)?;
        for (d, &s) in self.data.iter_mut().zip(&other.data) {
            *d += alpha * s;
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(ONE, other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(-ONE, other)?;
        Ok(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape("max_abs_diff", other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Returns whether every entry of `self - other` has modulus `<= tol`,
    /// together with the largest such modulus.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> Result<(bool, f64)> {
        let diff = self.max_abs_diff(other)?;
        Ok((diff <= tol, diff))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.re.is_finite() && x.im.is_finite())
    }

    /// Number of entries that are not exactly zero.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|&&x| x != ZERO).count()
    }

    fn check_same_shape(&self, op: &'static str, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.data.chunks_exact(self.cols) {
            write!(f, "  ")?;
            for x in row {
                write!(f, "{:>8.4}{:+.4}i ", x.re, x.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn sigma2() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]]).unwrap()
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2).unwrap();
        assert_eq!(i2.kron(&i2).unwrap(), ComplexMatrix::identity(4).unwrap());
    }

    #[test]
    fn kron_of_single_entries() {
        let a = ComplexMatrix::elementary(3, 2, 1, 1).unwrap();
        let b = ComplexMatrix::elementary(2, 3, 1, 1).unwrap();
        let k = a.kron(&b).unwrap();
        assert_eq!(k.shape(), (6, 6));
        assert_eq!(k, ComplexMatrix::elementary(6, 6, 1, 1).unwrap());
    }

    #[test]
    fn kron_first_summand_of_u23_expansion() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]).unwrap();
        let k = a.kron(&b).unwrap();
        assert_eq!(k.shape(), (6, 6));
        assert_eq!(k.nnz(), 1);
        assert_eq!(k.at(0, 0), ONE);
    }

    #[test]
    fn kron_block_layout() {
        let a = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[[0.0, 5.0], [6.0, 7.0]]).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            [0.0, 5.0, 0.0, 10.0],
            [6.0, 7.0, 12.0, 14.0],
            [0.0, 15.0, 0.0, 20.0],
            [18.0, 21.0, 24.0, 28.0],
        ])
        .unwrap();
        assert_eq!(a.kron(&b).unwrap(), expected);
    }

    #[test]
    fn dagger_fixes_sigma2() {
        assert_eq!(sigma2().dagger(), sigma2());
    }

    #[test]
    fn dagger_of_tail_element() {
        let s = std::f64::consts::SQRT_2;
        let lambda4 = ComplexMatrix::elementary(2, 3, 1, 3).unwrap().scale(c(s, 0.0));
        let expected = ComplexMatrix::elementary(3, 2, 3, 1).unwrap().scale(c(s, 0.0));
        assert_eq!(lambda4.dagger(), expected);
    }

    #[test]
    fn dagger_of_elementary_swaps_indices() {
        for (p, n) in [(2, 3), (4, 2), (3, 3)] {
            for i in 1..=p {
                for j in 1..=n {
                    let e = ComplexMatrix::elementary(p, n, i, j).unwrap();
                    assert_eq!(e.dagger(), ComplexMatrix::elementary(n, p, j, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn matmul_of_tail_elements() {
        // sqrt2 E13 * (sqrt2 E23)^+ = 2 E13 E32 = 2 E12
        let s = c(std::f64::consts::SQRT_2, 0.0);
        let l4 = ComplexMatrix::elementary(2, 3, 1, 3).unwrap().scale(s);
        let l5 = ComplexMatrix::elementary(2, 3, 2, 3).unwrap().scale(s);
        let prod = l4.matmul(&l5.dagger()).unwrap();
        let expected = ComplexMatrix::elementary(2, 2, 1, 2).unwrap().scale(c(2.0, 0.0));
        let (ok, diff) = prod.approx_eq(&expected, 1e-15).unwrap();
        assert!(ok, "diff {diff}");
    }

    #[test]
    fn matmul_identity_and_elementary_calculus() {
        let a = ComplexMatrix::from_rows(&[
            [c(1.0, 2.0), c(0.5, 0.0)],
            [c(-1.0, 0.0), c(0.0, -3.0)],
            [c(2.0, 2.0), c(1.0, 1.0)],
        ])
        .unwrap();
        let i3 = ComplexMatrix::identity(3).unwrap();
        assert_eq!(i3.matmul(&a).unwrap(), a);

        let e12 = ComplexMatrix::elementary(2, 2, 1, 2).unwrap();
        let e21 = ComplexMatrix::elementary(2, 2, 2, 1).unwrap();
        assert_eq!(
            e12.matmul(&e21).unwrap(),
            ComplexMatrix::elementary(2, 2, 1, 1).unwrap()
        );
    }

    #[test]
    fn matmul_shape_mismatch() {
        let a = ComplexMatrix::zeros(2, 3).unwrap();
        assert!(matches!(a.matmul(&a), Err(Error::Dimension { .. })));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(ComplexMatrix::identity(5).unwrap().trace().unwrap(), c(5.0, 0.0));
        let s1 = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(s1.dagger().matmul(&s1).unwrap().trace().unwrap(), c(2.0, 0.0));
        assert_eq!(s1.dagger().matmul(&sigma2()).unwrap().trace().unwrap(), ZERO);
        assert!(matches!(
            ComplexMatrix::zeros(2, 3).unwrap().trace(),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn elementary_examples() {
        let e = ComplexMatrix::elementary(2, 3, 1, 1).unwrap();
        assert_eq!(
            e,
            ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]).unwrap()
        );
        let e = ComplexMatrix::elementary(3, 2, 3, 2).unwrap();
        assert_eq!(
            e,
            ComplexMatrix::from_real_rows(&[[0.0, 0.0], [0.0, 0.0], [0.0, 1.0]]).unwrap()
        );
        assert!(matches!(
            ComplexMatrix::elementary(2, 3, 3, 1),
            Err(Error::Index { .. })
        ));
        assert!(matches!(
            ComplexMatrix::elementary(2, 3, 0, 1),
            Err(Error::Index { .. })
        ));
    }

    #[test]
    fn approx_eq_examples() {
        let i2 = ComplexMatrix::identity(2).unwrap();
        let z2 = ComplexMatrix::zeros(2, 2).unwrap();
        assert_eq!(i2.approx_eq(&i2, 0.0).unwrap(), (true, 0.0));
        assert_eq!(i2.approx_eq(&z2, 1e-12).unwrap(), (false, 1.0));
        assert!(matches!(
            i2.approx_eq(&ComplexMatrix::zeros(2, 3).unwrap(), 1.0),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn zero_dimensions_rejected() {
        assert!(ComplexMatrix::zeros(0, 3).is_err());
        assert!(ComplexMatrix::from_vec(2, 2, vec![ZERO; 3]).is_err());
    }

    #[test]
    fn kron_size_overflow_rejected() {
        let huge = ComplexMatrix {
            rows: 1 << 40,
            cols: 1,
            data: Vec::new(),
        };
        assert!(matches!(huge.kron(&huge), Err(Error::Size { .. })));
    }
}
