//! Square and rectangular Gell-Mann systems.
//!
//! The square basis is the generalized Gell-Mann basis (symmetric,
//! antisymmetric and diagonal families), normalised to `Tr(Λ²) = 2`.
//! A wide `n×p` system (`p > n`) pads the square `n×n` basis with zero
//! columns and appends `√2·E^{(r, n+t)}` for every entry of the extra columns,
//! filled column by column. A tall system is the element-wise conjugate
//! transpose of the wide one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix, I, ONE};

/// Name recorded in serialized output for the square-block ordering.
pub const ORDERING_NAME: &str = "k-major: for k=2..n, (sym, antisym) for j<k, then diag(k-1)";

/// Shape of a rectangular system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Square,
    Wide,
    Tall,
}

#[derive(Clone, Debug)]
pub struct GellMannSystem {
    n: usize,
    p: usize,
    lambdas: Vec<ComplexMatrix>,
    padded_identity: ComplexMatrix,
}

impl GellMannSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn min_dim(&self) -> usize {
        self.n.min(self.p)
    }

    pub fn orientation(&self) -> Orientation {
        match self.n.cmp(&self.p) {
            std::cmp::Ordering::Equal => Orientation::Square,
            std::cmp::Ordering::Less => Orientation::Wide,
            std::cmp::Ordering::Greater => Orientation::Tall,
        }
    }

    /// Λ_1 .. Λ_{np-1} in order (0-based slice).
    pub fn lambdas(&self) -> &[ComplexMatrix] {
        &self.lambdas
    }

    /// Λ_a with 1-based `a`.
    pub fn lambda(&self, a: usize) -> Result<&ComplexMatrix> {
        a.checked_sub(1)
            .and_then(|k| self.lambdas.get(k))
            .ok_or_else(|| {
                Error::domain(format!(
                    "Gell-Mann index {a} outside 1..={}",
                    self.lambdas.len()
                ))
            })
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Number of leading elements that come from the square block (`m² - 1`
    /// with `m = min(n, p)`).
    pub fn square_block_len(&self) -> usize {
        let m = self.min_dim();
        m * m - 1
    }

    pub fn padded_identity(&self) -> &ComplexMatrix {
        &self.padded_identity
    }
}

fn check_dim(name: &str, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("{name} must be >= 2, got {n}")));
    }
    Ok(())
}

/// The `n² - 1` generalized Gell-Mann matrices of size `n×n`.
///
/// Ordering: for `k = 2..=n`, the symmetric then antisymmetric matrix for
/// each `j = 1..k-1`, followed by the diagonal matrix with `k - 1` leading
/// ones. For `n = 2` this is `(σ₁, σ₂, σ₃)`.
pub fn square_gellmann(n: usize) -> Result<Vec<ComplexMatrix>> {
    check_dim("n", n)?;
    let mut out = Vec::with_capacity(n * n - 1);
    for k in 2..=n {
        for j in 1..k {
            let ejk = ComplexMatrix::elementary(n, n, j, k)?;
            let ekj = ComplexMatrix::elementary(n, n, k, j)?;
            out.push(ejk.add(&ekj)?);
            let mut anti = ejk.scale(-I);
            anti.add_scaled(I, &ekj)?;
            out.push(anti);
        }
        out.push(diagonal_gellmann(n, k - 1)?);
    }
    Ok(out)
}

/// `√(2/(l(l+1)))·diag(1, …, 1, −l, 0, …, 0)` with `l` leading ones.
fn diagonal_gellmann(n: usize, l: usize) -> Result<ComplexMatrix> {
    let lf = l as f64;
    let norm = (2.0 / (lf * (lf + 1.0))).sqrt();
    let mut d = ComplexMatrix::zeros(n, n)?;
    for k in 0..l {
        *d.at_mut(k, k) = Complex::new(norm, 0.0);
    }
    *d.at_mut(l, l) = Complex::new(-lf * norm, 0.0);
    Ok(d)
}

/// `I_{min(n,p)}` padded with zero rows or columns to `n×p`.
pub fn padded_identity(n: usize, p: usize) -> Result<ComplexMatrix> {
    check_dim("n", n)?;
    check_dim("p", p)?;
    let mut m = ComplexMatrix::zeros(n, p)?;
    for k in 0..n.min(p) {
        *m.at_mut(k, k) = ONE;
    }
    Ok(m)
}

/// The rectangular `n×p` Gell-Mann system.
pub fn rect_gellmann(n: usize, p: usize) -> Result<GellMannSystem> {
    check_dim("n", n)?;
    check_dim("p", p)?;
    if n > p {
        let wide = rect_gellmann(p, n)?;
        return Ok(GellMannSystem {
            n,
            p,
            lambdas: wide.lambdas.iter().map(ComplexMatrix::dagger).collect(),
            padded_identity: wide.padded_identity.dagger(),
        });
    }

    let mut lambdas = Vec::with_capacity(n * p - 1);
    for sq in square_gellmann(n)? {
        lambdas.push(pad_columns(&sq, p)?);
    }
    let sqrt2 = Complex::new(std::f64::consts::SQRT_2, 0.0);
    for col in n + 1..=p {
        for row in 1..=n {
            lambdas.push(ComplexMatrix::elementary(n, p, row, col)?.scale(sqrt2));
        }
    }
    debug_assert_eq!(lambdas.len(), n * p - 1);
    Ok(GellMannSystem {
        n,
        p,
        lambdas,
        padded_identity: padded_identity(n, p)?,
    })
}

/// Appends zero columns to reach `cols` columns.
pub fn pad_columns(m: &ComplexMatrix, cols: usize) -> Result<ComplexMatrix> {
    if cols < m.cols() {
        return Err(Error::Dimension {
            op: "pad_columns",
            left: m.shape(),
            right: (m.rows(), cols),
        });
    }
    let mut out = ComplexMatrix::zeros(m.rows(), cols)?;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            *out.at_mut(r, c) = m.at(r, c);
        }
    }
    Ok(out)
}

/// Appends zero rows to reach `rows` rows.
pub fn pad_rows(m: &ComplexMatrix, rows: usize) -> Result<ComplexMatrix> {
    if rows < m.rows() {
        return Err(Error::Dimension {
            op: "pad_rows",
            left: m.shape(),
            right: (rows, m.cols()),
        });
    }
    let mut out = ComplexMatrix::zeros(rows, m.cols())?;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            *out.at_mut(r, c) = m.at(r, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ZERO;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn pauli() -> [ComplexMatrix; 3] {
        [
            ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap(),
            ComplexMatrix::from_rows(&[[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]]).unwrap(),
            ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]).unwrap(),
        ]
    }

    #[test]
    fn square_two_is_pauli() {
        assert_eq!(square_gellmann(2).unwrap(), pauli().to_vec());
    }

    #[test]
    fn square_rejects_small_n() {
        assert!(matches!(square_gellmann(1), Err(Error::Domain(_))));
        assert!(matches!(rect_gellmann(2, 1), Err(Error::Domain(_))));
        assert!(matches!(padded_identity(0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn square_elements_hermitian_traceless() {
        for n in 2..=6 {
            let basis = square_gellmann(n).unwrap();
            assert_eq!(basis.len(), n * n - 1);
            for m in &basis {
                assert_eq!(&m.dagger(), m);
                assert!(m.trace().unwrap().norm() < 1e-14);
            }
        }
    }

    #[test]
    fn square_three_diagonal_family() {
        // Solving tracelessness, Tr(D²) = 2 and mutual orthogonality for two
        // real diagonal 3x3 matrices with the nested-support pattern gives
        // diag(1,-1,0) and diag(1,1,-2)/sqrt(3).
        let basis = square_gellmann(3).unwrap();
        let diag: Vec<_> = basis
            .iter()
            .filter(|m| (0..3).all(|r| (0..3).all(|c| r == c || m.at(r, c) == ZERO)))
            .collect();
        assert_eq!(diag.len(), 2);
        let d1 = ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 0.0]])
            .unwrap();
        let s = 1.0 / 3f64.sqrt();
        let d2 = ComplexMatrix::from_real_rows(&[[s, 0.0, 0.0], [0.0, s, 0.0], [0.0, 0.0, -2.0 * s]])
            .unwrap();
        assert!(diag[0].approx_eq(&d1, 1e-15).unwrap().0);
        assert!(diag[1].approx_eq(&d2, 1e-15).unwrap().0);

        // the hand-solved values satisfy the constraints they were derived from
        for d in [&d1, &d2] {
            assert!(d.trace().unwrap().norm() < 1e-15);
            assert!((d.matmul(d).unwrap().trace().unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        }
        assert!(d1.matmul(&d2).unwrap().trace().unwrap().norm() < 1e-15);
    }

    #[test]
    fn padded_identity_examples() {
        assert_eq!(
            padded_identity(2, 3).unwrap(),
            ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).unwrap()
        );
        assert_eq!(padded_identity(3, 3).unwrap(), ComplexMatrix::identity(3).unwrap());
        assert_eq!(padded_identity(3, 2).unwrap(), padded_identity(2, 3).unwrap().dagger());
    }

    #[test]
    fn two_by_three_system() {
        let s = std::f64::consts::SQRT_2;
        let sys = rect_gellmann(2, 3).unwrap();
        assert_eq!(sys.len(), 5);
        assert_eq!(sys.orientation(), Orientation::Wide);
        let expected = [
            ComplexMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]).unwrap(),
            ComplexMatrix::from_rows(&[[ZERO, c(0.0, -1.0), ZERO], [c(0.0, 1.0), ZERO, ZERO]])
                .unwrap(),
            ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, -1.0, 0.0]]).unwrap(),
            ComplexMatrix::from_real_rows(&[[0.0, 0.0, s], [0.0, 0.0, 0.0]]).unwrap(),
            ComplexMatrix::from_real_rows(&[[0.0, 0.0, 0.0], [0.0, 0.0, s]]).unwrap(),
        ];
        assert_eq!(sys.lambdas(), &expected);
        assert_eq!(sys.lambda(4).unwrap(), &expected[3]);
        assert!(sys.lambda(0).is_err());
        assert!(sys.lambda(6).is_err());
    }

    #[test]
    fn two_by_four_tail() {
        let s = std::f64::consts::SQRT_2;
        let sys = rect_gellmann(2, 4).unwrap();
        let expected = [
            ComplexMatrix::from_real_rows(&[[0.0, 0.0, s, 0.0], [0.0; 4]]).unwrap(),
            ComplexMatrix::from_real_rows(&[[0.0; 4], [0.0, 0.0, s, 0.0]]).unwrap(),
            ComplexMatrix::from_real_rows(&[[0.0, 0.0, 0.0, s], [0.0; 4]]).unwrap(),
            ComplexMatrix::from_real_rows(&[[0.0; 4], [0.0, 0.0, 0.0, s]]).unwrap(),
        ];
        assert_eq!(&sys.lambdas()[3..7], &expected);
    }

    #[test]
    fn three_by_four_has_eleven() {
        let sys = rect_gellmann(3, 4).unwrap();
        assert_eq!(sys.len(), 11);
        assert_eq!(sys.square_block_len(), 8);
        for m in sys.lambdas() {
            assert_eq!(m.shape(), (3, 4));
        }
    }

    #[test]
    fn tall_is_dagger_of_wide_and_matches_row_padding() {
        let tall = rect_gellmann(3, 2).unwrap();
        let wide = rect_gellmann(2, 3).unwrap();
        assert_eq!(tall.orientation(), Orientation::Tall);
        for (t, w) in tall.lambdas().iter().zip(wide.lambdas()) {
            assert_eq!(t, &w.dagger());
        }
        // Alternative description: pad the Pauli matrices with a zero row.
        for (k, sigma) in pauli().iter().enumerate() {
            assert_eq!(tall.lambdas()[k], pad_rows(sigma, 3).unwrap());
        }
    }

    #[test]
    fn square_rect_matches_square_basis() {
        for n in 2..=5 {
            assert_eq!(rect_gellmann(n, n).unwrap().lambdas(), square_gellmann(n).unwrap().as_slice());
        }
    }

    #[test]
    fn wide_shape_invariant() {
        let s = std::f64::consts::SQRT_2;
        for (n, p) in [(2, 5), (3, 4), (4, 7)] {
            let sys = rect_gellmann(n, p).unwrap();
            let head = sys.square_block_len();
            for m in &sys.lambdas()[..head] {
                for r in 0..n {
                    for col in n..p {
                        assert_eq!(m.at(r, col), ZERO);
                    }
                }
            }
            for (k, m) in sys.lambdas()[head..].iter().enumerate() {
                assert_eq!(m.nnz(), 1);
                let (r, col) = (k % n, n + k / n);
                assert_eq!(m.at(r, col), Complex::new(s, 0.0));
            }
        }
    }

    #[test]
    fn pad_rejects_shrinking() {
        let m = ComplexMatrix::identity(3).unwrap();
        assert!(pad_columns(&m, 2).is_err());
        assert!(pad_rows(&m, 2).is_err());
    }
}
