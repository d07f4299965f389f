//! Tensor commutation matrices `U_{n⊗p}`.
//!
//! `U_{n⊗p}` is the `np×np` permutation with `U·(a⊗b) = b⊗a` for `a ∈ ℂⁿ`,
//! `b ∈ ℂᵖ`. With row-major Kronecker flattening, `a⊗b` stores `a_i b_j` at
//! `i·p + j` and `b⊗a` stores it at `j·n + i`, so the 1 in column
//! `i·p + j` sits in row `j·n + i`.
//!
//! Three constructions are provided and cross-checked:
//! * [`tcm_by_rule`]: the column-stepping walk (descend `n` rows per column,
//!   wrap one row lower when fewer than `n` rows remain);
//! * [`tcm_by_elementary`]: `Σ E_{p×n}^{(i,j)} ⊗ E_{n×p}^{(j,i)}`;
//! * [`tcm_by_gellmann`]: the rectangular Gell-Mann expansion
//!   `(1/min(n,p)) I⁺⊗I + ½ Σ Λ_a⁺⊗Λ_a`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gellmann::{rect_gellmann, square_gellmann};
use crate::matrix::{Complex, ComplexMatrix, ONE};

fn check_dims(n: usize, p: usize) -> Result<()> {
    if n < 2 || p < 2 {
        return Err(Error::domain(format!("need n, p >= 2, got n={n}, p={p}")));
    }
    n.checked_mul(p)
        .and_then(|np| np.checked_mul(np))
        .ok_or(Error::Size { rows: n, cols: p })?;
    Ok(())
}

/// `U_{n⊗p}` stored as a column → row map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationSpec {
    pub n: usize,
    pub p: usize,
    /// `targets[c] = r` means `U[r, c] = 1` (0-based).
    #[serde(rename = "targets")]
    target_of: Vec<usize>,
}

impl PermutationSpec {
    /// Builds a spec after checking that `target_of` is a bijection on `0..np`.
    pub fn new(n: usize, p: usize, target_of: Vec<usize>) -> Result<Self> {
        check_dims(n, p)?;
        let spec = Self { n, p, target_of };
        spec.validate()?;
        Ok(spec)
    }

    /// The permutation given directly by [`tcm_index`].
    pub fn closed_form(n: usize, p: usize) -> Result<Self> {
        check_dims(n, p)?;
        let mut target_of = vec![0; n * p];
        for i in 0..n {
            for j in 0..p {
                let (row, col) = tcm_index(n, p, i, j)?;
                target_of[col] = row;
            }
        }
        Ok(Self { n, p, target_of })
    }

    pub fn validate(&self) -> Result<()> {
        let size = self.n * self.p;
        if self.target_of.len() != size {
            return Err(Error::Dimension {
                op: "permutation",
                left: (size, 1),
                right: (self.target_of.len(), 1),
            });
        }
        let mut seen = vec![false; size];
        for &r in &self.target_of {
            if r >= size || std::mem::replace(&mut seen[r], true) {
                return Err(Error::domain(format!(
                    "targets are not a permutation of 0..{size}"
                )));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.target_of.len()
    }

    pub fn targets(&self) -> &[usize] {
        &self.target_of
    }

    /// Dense 0/1 matrix.
    pub fn materialize(&self) -> Result<ComplexMatrix> {
        let size = self.size();
        let mut m = ComplexMatrix::zeros(size, size)?;
        for (c, &r) in self.target_of.iter().enumerate() {
            *m.at_mut(r, c) = ONE;
        }
        Ok(m)
    }

    /// `U·v` without materialising `U`.
    pub fn apply(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.size() {
            return Err(Error::Dimension {
                op: "permutation apply",
                left: (self.size(), self.size()),
                right: (v.len(), 1),
            });
        }
        let mut out = vec![Complex::default(); v.len()];
        for (c, &r) in self.target_of.iter().enumerate() {
            out[r] = v[c];
        }
        Ok(out)
    }

    /// Transpose (= inverse). For a commutation matrix this is `U_{p⊗n}`.
    pub fn transpose(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (c, &r) in self.target_of.iter().enumerate() {
            inv[r] = c;
        }
        Self {
            n: self.p,
            p: self.n,
            target_of: inv,
        }
    }
}

/// Which construction to use for `U_{n⊗p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Rule,
    Elementary,
    GellMann,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Rule, Method::Elementary, Method::GellMann];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Rule => "rule",
            Method::Elementary => "elementary",
            Method::GellMann => "gellmann",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rule" => Ok(Method::Rule),
            "elementary" => Ok(Method::Elementary),
            "gellmann" | "gell-mann" => Ok(Method::GellMann),
            other => Err(Error::domain(format!("unknown method {other:?}"))),
        }
    }
}

/// Dense `U_{n⊗p}` by the chosen construction.
pub fn commutation_matrix(n: usize, p: usize, method: Method) -> Result<ComplexMatrix> {
    match method {
        Method::Rule => tcm_by_rule(n, p)?.materialize(),
        Method::Elementary => tcm_by_elementary(n, p),
        Method::GellMann => tcm_by_gellmann(n, p),
    }
}

/// Position of the 1 that carries `a_i b_j` (0-based `i < n`, `j < p`):
/// returns `(row, col) = (j·n + i, i·p + j)`.
pub fn tcm_index(n: usize, p: usize, i: usize, j: usize) -> Result<(usize, usize)> {
    if i >= n || j >= p {
        return Err(Error::Index {
            row: i,
            col: j,
            rows: n,
            cols: p,
        });
    }
    Ok((j * n + i, i * p + j))
}

/// Walks the columns left to right. Each column receives a 1 `n` rows below
/// the previous one; once fewer than `n` rows remain below, the next pass
/// restarts one row lower than the previous pass started.
pub fn tcm_by_rule(n: usize, p: usize) -> Result<PermutationSpec> {
    check_dims(n, p)?;
    let size = n * p;
    let mut target_of = Vec::with_capacity(size);
    let mut pass_start = 0;
    let mut row = 0;
    for _col in 0..size {
        target_of.push(row);
        let rows_below = size - 1 - row;
        if rows_below >= n {
            row += n;
        } else {
            pass_start += 1;
            row = pass_start;
        }
    }
    PermutationSpec::new(n, p, target_of)
}

/// `Σ_{i≤p, j≤n} E_{p×n}^{(i,j)} ⊗ E_{n×p}^{(j,i)}`.
pub fn tcm_by_elementary(n: usize, p: usize) -> Result<ComplexMatrix> {
    check_dims(n, p)?;
    let mut u = ComplexMatrix::zeros(n * p, n * p)?;
    for i in 1..=p {
        for j in 1..=n {
            let left = ComplexMatrix::elementary(p, n, i, j)?;
            let right = ComplexMatrix::elementary(n, p, j, i)?;
            u.add_scaled(ONE, &left.kron(&right)?)?;
        }
    }
    Ok(u)
}

/// `(1/min(n,p))·I⁺⊗I + ½·Σ_a Λ_a⁺⊗Λ_a` over the `n×p` system (tall systems
/// are used as-is).
pub fn tcm_by_gellmann(n: usize, p: usize) -> Result<ComplexMatrix> {
    check_dims(n, p)?;
    let sys = rect_gellmann(n, p)?;
    let id = sys.padded_identity();
    let mut u = id
        .dagger()
        .kron(id)?
        .scale(Complex::new(1.0 / sys.min_dim() as f64, 0.0));
    let half = Complex::new(0.5, 0.0);
    for lambda in sys.lambdas() {
        u.add_scaled(half, &lambda.dagger().kron(lambda)?)?;
    }
    Ok(u)
}

fn check_wide(n: usize, p: usize) -> Result<()> {
    check_dims(n, p)?;
    if p < n {
        return Err(Error::domain(format!("requires p >= n, got n={n}, p={p}")));
    }
    Ok(())
}

/// Both sides of the tail identity
/// `½ Σ_{a=n²}^{np-1} Λ_a⁺⊗Λ_a = Σ_{j≤n, n<l≤p} (E^{(j,l)})ᵗ⊗E^{(j,l)}`.
pub fn tail_identity(n: usize, p: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_wide(n, p)?;
    let sys = rect_gellmann(n, p)?;
    let half = Complex::new(0.5, 0.0);
    let mut lhs = ComplexMatrix::zeros(n * p, n * p)?;
    for lambda in &sys.lambdas()[sys.square_block_len()..] {
        lhs.add_scaled(half, &lambda.dagger().kron(lambda)?)?;
    }
    let rhs = elementary_transpose_sum(n, p, n + 1..=p)?;
    Ok((lhs, rhs))
}

/// Both sides of the square identity
/// `Σ_{j,l≤n} (E^{(j,l)})ᵗ⊗E^{(j,l)} = (1/n) Iₙ⊗Iₙ + ½ Σ Λ_a⊗Λ_a`.
pub fn square_block_identity(n: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_dims(n, n)?;
    let lhs = elementary_transpose_sum(n, n, 1..=n)?;
    let id = ComplexMatrix::identity(n)?;
    let mut rhs = id.kron(&id)?.scale(Complex::new(1.0 / n as f64, 0.0));
    let half = Complex::new(0.5, 0.0);
    for lambda in square_gellmann(n)? {
        rhs.add_scaled(half, &lambda.kron(&lambda)?)?;
    }
    Ok((lhs, rhs))
}

/// Both sides of the padded square identity used to assemble the
/// rectangular expansion: the full elementary sum minus its tail columns
/// equals `(1/n) I⁺⊗I + ½ Σ_{a<n²} Λ_a⁺⊗Λ_a`.
pub fn head_identity(n: usize, p: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_wide(n, p)?;
    let full = elementary_transpose_sum(n, p, 1..=p)?;
    let tail = elementary_transpose_sum(n, p, n + 1..=p)?;
    let lhs = full.sub(&tail)?;

    let sys = rect_gellmann(n, p)?;
    let id = sys.padded_identity();
    let mut rhs = id.dagger().kron(id)?.scale(Complex::new(1.0 / n as f64, 0.0));
    let half = Complex::new(0.5, 0.0);
    for lambda in &sys.lambdas()[..sys.square_block_len()] {
        rhs.add_scaled(half, &lambda.dagger().kron(lambda)?)?;
    }
    Ok((lhs, rhs))
}

/// `Σ_{j≤n, l∈cols} (E_{n×p}^{(j,l)})ᵗ ⊗ E_{n×p}^{(j,l)}`.
fn elementary_transpose_sum(
    n: usize,
    p: usize,
    cols: std::ops::RangeInclusive<usize>,
) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::zeros(n * p, n * p)?;
    for l in cols {
        for j in 1..=n {
            let e = ComplexMatrix::elementary(n, p, j, l)?;
            out.add_scaled(ONE, &e.transpose().kron(&e)?)?;
        }
    }
    Ok(out)
}

/// Matrix-free `U_{n⊗p}·v`: `out[j·n + i] = v[i·p + j]`.
pub fn apply_swap(n: usize, p: usize, v: &[Complex]) -> Result<Vec<Complex>> {
    let mut out = vec![Complex::default(); v.len()];
    apply_swap_into(n, p, v, &mut out)?;
    Ok(out)
}

/// [`apply_swap`] writing into a caller-provided buffer.
pub fn apply_swap_into(n: usize, p: usize, v: &[Complex], out: &mut [Complex]) -> Result<()> {
    let size = n
        .checked_mul(p)
        .ok_or(Error::Size { rows: n, cols: p })?;
    if v.len() != size || out.len() != size {
        return Err(Error::Dimension {
            op: "apply_swap",
            left: (size, 1),
            right: (v.len(), out.len()),
        });
    }
    for i in 0..n {
        let row = &v[i * p..(i + 1) * p];
        for (j, &x) in row.iter().enumerate() {
            out[j * n + i] = x;
        }
    }
    Ok(())
}
