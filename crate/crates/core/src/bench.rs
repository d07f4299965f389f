//! Dense versus matrix-free application of `U_{n⊗p}`.

use std::hint::black_box;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix};
use crate::tcm::{apply_swap_into, tcm_by_rule};

#[derive(Clone, Debug, Serialize)]
pub struct BenchResult {
    pub n: usize,
    pub p: usize,
    pub batch: usize,
    pub dense_ns_per_apply: f64,
    pub matrixfree_ns_per_apply: f64,
    pub speedup: f64,
    /// Largest entrywise difference between the two methods on the batch.
    pub max_difference: f64,
}

/// Vectors multiplied per pass over the dense matrix.
const DENSE_BLOCK: usize = 8;

/// Applies `U_{n⊗p}` to `batch` random vectors both ways and checks that the
/// outputs agree within `tol` before returning any timing.
///
/// The dense side multiplies the materialised `np×np` matrix, every zero
/// included, against blocks of [`DENSE_BLOCK`] input vectors, so each pass
/// over the matrix serves several vectors.
pub fn run_bench(n: usize, p: usize, batch: usize, tol: f64, seed: u64) -> Result<BenchResult> {
    if batch == 0 {
        return Err(Error::domain("batch must be >= 1"));
    }
    let dense = tcm_by_rule(n, p)?.materialize()?;
    let size = n * p;
    let mut rng = StdRng::seed_from_u64(seed);
    let inputs: Vec<Complex> = (0..batch * size)
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();

    let mut dense_out = vec![Complex::default(); batch * size];
    let start = Instant::now();
    for (vs, outs) in inputs
        .chunks(DENSE_BLOCK * size)
        .zip(dense_out.chunks_mut(DENSE_BLOCK * size))
    {
        dense_block_apply(&dense, black_box(vs), outs);
        black_box(&outs);
    }
    let dense_ns = start.elapsed().as_nanos() as f64 / batch as f64;

    let mut free_out = vec![Complex::default(); batch * size];
    let start = Instant::now();
    for (v, out) in inputs.chunks_exact(size).zip(free_out.chunks_exact_mut(size)) {
        apply_swap_into(n, p, black_box(v), out)?;
        black_box(&out);
    }
    let free_ns = start.elapsed().as_nanos() as f64 / batch as f64;

    let max_difference = dense_out
        .iter()
        .zip(&free_out)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if max_difference > tol {
        return Err(Error::domain(format!(
            "dense and matrix-free outputs differ by {max_difference:e}"
        )));
    }

    Ok(BenchResult {
        n,
        p,
        batch,
        dense_ns_per_apply: dense_ns,
        matrixfree_ns_per_apply: free_ns,
        speedup: dense_ns / free_ns.max(1.0),
        max_difference,
    })
}

/// `outs[t] = u · vs[t]` for every vector `t` in the block (vectors stored
/// back to back). No entry of `u` is skipped.
fn dense_block_apply(u: &ComplexMatrix, vs: &[Complex], outs: &mut [Complex]) {
    let size = u.cols();
    let k = vs.len() / size;
    // transpose the block so each matrix entry meets `k` contiguous values
    let mut vt = vec![Complex::default(); size * k];
    for t in 0..k {
        for c in 0..size {
            vt[c * k + t] = vs[t * size + c];
        }
    }
    let mut acc = vec![Complex::default(); k];
    for (r, row) in u.as_slice().chunks_exact(size).enumerate() {
        acc.iter_mut().for_each(|a| *a = Complex::default());
        for (&a, vcol) in row.iter().zip(vt.chunks_exact(k)) {
            for (s, &x) in acc.iter_mut().zip(vcol) {
                *s += a * x;
            }
        }
        for (t, &s) in acc.iter().enumerate() {
            outs[t * size + r] = s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_bench_agrees_exactly() {
        let r = run_bench(2, 2, 1, 0.0, 1).unwrap();
        assert_eq!(r.max_difference, 0.0);
    }

    #[test]
    fn rectangular_bench_agrees() {
        let r = run_bench(8, 5, 100, 1e-12, 7).unwrap();
        assert!(r.max_difference <= 1e-12);
        assert_eq!(r.batch, 100);
    }

    #[test]
    fn zero_batch_rejected() {
        assert!(run_bench(2, 2, 0, 1e-12, 0).is_err());
    }
}
