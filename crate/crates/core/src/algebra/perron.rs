//! Perron eigenvalue and eigenvectors of primitive matrices by power iteration.

use alloc::vec;
use alloc::vec::Vec;

use crate::analysis::matrix::{default_k_max, is_primitive, Primitivity, SubstMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub struct PerronData {
    pub eigenvalue: f64,
    /// Half-width of the Collatz-Wielandt bracket around `eigenvalue`.
    pub error: f64,
    /// Right eigenvector, `S v = eta v`, entries summing to 1.
    pub right: Vec<f64>,
    /// Left eigenvector, `u S = eta u`, entries summing to 1.
    pub left: Vec<f64>,
}

pub fn perron_data(s: &SubstMatrix, tol: f64) -> Result<PerronData> {
    if !matches!(
        is_primitive(s, default_k_max(s.dim())),
        Primitivity::Primitive(_)
    ) {
        return Err(Error::NotPrimitive);
    }
    let rows = s.to_f64_rows();
    let (eigenvalue, error, right) = power_iterate(&rows, tol)?;
    let (_, _, left) = power_iterate(&transpose(&rows), tol)?;
    Ok(PerronData {
        eigenvalue,
        error,
        right,
        left,
    })
}

fn transpose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Iterates `v <- (S + I) v` (the shift keeps primitive matrices aperiodic and
/// speeds up mixing) and brackets the eigenvalue between the min and max of
/// `(S v)_i / v_i`.
fn power_iterate(a: &[Vec<f64>], tol: f64) -> Result<(f64, f64, Vec<f64>)> {
    let n = a.len();
    let mut v = vec![1.0 / n as f64; n];
    for _ in 0..DEFAULT_MAX_ITER {
        let sv: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a[i][j] * v[j]).sum())
            .collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = sv[i] / v[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let mut next: Vec<f64> = (0..n).map(|i| sv[i] + v[i]).collect();
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        v = next;
        if hi - lo <= 2.0 * tol {
            return Ok(((hi + lo) / 2.0, (hi - lo) / 2.0, v));
        }
    }
    Err(Error::NoConvergence {
        iterations: DEFAULT_MAX_ITER,
    })
}
