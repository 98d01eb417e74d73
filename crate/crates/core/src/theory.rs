//! Compressive-sensing diagnostics for a sensing matrix: exact restricted
//! isometry constants by subset enumeration, the sample-count bound
//! `K <= c M / ln(N / M)`, and mutual coherence.
//!
//! Nothing here normalizes columns. Callers who want unit-norm columns
//! normalize first.

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the number of column subsets [`restricted_isometry_constant`] visits.
pub const DEFAULT_SUBSET_BUDGET: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RipReport {
    pub k: usize,
    pub delta_k: f64,
    /// Zero-based column indices of the subset attaining `delta_k`.
    pub witness_subset: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SparsityBound {
    pub holds: bool,
    /// `c m / ln(n / m)`.
    pub bound: f64,
    /// `bound - k`; negative when the bound fails.
    pub margin: f64,
}

/// `C(n, k)` without overflow for any realistic input; saturates at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Exact `delta_K` with the default subset budget.
pub fn restricted_isometry_constant<T>(matrix: &DMatrix<T>, k: usize) -> Result<RipReport>
where
    T: ComplexField<RealField = f64>,
{
    restricted_isometry_constant_with_budget(matrix, k, DEFAULT_SUBSET_BUDGET)
}

/// Exact `delta_K = max_T max(lambda_max - 1, 1 - lambda_min)` over the
/// eigenvalues of the sub-Gram matrices `Phi_T^H Phi_T`.
///
/// Only subsets of size exactly `k` are visited: the eigenvalues of a
/// principal submatrix interlace those of the full one, so smaller subsets
/// can never give a larger deviation.
pub fn restricted_isometry_constant_with_budget<T>(
    matrix: &DMatrix<T>,
    k: usize,
    budget: u128,
) -> Result<RipReport>
where
    T: ComplexField<RealField = f64>,
{
    let n = matrix.ncols();
    if matrix.nrows() == 0 || n == 0 {
        return Err(Error::param("matrix", "must have at least one row and column"));
    }
    if k == 0 || k > n {
        return Err(Error::param("k", format!("{k} must lie in 1..={n}")));
    }
    let subsets = binomial(n, k);
    if subsets > budget {
        return Err(Error::InstanceTooLarge { subsets, budget });
    }

    let gram = matrix.adjoint() * matrix;
    let mut best = RipReport {
        k,
        delta_k: f64::NEG_INFINITY,
        witness_subset: Vec::new(),
    };
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let sub = DMatrix::from_fn(k, k, |r, c| gram[(subset[r], subset[c])].clone());
        let delta = if k == 1 {
            (sub[(0, 0)].clone().real() - 1.0).abs()
        } else {
            let eig = SymmetricEigen::new(sub).eigenvalues;
            let hi = eig.max();
            let lo = eig.min();
            (hi - 1.0).max(1.0 - lo)
        };
        if delta > best.delta_k {
            best.delta_k = delta;
            best.witness_subset = subset.clone();
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    best.delta_k = best.delta_k.max(0.0);
    Ok(best)
}

/// Advances `c` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Checks `k <= c m / ln(n / m)`.
pub fn sparsity_bound_holds(k: usize, m: usize, n: usize, c: f64) -> Result<SparsityBound> {
    if m == 0 || n <= m {
        return Err(Error::BoundUndefined { m, n });
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::param("c", format!("{c} must be positive")));
    }
    let bound = c * m as f64 / (n as f64 / m as f64).ln();
    Ok(SparsityBound {
        holds: k as f64 <= bound,
        bound,
        margin: bound - k as f64,
    })
}

/// `max_{i != j} |<a_i, a_j>| / (||a_i|| ||a_j||)`.
pub fn mutual_coherence<T>(matrix: &DMatrix<T>) -> Result<f64>
where
    T: ComplexField<RealField = f64>,
{
    let n = matrix.ncols();
    if n < 2 {
        return Err(Error::param("matrix", "needs at least two columns"));
    }
    let norms: Vec<f64> = matrix.column_iter().map(|c| c.norm()).collect();
    if let Some(j) = norms.iter().position(|&v| v == 0.0) {
        return Err(Error::ZeroColumn(j));
    }
    let gram = matrix.adjoint() * matrix;
    let mut mu = 0.0_f64;
    for j in 0..n {
        for i in 0..j {
            mu = mu.max(gram[(i, j)].clone().modulus() / (norms[i] * norms[j]));
        }
    }
    // rounding can push a duplicated column a hair past 1
    Ok(mu.min(1.0))
}
