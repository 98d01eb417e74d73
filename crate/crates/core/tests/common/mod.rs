//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// i.i.d. N(0, 1/n) entries.
pub fn gaussian_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> DMatrix<f64> {
    let normal = Normal::new(0.0, (1.0 / n as f64).sqrt()).unwrap();
    DMatrix::from_fn(m, n, |_, _| normal.sample(rng))
}

pub fn unit_columns(mut a: DMatrix<f64>) -> DMatrix<f64> {
    for mut c in a.column_iter_mut() {
        let n = c.norm();
        c /= n;
    }
    a
}

/// Dolph-Chebyshev weights from the closed-form polynomial expansion of
/// `T_{N-1}(z0 cos(psi / 2))` for an even element count `N = 2M`, one
/// weight per element pair from the center outward, scaled to max 1.
pub fn chebyshev_even_oracle(n_elements: usize, sll_db: f64) -> Vec<f64> {
    assert!(n_elements % 2 == 0);
    let m = n_elements / 2;
    let r = 10f64.powf(-sll_db / 20.0);
    let z0 = (r.acosh() / (n_elements - 1) as f64).cosh();
    let fact = |k: usize| (1..=k).fold(1.0_f64, |acc, i| acc * i as f64);
    let mut a: Vec<f64> = (1..=m)
        .map(|n| {
            (n..=m)
                .map(|q| {
                    let sign = if (m - q) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * z0.powi(2 * q as i32 - 1) * fact(q + m - 2) * (2 * m - 1) as f64
                        / (fact(q - n) * fact(q + n - 1) * fact(m - q))
                })
                .sum()
        })
        .collect();
    let max = a.iter().cloned().fold(f64::MIN, f64::max);
    for v in &mut a {
        *v /= max;
    }
    a
}

/// `sum_i 2 R_i cos(2 pi d_i u)` evaluated directly.
pub fn direct_factor(positions: &[f64], excitations: &[f64], u: f64) -> f64 {
    positions
        .iter()
        .zip(excitations)
        .map(|(d, r)| 2.0 * r * (std::f64::consts::TAU * d * u).cos())
        .sum()
}

/// `min ||x||_1 s.t. ||A x - f|| <= sigma` by enumerating every support and
/// sign pattern. For fixed support `S` and signs `s`, minimizing `s^T x` over
/// the residual ellipsoid has the closed form `x = x_ls - t G^-1 s` with
/// `t` placing the residual on the boundary; candidates whose signs disagree
/// with `s` are dropped. Exponential cost: keep `n` small.
pub fn exhaustive_bpdn(a: &DMatrix<f64>, f: &DVector<f64>, sigma: f64) -> f64 {
    let (m, n) = a.shape();
    assert!(n <= 16);
    if f.norm() <= sigma {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let k = support.len();
        if k > m {
            continue;
        }
        let a_s = a.select_columns(&support);
        let g = a_s.transpose() * &a_s;
        let Some(chol) = g.clone().cholesky() else { continue };
        let x_ls = chol.solve(&(a_s.transpose() * f));
        let r_ls2 = (&a_s * &x_ls - f).norm_squared();
        let slack = sigma * sigma - r_ls2;
        if slack < 0.0 {
            continue;
        }
        for signs in 0u32..(1 << k) {
            let s = DVector::from_fn(k, |i, _| if signs & (1 << i) != 0 { -1.0 } else { 1.0 });
            let gs = chol.solve(&s);
            let q = s.dot(&gs);
            let t = (slack / q).sqrt();
            let x = &x_ls - t * &gs;
            if x.iter().zip(s.iter()).all(|(xi, si)| xi * si > 0.0) {
                best = best.min(x.abs().sum());
            }
        }
    }
    best
}

/// Minimum-norm solution of a full-row-rank underdetermined system,
/// `A^T (A A^T)^-1 f`.
pub fn pseudoinverse_solution(a: &DMatrix<f64>, f: &DVector<f64>) -> DVector<f64> {
    let aat = a * a.transpose();
    let y = aat.cholesky().expect("full row rank").solve(f);
    a.transpose() * y
}

/// `delta_2` from the closed-form eigenvalues of every 2 x 2 Gram block.
pub fn rip2_pairwise(a: &DMatrix<f64>) -> f64 {
    let n = a.ncols();
    let mut delta = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            let (ci, cj) = (a.column(i), a.column(j));
            let p = ci.dot(&ci);
            let r = cj.dot(&cj);
            let b = ci.dot(&cj);
            let mid = 0.5 * (p + r);
            let rad = (0.25 * (p - r) * (p - r) + b * b).sqrt();
            delta = delta.max((mid + rad - 1.0).max(1.0 - (mid - rad)));
        }
    }
    delta
}

/// Pairwise normalized inner products by a plain double loop.
pub fn coherence_double_loop(a: &DMatrix<f64>) -> f64 {
    let (m, n) = a.shape();
    let mut mu = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (mut dot, mut ni, mut nj) = (0.0, 0.0, 0.0);
            for r in 0..m {
                dot += a[(r, i)] * a[(r, j)];
                ni += a[(r, i)] * a[(r, i)];
                nj += a[(r, j)] * a[(r, j)];
            }
            mu = mu.max(dot.abs() / (ni.sqrt() * nj.sqrt()));
        }
    }
    mu
}
