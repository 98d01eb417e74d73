//! Sparse and minimum-norm solvers for `A r ≈ f`.
//!
//! [`solve_l1`] minimizes `||r||_1` subject to `||A r - f||_2 <= epsilon ||f||_2`.
//! The default method works on the equivalent Lagrangian form
//! `1/2 ||A r - f||^2 + lambda ||r||_1`: an active-set (feature-sign) search
//! solves it exactly for a given `lambda`, and an outer search moves `lambda`
//! until the residual sits on the ball boundary. Within a fixed support and
//! sign pattern the residual is affine in `lambda`, so once the support
//! settles the boundary `lambda` is found in closed form.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};

/// Relative KKT tolerance used by the active-set inner solver.
const KKT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum L1Method {
    /// Feature-sign active set with an outer multiplier search.
    #[default]
    ActiveSet,
    /// Scaled ADMM splitting `x = y` (l1 block) and `A x - f = z` (ball block).
    Admm,
}

impl std::str::FromStr for L1Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "active-set" | "active_set" => Ok(L1Method::ActiveSet),
            "admm" => Ok(L1Method::Admm),
            other => Err(Error::param("method", format!("unknown solver method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Residual ball radius relative to `||f||_2`.
    pub epsilon: f64,
    /// Budget of inner iterations (active-set steps or ADMM sweeps).
    pub max_iterations: usize,
    /// Relative stopping tolerance.
    pub convergence_tol: f64,
    /// ADMM coupling parameter on the normalized problem.
    pub penalty: f64,
    /// Echoed in reports. Both methods start from zero and draw no random numbers.
    pub seed: u64,
    pub method: L1Method,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-3,
            max_iterations: 5000,
            convergence_tol: 1e-8,
            penalty: 1.0,
            seed: 0,
            method: L1Method::ActiveSet,
        }
    }
}

impl SolverConfig {
    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_method(mut self, method: L1Method) -> Self {
        self.method = method;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::param(name, format!("{v} must be positive")))
            }
        };
        positive("epsilon", self.epsilon)?;
        positive("convergence_tol", self.convergence_tol)?;
        positive("penalty", self.penalty)?;
        if self.max_iterations == 0 {
            return Err(Error::param("max_iterations", "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SparseSolution {
    pub coefficients: Vec<f64>,
    pub residual_norm: f64,
    pub l1_norm: f64,
    pub iterations_used: usize,
    pub converged: bool,
    /// Lagrange multiplier of the residual constraint, when known.
    pub multiplier: Option<f64>,
    pub diagnostic: Option<String>,
}

impl SparseSolution {
    fn from_coefficients(
        a: &DMatrix<f64>,
        f: &DVector<f64>,
        coefficients: DVector<f64>,
        iterations_used: usize,
        converged: bool,
    ) -> Self {
        let residual_norm = (a * &coefficients - f).norm();
        Self {
            l1_norm: coefficients.iter().map(|c| c.abs()).sum(),
            coefficients: coefficients.as_slice().to_vec(),
            residual_norm,
            iterations_used,
            converged,
            multiplier: None,
            diagnostic: None,
        }
    }

    /// Number of coefficients with `|r_i| >= threshold_rel * max |r|`.
    pub fn surviving_count(&self, threshold_rel: f64) -> usize {
        let max = self.coefficients.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            return 0;
        }
        self.coefficients
            .iter()
            .filter(|c| c.abs() >= threshold_rel * max)
            .count()
    }
}

fn check_dims(a: &DMatrix<f64>, f: &[f64]) -> Result<()> {
    if a.nrows() != f.len() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: f.len(),
        });
    }
    if a.ncols() == 0 || a.nrows() == 0 {
        return Err(Error::param("matrix", "must have at least one row and column"));
    }
    Ok(())
}

/// L1-minimal `r` with `||A r - f||_2 <= epsilon ||f||_2`.
///
/// A zero target returns the zero vector. Running out of iterations is not
/// an error: the best iterate comes back with `converged = false` and a
/// diagnostic.
pub fn solve_l1(a: &DMatrix<f64>, f: &[f64], config: &SolverConfig) -> Result<SparseSolution> {
    check_dims(a, f)?;
    config.validate()?;
    let fv = DVector::from_column_slice(f);
    let f_norm = fv.norm();
    if f_norm == 0.0 {
        let mut s = SparseSolution::from_coefficients(a, &fv, DVector::zeros(a.ncols()), 0, true);
        s.multiplier = Some(0.0);
        return Ok(s);
    }
    let sigma = config.epsilon * f_norm;
    if f_norm <= sigma {
        return Ok(SparseSolution::from_coefficients(
            a,
            &fv,
            DVector::zeros(a.ncols()),
            0,
            true,
        ));
    }
    match config.method {
        L1Method::ActiveSet => active_set_bpdn(a, &fv, sigma, config),
        L1Method::Admm => admm_bpdn(a, &fv, sigma, config),
    }
}

/// Minimum-norm least-squares solution through a truncated SVD.
///
/// Singular values below `1e-10 * s_max` are treated as zero.
pub fn solve_l2_baseline(a: &DMatrix<f64>, f: &[f64]) -> Result<SparseSolution> {
    check_dims(a, f)?;
    let fv = DVector::from_column_slice(f);
    let svd = a.clone().svd(true, true);
    let s_max = svd.singular_values.max();
    let r = svd
        .solve(&fv, 1e-10 * s_max)
        .map_err(|e| Error::Infeasible(e.to_string()))?;
    Ok(SparseSolution::from_coefficients(a, &fv, r, 1, true))
}

// ---------------------------------------------------------------------------
// active set

struct Lasso<'a> {
    gram: DMatrix<f64>,
    corr: DVector<f64>,
    a: &'a DMatrix<f64>,
    f: &'a DVector<f64>,
}

enum InnerExit {
    Optimal,
    Stalled,
    Budget,
}

impl<'a> Lasso<'a> {
    fn new(a: &'a DMatrix<f64>, f: &'a DVector<f64>) -> Self {
        Self {
            gram: a.transpose() * a,
            corr: a.transpose() * f,
            a,
            f,
        }
    }

    fn sub_gram(&self, support: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(support.len(), support.len(), |i, j| {
            self.gram[(support[i], support[j])]
        })
    }

    /// Solves `G_SS x = rhs`, falling back to a pseudo-inverse when the
    /// support columns are numerically dependent.
    fn solve_support(&self, support: &[usize], rhs: DVector<f64>) -> DVector<f64> {
        let g = self.sub_gram(support);
        match g.clone().cholesky() {
            Some(ch) => ch.solve(&rhs),
            None => {
                let svd = g.svd(true, true);
                let tol = 1e-13 * svd.singular_values.max();
                svd.solve(&rhs, tol).unwrap_or_else(|_| DVector::zeros(support.len()))
            }
        }
    }

    /// Smooth part `1/2 x'Gx - c'x` plus the l1 penalty, restricted to `support`.
    fn objective(&self, support: &[usize], xs: &DVector<f64>, lambda: f64) -> f64 {
        let mut quad = 0.0;
        for (i, &si) in support.iter().enumerate() {
            let mut row = 0.0;
            for (j, &sj) in support.iter().enumerate() {
                row += self.gram[(si, sj)] * xs[j];
            }
            quad += xs[i] * row;
        }
        let lin: f64 = support.iter().zip(xs.iter()).map(|(&s, x)| self.corr[s] * x).sum();
        0.5 * quad - lin + lambda * xs.iter().map(|x| x.abs()).sum::<f64>()
    }

    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        let support: Vec<usize> = (0..x.len()).filter(|&j| x[j] != 0.0).collect();
        let mut g = -self.corr.clone();
        for &j in &support {
            g.axpy(x[j], &self.gram.column(j), 1.0);
        }
        g
    }

    fn residual_norm(&self, x: &DVector<f64>) -> f64 {
        let mut r = -self.f.clone();
        for j in 0..x.len() {
            if x[j] != 0.0 {
                r.axpy(x[j], &self.a.column(j), 1.0);
            }
        }
        r.norm()
    }

    /// Replaces the support coefficients with the exact stationary point for
    /// the current sign pattern when that point keeps the signs.
    fn polish(&self, x: &mut DVector<f64>, lambda: f64) {
        let support: Vec<usize> = (0..x.len()).filter(|&j| x[j] != 0.0).collect();
        if support.is_empty() {
            return;
        }
        let rhs = DVector::from_iterator(
            support.len(),
            support.iter().map(|&s| self.corr[s] - lambda * x[s].signum()),
        );
        let xs = self.solve_support(&support, rhs);
        if support.iter().zip(xs.iter()).all(|(&s, v)| v.signum() == x[s].signum() && *v != 0.0) {
            for (&s, v) in support.iter().zip(xs.iter()) {
                x[s] = *v;
            }
        }
    }

    /// While the active columns are linearly dependent, slides `x` along a
    /// null direction of `A_S` until a coefficient reaches zero. `A x` is
    /// unchanged and `||x||_1` does not increase.
    fn reduce_to_independent(&self, x: &mut DVector<f64>) {
        loop {
            let support: Vec<usize> = (0..x.len()).filter(|&j| x[j] != 0.0).collect();
            if support.len() < 2 {
                return;
            }
            let eig = SymmetricEigen::new(self.sub_gram(&support));
            let (imin, lmin) = eig.eigenvalues.argmin();
            let lmax = eig.eigenvalues.max();
            if support.len() <= self.a.nrows() && lmin > 1e-14 * lmax {
                return;
            }
            let z = eig.eigenvectors.column(imin);
            let slope: f64 = support.iter().zip(z.iter()).map(|(&s, zk)| x[s].signum() * zk).sum();
            let dir = if slope > 0.0 { -1.0 } else { 1.0 };
            let mut step: Option<(f64, usize)> = None;
            for (k, &s) in support.iter().enumerate() {
                let dk = dir * z[k];
                if dk != 0.0 && x[s].signum() != dk.signum() {
                    let t = -x[s] / dk;
                    if step.is_none_or(|(best, _)| t < best) {
                        step = Some((t, k));
                    }
                }
            }
            let Some((t, hit)) = step else { return };
            for (k, &s) in support.iter().enumerate() {
                x[s] += t * dir * z[k];
            }
            x[support[hit]] = 0.0;
        }
    }

    /// Feature-sign search for `min 1/2 ||A x - f||^2 + lambda ||x||_1`.
    fn feature_sign(&self, x: &mut DVector<f64>, lambda: f64, budget: &mut usize) -> InnerExit {
        let n = x.len();
        let mut trust_active = false;
        loop {
            if *budget == 0 {
                return InnerExit::Budget;
            }
            *budget -= 1;
            self.reduce_to_independent(x);

            let g = self.gradient(x);
            let active: Vec<usize> = (0..n).filter(|&j| x[j] != 0.0).collect();
            let active_ok = trust_active
                || active
                    .iter()
                    .all(|&j| (g[j] + lambda * x[j].signum()).abs() <= KKT_TOL * lambda);
            trust_active = false;

            let mut theta: Vec<f64> = x.iter().map(|v| if *v == 0.0 { 0.0 } else { v.signum() }).collect();
            let mut support = active.clone();
            let mut added = false;
            if active_ok {
                let mut best: Option<(usize, f64)> = None;
                for j in (0..n).filter(|&j| x[j] == 0.0) {
                    if best.is_none_or(|(_, v)| g[j].abs() > v) {
                        best = Some((j, g[j].abs()));
                    }
                }
                match best {
                    Some((i, v)) if v > lambda * (1.0 + KKT_TOL) => {
                        theta[i] = -g[i].signum();
                        support.push(i);
                        support.sort_unstable();
                        added = true;
                    }
                    _ => {
                        self.polish(x, lambda);
                        return InnerExit::Optimal;
                    }
                }
            }

            let rhs = DVector::from_iterator(
                support.len(),
                support.iter().map(|&s| self.corr[s] - lambda * theta[s]),
            );
            let target = self.solve_support(&support, rhs);
            let start = DVector::from_iterator(support.len(), support.iter().map(|&s| x[s]));
            let dir = &target - &start;

            // Candidates: the full step and every point where a current
            // coefficient crosses zero along the segment.
            let mut candidates: Vec<(f64, Option<usize>)> = vec![(1.0, None)];
            for k in 0..support.len() {
                if start[k] != 0.0 && dir[k] != 0.0 {
                    let t = -start[k] / dir[k];
                    if t > 0.0 && t < 1.0 {
                        candidates.push((t, Some(k)));
                    }
                }
            }
            let current = self.objective(&support, &start, lambda);
            let mut best: Option<(f64, DVector<f64>)> = None;
            for (t, zeroed) in candidates {
                let mut xs = &start + &dir * t;
                if let Some(k) = zeroed {
                    xs[k] = 0.0;
                }
                let obj = self.objective(&support, &xs, lambda);
                if obj < best.as_ref().map_or(current, |b| b.0) {
                    best = Some((obj, xs));
                }
            }

            match best {
                Some((_, xs)) => {
                    for (k, &s) in support.iter().enumerate() {
                        x[s] = xs[k];
                    }
                }
                None if added => return InnerExit::Stalled,
                None => trust_active = true,
            }
        }
    }
}

fn active_set_bpdn(
    a: &DMatrix<f64>,
    f: &DVector<f64>,
    sigma: f64,
    config: &SolverConfig,
) -> Result<SparseSolution> {
    let lasso = Lasso::new(a, f);
    let n = a.ncols();
    // accepted band below the boundary, never narrower than the rounding
    // error of a residual norm
    let band = (config.convergence_tol * sigma).max(1e-13 * f.norm()).min(0.5 * sigma);
    // aim just inside the ball so rounding cannot push the result outside
    let goal = sigma - 0.5 * band;

    let lambda_max = lasso.corr.amax();
    let mut lo = 0.0_f64;
    let mut hi = lambda_max;
    let mut lambda = 0.5 * lambda_max;
    let mut x = DVector::zeros(n);
    let mut budget = config.max_iterations;
    let mut stalled = false;
    let mut best_feasible: Option<(DVector<f64>, f64, f64)> = None;

    let finish = |x: DVector<f64>, lambda: f64, used: usize, converged: bool, note: Option<String>| {
        let mut s = SparseSolution::from_coefficients(a, f, x, used, converged);
        s.multiplier = Some(lambda);
        s.diagnostic = note;
        s
    };

    loop {
        match lasso.feature_sign(&mut x, lambda, &mut budget) {
            InnerExit::Optimal => {}
            InnerExit::Stalled => stalled = true,
            InnerExit::Budget => break,
        }
        let used = config.max_iterations - budget;
        let res = lasso.residual_norm(&x);
        if res <= sigma && res >= sigma - band {
            let note = stalled.then(|| "inner active-set step stalled at working precision".to_string());
            return Ok(finish(x, lambda, used, true, note));
        }
        if res > sigma {
            hi = hi.min(lambda);
        } else {
            lo = lo.max(lambda);
            if best_feasible.as_ref().is_none_or(|b| lambda > b.1) {
                best_feasible = Some((x.clone(), lambda, res));
            }
        }
        if hi - lo <= 1e-15 * hi {
            let note = if lo == 0.0 {
                "residual ball unreachable: least-squares residual exceeds epsilon * ||f||".to_string()
            } else {
                format!("multiplier bracket collapsed at {lambda:e} with residual {res:e} (goal {sigma:e})")
            };
            return Ok(finish(x, lambda, used, false, Some(note)));
        }

        // closed-form multiplier for the current support and signs
        let support: Vec<usize> = (0..n).filter(|&j| x[j] != 0.0).collect();
        let mut next = None;
        if !support.is_empty() {
            let c_s = DVector::from_iterator(support.len(), support.iter().map(|&s| lasso.corr[s]));
            let s_s = DVector::from_iterator(support.len(), support.iter().map(|&s| x[s].signum()));
            let p = lasso.solve_support(&support, c_s);
            let q = lasso.solve_support(&support, s_s);
            let mut r0 = f.clone();
            let mut v = DVector::zeros(f.len());
            for (k, &s) in support.iter().enumerate() {
                r0.axpy(-p[k], &a.column(s), 1.0);
                v.axpy(q[k], &a.column(s), 1.0);
            }
            // residual(lambda) = r0 + lambda v
            let qa = v.dot(&v);
            let qb = 2.0 * r0.dot(&v);
            let qc = r0.dot(&r0) - goal * goal;
            let disc = qb * qb - 4.0 * qa * qc;
            if qa > 0.0 && disc >= 0.0 {
                let root = (-qb + disc.sqrt()) / (2.0 * qa);
                if root > lo && root < hi {
                    next = Some(root);
                }
            }
        }
        lambda = next.unwrap_or(if lo > 0.0 { 0.5 * (lo + hi) } else { 0.5 * hi });
    }

    let used = config.max_iterations;
    let note = format!("iteration budget of {used} exhausted");
    Ok(match best_feasible {
        Some((xb, lb, _)) => finish(xb, lb, used, false, Some(note)),
        None => finish(x, lambda, used, false, Some(note)),
    })
}

// ---------------------------------------------------------------------------
// ADMM

fn admm_bpdn(
    a: &DMatrix<f64>,
    f: &DVector<f64>,
    sigma: f64,
    config: &SolverConfig,
) -> Result<SparseSolution> {
    let (m, n) = a.shape();
    let f_norm = f.norm();
    let a_scale = spectral_norm(a);
    if a_scale == 0.0 {
        return Err(Error::Infeasible("matrix is identically zero".into()));
    }
    let ah = a / a_scale;
    let fh = f / f_norm;
    let radius = sigma / f_norm;
    let rho = config.penalty;
    let tol = config.convergence_tol;

    let ht = ah.transpose();
    let system = &ht * &ah + DMatrix::identity(n, n);
    let chol = system
        .cholesky()
        .ok_or_else(|| Error::Infeasible("ADMM system is not positive definite".into()))?;

    let mut x = DVector::zeros(n);
    let mut y: DVector<f64> = DVector::zeros(n);
    let mut z: DVector<f64> = DVector::zeros(m);
    let mut w1: DVector<f64> = DVector::zeros(m);
    let mut w2: DVector<f64> = DVector::zeros(n);
    let mut converged = false;
    let mut iterations = 0;

    for it in 1..=config.max_iterations {
        iterations = it;
        let rhs = &ht * (&z + &fh - &w1) + (&y - &w2);
        x.copy_from(&chol.solve(&rhs));
        let ax = &ah * &x;

        let y_old = y.clone();
        let z_old = z.clone();
        let v = &x + &w2;
        y = v.map(|t| t.signum() * (t.abs() - 1.0 / rho).max(0.0));
        let v = &ax - &fh + &w1;
        let vn = v.norm();
        z = if vn <= radius { v } else { v * (radius / vn) };

        let p1 = &ax - &fh - &z;
        let p2 = &x - &y;
        w1 += &p1;
        w2 += &p2;

        let primal = (p1.norm_squared() + p2.norm_squared()).sqrt();
        let dual = rho * ((&y - &y_old).norm_squared() + (&ht * (&z - &z_old)).norm_squared()).sqrt();
        let scale = 1.0_f64.max(y.norm());
        if primal <= tol * scale && dual <= tol * scale {
            converged = true;
            break;
        }
    }

    let mut r = y * (f_norm / a_scale);
    let mut note = (!converged).then(|| format!("ADMM did not reach tolerance in {iterations} iterations"));
    // restore feasibility by moving toward the least-squares fit on the support
    let res = (a * &r - f).norm();
    if res > sigma {
        let support: Vec<usize> = (0..n).filter(|&j| r[j] != 0.0).collect();
        let restored = if support.is_empty() {
            None
        } else {
            let sub = DMatrix::from_fn(m, support.len(), |i, k| a[(i, support[k])]);
            let ls = sub.svd(true, true).solve(f, 1e-12).ok();
            ls.and_then(|ls| {
                let mut r_ls = DVector::zeros(n);
                for (k, &s) in support.iter().enumerate() {
                    r_ls[s] = ls[k];
                }
                let d = &r_ls - &r;
                let r0 = a * &r - f;
                let ad = a * &d;
                let qa = ad.dot(&ad);
                let qb = 2.0 * r0.dot(&ad);
                let qc = r0.dot(&r0) - (sigma * (1.0 - 0.5 * tol)).powi(2);
                let disc = qb * qb - 4.0 * qa * qc;
                (qa > 0.0 && disc >= 0.0)
                    .then(|| (-qb - disc.sqrt()) / (2.0 * qa))
                    .filter(|t| (0.0..=1.0).contains(t))
                    .map(|t| &r + d * t)
            })
        };
        match restored {
            Some(fixed) => r = fixed,
            None => {
                converged = false;
                note = Some("ADMM iterate lies outside the residual ball".into());
            }
        }
    }
    let mut s = SparseSolution::from_coefficients(a, f, r, iterations, converged);
    s.diagnostic = note;
    Ok(s)
}

/// Largest singular value by power iteration on `A'A`.
fn spectral_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.ncols();
    let mut v = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut est = 0.0;
    for _ in 0..500 {
        let w = a.transpose() * (a * &v);
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        v = w / norm;
        if (norm - est).abs() <= 1e-12 * norm {
            est = norm;
            break;
        }
        est = norm;
    }
    est.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orthonormal(n: usize) -> DMatrix<f64> {
        // columns of a rotated identity stay orthonormal
        let q = DMatrix::from_fn(n, n, |i, j| ((i * 7 + j * 3 + 1) as f64).sin());
        q.qr().q()
    }

    #[test]
    fn recovers_scaled_column() {
        let a = orthonormal(6);
        let f: Vec<f64> = a.column(2).iter().map(|v| 5.0 * v).collect();
        let cfg = SolverConfig::default().with_epsilon(1e-9);
        let s = solve_l1(&a, &f, &cfg).unwrap();
        assert!(s.converged);
        for (i, c) in s.coefficients.iter().enumerate() {
            let expect = if i == 2 { 5.0 } else { 0.0 };
            assert!((c - expect).abs() < 1e-6, "{i}: {c}");
        }
    }

    #[test]
    fn zero_target_gives_zero() {
        let a = orthonormal(4);
        let s = solve_l1(&a, &[0.0; 4], &SolverConfig::default()).unwrap();
        assert!(s.coefficients.iter().all(|&c| c == 0.0));
        assert!(s.converged);
        assert_eq!(s.residual_norm, 0.0);
    }

    #[test]
    fn dimension_mismatch() {
        let a = orthonormal(4);
        assert!(matches!(
            solve_l1(&a, &[1.0; 3], &SolverConfig::default()),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        ));
        assert!(solve_l2_baseline(&a, &[1.0; 5]).is_err());
    }

    #[test]
    fn invalid_config() {
        let a = orthonormal(3);
        let mut cfg = SolverConfig::default();
        cfg.epsilon = 0.0;
        assert!(solve_l1(&a, &[1.0, 0.0, 0.0], &cfg).is_err());
    }

    #[test]
    fn residual_on_ball_boundary() {
        let a = DMatrix::from_fn(8, 20, |i, j| ((i + 1) as f64 * (j as f64 * 0.37 + 0.1)).cos());
        let f: Vec<f64> = (0..8).map(|i| (i as f64 * 0.9).sin() + 0.3).collect();
        let cfg = SolverConfig::default().with_epsilon(1e-2);
        let s = solve_l1(&a, &f, &cfg).unwrap();
        let sigma = 1e-2 * DVector::from_column_slice(&f).norm();
        assert!(s.converged, "{:?}", s.diagnostic);
        assert!(s.residual_norm <= sigma);
        assert!(s.residual_norm >= sigma * (1.0 - 1e-8));
    }

    #[test]
    fn min_norm_two_unknowns() {
        let a = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let s = solve_l2_baseline(&a, &[2.0]).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-12);
        assert!((s.coefficients[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn min_norm_exact_system() {
        let a = orthonormal(5);
        let f: Vec<f64> = a.column(2).iter().copied().collect();
        let s = solve_l2_baseline(&a, &f).unwrap();
        for (i, c) in s.coefficients.iter().enumerate() {
            let expect = if i == 2 { 1.0 } else { 0.0 };
            assert!((c - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn admm_matches_active_set_on_small_problem() {
        let a = DMatrix::from_fn(10, 16, |i, j| ((i * 16 + j) as f64 * 1.618).sin());
        let mut r0 = DVector::zeros(16);
        r0[3] = 1.0;
        r0[11] = -0.7;
        let f = &a * &r0;
        let base = SolverConfig {
            epsilon: 1e-4,
            max_iterations: 20_000,
            convergence_tol: 1e-10,
            ..SolverConfig::default()
        };
        let exact = solve_l1(&a, f.as_slice(), &base).unwrap();
        let admm = solve_l1(&a, f.as_slice(), &base.clone().with_method(L1Method::Admm)).unwrap();
        assert!(exact.converged);
        assert!(admm.residual_norm <= 1e-4 * f.norm() * (1.0 + 1e-12));
        assert!((admm.l1_norm - exact.l1_norm).abs() <= 1e-4 * exact.l1_norm);
    }

    #[test]
    fn method_names() {
        assert_eq!("admm".parse::<L1Method>().unwrap(), L1Method::Admm);
        assert_eq!("active-set".parse::<L1Method>().unwrap(), L1Method::ActiveSet);
        assert!("simplex".parse::<L1Method>().is_err());
    }
}
