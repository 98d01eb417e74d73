//! Sparse array synthesis as L1 recovery over a fine grid of candidate
//! element positions.
//!
//! A target pattern sampled at `m` directions is expanded over `n` candidate
//! positions `d_i` on `(0, x_max]` with the symmetric-array dictionary
//! `A[j][i] = 2 cos(2 pi d_i u_j)`. The L1-minimal excitation vector within a
//! residual ball selects a handful of columns, which become the elements of
//! a thinned, nonuniformly spaced array.

mod solver;

pub use solver::{solve_l1, solve_l2_baseline, L1Method, SolverConfig, SparseSolution};

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::array_model::{array_factor_symmetric, AngleGrid, ElementPlacement, Pattern, SymmetricArray};
use crate::error::{Error, Result};
use crate::metrics::{self, PatternMetrics};

/// Candidate element positions `d_i = i * pitch`, `i = 1..=n`, with
/// `n = ceil(x_max / step)` and `pitch = x_max / n` (equal to `step`
/// whenever `x_max` is a multiple of it). The origin is excluded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositionGrid {
    x_max: f64,
    step: f64,
    positions: Vec<f64>,
}

impl PositionGrid {
    pub fn new(x_max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::param("step", format!("{step} must be positive")));
        }
        if !(x_max >= step) || !x_max.is_finite() {
            return Err(Error::param("x_max", format!("{x_max} must be at least step ({step})")));
        }
        let ratio = x_max / step;
        // absorb representation error such as 10 / 0.1 = 100.00000000000001
        let n = if (ratio - ratio.round()).abs() <= 1e-9 * ratio {
            ratio.round() as usize
        } else {
            ratio.ceil() as usize
        };
        let pitch = x_max / n as f64;
        let positions = (1..=n)
            .map(|i| if i == n { x_max } else { i as f64 * pitch })
            .collect();
        Ok(Self {
            x_max,
            step,
            positions,
        })
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// The real `m x n` sensing matrix together with the grids that index it.
#[derive(Debug, Clone)]
pub struct Dictionary {
    matrix: DMatrix<f64>,
    row_grid: AngleGrid,
    col_grid: PositionGrid,
}

impl Dictionary {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn row_grid(&self) -> &AngleGrid {
        &self.row_grid
    }

    pub fn col_grid(&self) -> &PositionGrid {
        &self.col_grid
    }

    pub fn solve_l1(&self, f: &[f64], config: &SolverConfig) -> Result<SparseSolution> {
        solve_l1(&self.matrix, f, config)
    }

    pub fn solve_l2_baseline(&self, f: &[f64]) -> Result<SparseSolution> {
        solve_l2_baseline(&self.matrix, f)
    }

    /// `A r` as a pattern on the row grid.
    pub fn pattern_of(&self, coefficients: &[f64]) -> Result<Pattern> {
        if coefficients.len() != self.matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.ncols(),
                found: coefficients.len(),
            });
        }
        let r = nalgebra::DVector::from_column_slice(coefficients);
        let values = &self.matrix * r;
        Pattern::new(self.row_grid.clone(), values.as_slice().to_vec())
    }
}

pub fn build_dictionary(pos_grid: &PositionGrid, angle_grid: &AngleGrid) -> Result<Dictionary> {
    if pos_grid.is_empty() || angle_grid.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    let u = angle_grid.u_values();
    let d = pos_grid.positions();
    let matrix = DMatrix::from_fn(u.len(), d.len(), |j, i| 2.0 * (TAU * d[i] * u[j]).cos());
    Ok(Dictionary {
        matrix,
        row_grid: angle_grid.clone(),
        col_grid: pos_grid.clone(),
    })
}

/// Target vector `f_j = F(u_j)` of a symmetric reference array.
pub fn sample_target(reference: &SymmetricArray, angle_grid: &AngleGrid) -> Result<Vec<f64>> {
    Ok(array_factor_symmetric(reference, angle_grid)?.values().to_vec())
}

/// Element-extraction settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extraction {
    /// Coefficients below `threshold_rel * max |r|` are discarded.
    pub threshold_rel: f64,
    /// Survivors whose column indices differ by at most this many steps merge.
    pub merge_gap: usize,
}

impl Default for Extraction {
    fn default() -> Self {
        Self {
            threshold_rel: 1e-3,
            merge_gap: 1,
        }
    }
}

/// Turns a coefficient vector into physical elements.
///
/// Small coefficients are dropped, runs of nearby survivors merge into one
/// element at their magnitude-weighted centroid carrying the summed
/// excitation, and the result is scaled so the largest excitation is `+1`.
pub fn extract_sparse_array(
    solution: &SparseSolution,
    col_grid: &PositionGrid,
    extraction: &Extraction,
) -> Result<SymmetricArray> {
    let r = &solution.coefficients;
    if r.len() != col_grid.len() {
        return Err(Error::DimensionMismatch {
            expected: col_grid.len(),
            found: r.len(),
        });
    }
    if !(extraction.threshold_rel >= 0.0) {
        return Err(Error::param("threshold", "must be non-negative"));
    }
    let max = r.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    if max == 0.0 {
        return Err(Error::NoSurvivors);
    }
    let cut = extraction.threshold_rel * max;
    let survivors: Vec<usize> = (0..r.len()).filter(|&i| r[i] != 0.0 && r[i].abs() >= cut).collect();
    if survivors.is_empty() {
        return Err(Error::NoSurvivors);
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in survivors {
        match groups.last_mut() {
            Some(g) if i - g[g.len() - 1] <= extraction.merge_gap => g.push(i),
            _ => groups.push(vec![i]),
        }
    }

    let d = col_grid.positions();
    let mut elements: Vec<ElementPlacement> = groups
        .iter()
        .map(|g| {
            let weight: f64 = g.iter().map(|&i| r[i].abs()).sum();
            let centroid = g.iter().map(|&i| r[i].abs() * d[i]).sum::<f64>() / weight;
            let excitation = g.iter().map(|&i| r[i]).sum();
            ElementPlacement::new(centroid, excitation)
        })
        .collect();

    let lead = elements
        .iter()
        .map(|e| e.excitation)
        .fold(0.0_f64, |m, e| if e.abs() > m.abs() { e } else { m });
    if lead == 0.0 {
        return Err(Error::NoSurvivors);
    }
    for el in &mut elements {
        el.excitation /= lead;
    }
    SymmetricArray::new(elements)
}

/// Everything needed for one synthesis run besides the reference array.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthesisParams {
    pub x_max: f64,
    pub step: f64,
    /// Pattern samples over `u` in `[0, 1]`.
    pub samples: usize,
    pub solver: SolverConfig,
    pub extraction: Extraction,
    /// dB floor below which pattern comparisons ignore the reference.
    pub floor_db: f64,
}

impl Default for SynthesisParams {
    fn default() -> Self {
        Self {
            x_max: 10.0,
            step: 0.1,
            samples: 401,
            solver: SolverConfig::default(),
            extraction: Extraction::default(),
            floor_db: metrics::DEFAULT_FLOOR_DB,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverDiagnostics {
    pub method: L1Method,
    pub converged: bool,
    pub iterations_used: usize,
    pub residual_norm: f64,
    pub relative_residual: f64,
    pub l1_norm: f64,
    pub multiplier: Option<f64>,
    pub diagnostic: Option<String>,
}

/// L1 versus minimum-norm L2 coefficient counts on the same instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SparsityContrast {
    pub threshold_rel: f64,
    pub l1_surviving: usize,
    pub l2_surviving: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct SynthesisReport {
    pub params: SynthesisParams,
    pub reference: SymmetricArray,
    pub columns: usize,
    pub solution: SparseSolution,
    pub sparse_array: SymmetricArray,
    pub target_pattern: Pattern,
    /// Pattern of the raw coefficient vector, `A r`.
    pub solution_pattern: Pattern,
    /// Pattern of the extracted physical array.
    pub synthesized_pattern: Pattern,
    pub target_sidelobe_db: Option<f64>,
    pub metrics: PatternMetrics,
    /// Max dB deviation of the extracted array from `A r` above the floor.
    pub extraction_max_dev_db: f64,
    pub n_uniform: usize,
    pub n_sparse: usize,
    pub reduction_percent: f64,
    pub diagnostics: SolverDiagnostics,
    pub contrast: SparsityContrast,
}

/// Runs the full pipeline: dictionary, target sampling, L1 solve, element
/// extraction and quality metrics.
pub fn synthesize(reference: &SymmetricArray, params: &SynthesisParams) -> Result<SynthesisReport> {
    let stage = |name: &'static str| move |e: Error| e.in_stage(name);

    let angle_grid = AngleGrid::half_space(params.samples).map_err(stage("grid"))?;
    let pos_grid = PositionGrid::new(params.x_max, params.step).map_err(stage("grid"))?;
    let dict = build_dictionary(&pos_grid, &angle_grid).map_err(stage("dictionary"))?;
    let f = sample_target(reference, &angle_grid).map_err(stage("target"))?;

    let solution = dict.solve_l1(&f, &params.solver).map_err(stage("solve"))?;
    let baseline = dict.solve_l2_baseline(&f).map_err(stage("baseline"))?;
    let sparse_array =
        extract_sparse_array(&solution, &pos_grid, &params.extraction).map_err(stage("extract"))?;

    let target_pattern = Pattern::new(angle_grid.clone(), f.clone()).map_err(stage("metrics"))?;
    let solution_pattern = dict.pattern_of(&solution.coefficients).map_err(stage("metrics"))?;
    let synthesized_pattern =
        array_factor_symmetric(&sparse_array, &angle_grid).map_err(stage("metrics"))?;

    let metrics = metrics::pattern_metrics(&target_pattern, &synthesized_pattern, params.floor_db)
        .map_err(stage("metrics"))?;
    let (_, extraction_max_dev_db) =
        metrics::pattern_deviation(&solution_pattern, &synthesized_pattern, params.floor_db)
            .map_err(stage("metrics"))?;
    let target_sidelobe_db = metrics::peak_sidelobe_level(&target_pattern).ok();

    let n_uniform = reference.element_count();
    let n_sparse = sparse_array.element_count();
    let reduction_percent = if n_sparse <= n_uniform {
        metrics::element_reduction(n_uniform, n_sparse).map_err(stage("metrics"))?
    } else {
        -100.0 * (n_sparse - n_uniform) as f64 / n_uniform as f64
    };

    let threshold = params.extraction.threshold_rel;
    let l1_surviving = solution.surviving_count(threshold);
    let l2_surviving = baseline.surviving_count(threshold);
    let contrast = SparsityContrast {
        threshold_rel: threshold,
        l1_surviving,
        l2_surviving,
        ratio: if l2_surviving == 0 {
            f64::INFINITY
        } else {
            l1_surviving as f64 / l2_surviving as f64
        },
    };

    let f_norm = f.iter().map(|v| v * v).sum::<f64>().sqrt();
    let diagnostics = SolverDiagnostics {
        method: params.solver.method,
        converged: solution.converged,
        iterations_used: solution.iterations_used,
        residual_norm: solution.residual_norm,
        relative_residual: if f_norm > 0.0 { solution.residual_norm / f_norm } else { 0.0 },
        l1_norm: solution.l1_norm,
        multiplier: solution.multiplier,
        diagnostic: solution.diagnostic.clone(),
    };

    Ok(SynthesisReport {
        params: params.clone(),
        reference: reference.clone(),
        columns: pos_grid.len(),
        solution,
        sparse_array,
        target_pattern,
        solution_pattern,
        synthesized_pattern,
        target_sidelobe_db,
        metrics,
        extraction_max_dev_db,
        n_uniform,
        n_sparse,
        reduction_percent,
        diagnostics,
        contrast,
    })
}
