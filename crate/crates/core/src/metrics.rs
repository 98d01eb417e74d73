//! Pattern quality measures: sidelobe level, pattern deviation and element savings.

use serde::Serialize;

use crate::array_model::Pattern;
use crate::error::{Error, Result};

/// Reference levels below this are excluded from pattern comparisons.
pub const DEFAULT_FLOOR_DB: f64 = -50.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PatternMetrics {
    pub peak_sidelobe_db: f64,
    pub main_lobe_peak_u: f64,
    pub rmse_db: f64,
    pub max_dev_db: f64,
    pub n_lobes: usize,
}

/// Index range `[left, right]` of the lobe holding the global maximum of `|F|`.
///
/// The lobe extends downhill from the peak to the adjacent local minima. A
/// flat minimum belongs to the main lobe only up to its leftmost sample.
fn main_lobe(mag: &[f64]) -> (usize, usize) {
    let peak = mag
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v > mag[best] { i } else { best });
    let mut left = peak;
    while left > 0 && mag[left - 1] <= mag[left] {
        left -= 1;
    }
    let mut right = peak;
    while right + 1 < mag.len() && mag[right + 1] <= mag[right] {
        right += 1;
    }
    while right > peak && mag[right - 1] == mag[right] {
        right -= 1;
    }
    (left, right)
}

fn magnitudes(pattern: &Pattern) -> Vec<f64> {
    pattern.values().iter().map(|v| v.abs()).collect()
}

/// Local maxima of `|F|`, endpoints included when they exceed their neighbor.
/// A plateau counts once, at its leftmost sample.
fn local_maxima(mag: &[f64]) -> Vec<usize> {
    let n = mag.len();
    let mut peaks = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && mag[j + 1] == mag[i] {
            j += 1;
        }
        let rises = i == 0 || mag[i - 1] < mag[i];
        let falls = j == n - 1 || mag[j + 1] < mag[j];
        if rises && falls && !(i == 0 && j == n - 1) {
            peaks.push(i);
        }
        i = j + 1;
    }
    peaks
}

/// Every sidelobe peak outside the main lobe as `(index, level_db)`.
pub fn sidelobe_peaks(pattern: &Pattern) -> Result<Vec<(usize, f64)>> {
    let mag = magnitudes(pattern);
    let peak = pattern.peak();
    if peak == 0.0 {
        return Err(Error::DegeneratePattern);
    }
    let (left, right) = main_lobe(&mag);
    let peaks: Vec<(usize, f64)> = local_maxima(&mag)
        .into_iter()
        .filter(|&i| (i < left || i > right) && mag[i] > 0.0)
        .map(|i| (i, 20.0 * (mag[i] / peak).log10()))
        .collect();
    if peaks.is_empty() {
        return Err(Error::NoSidelobes);
    }
    Ok(peaks)
}

/// Level in dB of the largest lobe outside the main lobe.
pub fn peak_sidelobe_level(pattern: &Pattern) -> Result<f64> {
    let peaks = sidelobe_peaks(pattern)?;
    Ok(peaks.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max))
}

/// RMS and maximum absolute difference of two normalized dB patterns,
/// taken only where the reference `a` is at or above `floor_db`.
pub fn pattern_deviation(a: &Pattern, b: &Pattern, floor_db: f64) -> Result<(f64, f64)> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch);
    }
    let da = a.to_db()?;
    let db = b.to_db()?;
    let mut sum_sq = 0.0;
    let mut max_dev = 0.0_f64;
    let mut count = 0usize;
    for (x, y) in da.iter().zip(&db) {
        if *x >= floor_db {
            let dev = (x - y).abs();
            sum_sq += dev * dev;
            max_dev = max_dev.max(dev);
            count += 1;
        }
    }
    let rmse = if count == 0 { 0.0 } else { (sum_sq / count as f64).sqrt() };
    Ok((rmse, max_dev))
}

/// Percentage of elements saved relative to the uniform array.
pub fn element_reduction(n_uniform: usize, n_sparse: usize) -> Result<f64> {
    if n_sparse == 0 {
        return Err(Error::param("n_sparse", "must be at least 1"));
    }
    if n_sparse > n_uniform {
        return Err(Error::param(
            "n_sparse",
            format!("{n_sparse} exceeds the uniform count {n_uniform}"),
        ));
    }
    Ok(100.0 * (n_uniform - n_sparse) as f64 / n_uniform as f64)
}

/// Summary metrics of `candidate` measured against `reference`.
pub fn pattern_metrics(reference: &Pattern, candidate: &Pattern, floor_db: f64) -> Result<PatternMetrics> {
    let (rmse_db, max_dev_db) = pattern_deviation(reference, candidate, floor_db)?;
    let mag = magnitudes(candidate);
    let (left, right) = main_lobe(&mag);
    let peak_index = (left..=right)
        .max_by(|&i, &j| mag[i].total_cmp(&mag[j]).then(j.cmp(&i)))
        .unwrap_or(left);
    let peak_sidelobe_db = match peak_sidelobe_level(candidate) {
        Ok(v) => v,
        Err(Error::NoSidelobes) => f64::NEG_INFINITY,
        Err(e) => return Err(e),
    };
    Ok(PatternMetrics {
        peak_sidelobe_db,
        main_lobe_peak_u: candidate.grid().u_values()[peak_index],
        rmse_db,
        max_dev_db,
        n_lobes: local_maxima(&mag).len().max(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array_model::AngleGrid;

    fn pattern(values: Vec<f64>) -> Pattern {
        let g = AngleGrid::half_space(values.len()).unwrap();
        Pattern::new(g, values).unwrap()
    }

    #[test]
    fn equal_lobes_give_zero_db() {
        let g = AngleGrid::half_space(201).unwrap();
        let v = g.u_values().iter().map(|u| (std::f64::consts::PI * u).cos().abs()).collect();
        let p = Pattern::new(g, v).unwrap();
        assert!(peak_sidelobe_level(&p).unwrap().abs() < 1e-12);
    }

    #[test]
    fn monotone_pattern_has_no_sidelobes() {
        let p = pattern(vec![1.0, 0.8, 0.5, 0.2, 0.1]);
        assert!(matches!(peak_sidelobe_level(&p), Err(Error::NoSidelobes)));
        let flat_tail = pattern(vec![1.0, 0.5, 0.0, 0.0, 0.0]);
        assert!(matches!(peak_sidelobe_level(&flat_tail), Err(Error::NoSidelobes)));
    }

    #[test]
    fn sidelobe_found_past_plateau_minimum() {
        let p = pattern(vec![1.0, 0.5, 0.1, 0.1, 0.3, 0.2]);
        let level = peak_sidelobe_level(&p).unwrap();
        assert!((level - 20.0 * 0.3f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn rising_edge_counts_as_lobe() {
        let p = pattern(vec![0.3, 0.2, 0.6, 1.0, 0.4, 0.05, 0.1, 0.25]);
        let peaks = sidelobe_peaks(&p).unwrap();
        assert_eq!(peaks.iter().map(|p| p.0).collect::<Vec<_>>(), vec![0, 7]);
        assert!((peak_sidelobe_level(&p).unwrap() - 20.0 * 0.3f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn deviation_cases() {
        let a = pattern(vec![1.0, 0.5, 0.001, 0.2]);
        assert_eq!(pattern_deviation(&a, &a, -50.0).unwrap(), (0.0, 0.0));
        let scaled = pattern(a.values().iter().map(|v| 3.0 * v).collect());
        let (rmse, max) = pattern_deviation(&a, &scaled, -50.0).unwrap();
        assert!(rmse < 1e-12 && max < 1e-12);

        let b = pattern(vec![1.0, 0.5, 0.5, 0.2]);
        // the 0.001 sample is -60 dB, below the floor
        assert_eq!(pattern_deviation(&a, &b, -50.0).unwrap(), (0.0, 0.0));

        let other = Pattern::new(AngleGrid::uniform(-1.0, 1.0, 4).unwrap(), vec![1.0; 4]).unwrap();
        assert!(matches!(pattern_deviation(&a, &other, -50.0), Err(Error::GridMismatch)));
    }

    #[test]
    fn reduction_percentages() {
        assert_eq!(element_reduction(20, 12).unwrap(), 40.0);
        assert!((element_reduction(29, 18).unwrap() - 37.931_034_482_758_62).abs() < 1e-12);
        assert_eq!(element_reduction(7, 7).unwrap(), 0.0);
        assert!(element_reduction(10, 11).is_err());
        assert!(element_reduction(10, 0).is_err());
    }
}
