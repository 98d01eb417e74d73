//! Linear arrays of isotropic elements and their far-field array factors.
//!
//! Positions are expressed in wavelengths, so the free-space phase term
//! `k d cos(theta)` becomes `2 pi (d / lambda) u` with `u = cos(theta)`.
//! Frequency never enters any computation.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lowest level reported by [`to_db`]; zeros and deep nulls clamp here.
pub const DB_FLOOR: f64 = -120.0;

/// One radiating element: position in wavelengths, real amplitude and phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementPlacement {
    pub position: f64,
    pub excitation: f64,
    #[serde(default)]
    pub phase: f64,
}

impl ElementPlacement {
    pub fn new(position: f64, excitation: f64) -> Self {
        Self {
            position,
            excitation,
            phase: 0.0,
        }
    }

    /// Element with a phased excitation. The phase is wrapped into `[-pi, pi)`.
    pub fn with_phase(position: f64, excitation: f64, phase: f64) -> Self {
        Self {
            position,
            excitation,
            phase: wrap_phase(phase),
        }
    }

    fn complex_excitation(&self) -> Complex64 {
        Complex64::from_polar(self.excitation, self.phase)
    }
}

fn wrap_phase(phase: f64) -> f64 {
    let wrapped = (phase + PI).rem_euclid(TAU) - PI;
    // rem_euclid can round up to exactly TAU
    if wrapped >= PI {
        -PI
    } else {
        wrapped
    }
}

/// Half of an array that is mirror-symmetric about the origin.
///
/// Only the elements at `d >= 0` are stored. An element at `d = 0` is the
/// physical center element; it is counted once physically but, following
/// the doubled cosine sum, contributes `2 R` to the array factor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricArray {
    half_elements: Vec<ElementPlacement>,
    has_center_element: bool,
}

impl SymmetricArray {
    pub fn new(half_elements: Vec<ElementPlacement>) -> Result<Self> {
        if half_elements.is_empty() {
            return Err(Error::NoElements);
        }
        for (index, el) in half_elements.iter().enumerate() {
            if !el.position.is_finite() || el.position < 0.0 {
                return Err(Error::InvalidArray(format!(
                    "element {index} has position {} (must be finite and >= 0)",
                    el.position
                )));
            }
            if !el.excitation.is_finite() {
                return Err(Error::InvalidExcitation {
                    index,
                    value: el.excitation,
                });
            }
        }
        if let Some(w) = half_elements
            .windows(2)
            .find(|w| w[1].position <= w[0].position)
        {
            return Err(Error::InvalidArray(format!(
                "positions must be strictly increasing ({} then {})",
                w[0].position, w[1].position
            )));
        }
        let has_center_element = half_elements[0].position == 0.0;
        Ok(Self {
            half_elements,
            has_center_element,
        })
    }

    /// Builds the half-array from parallel position and excitation slices.
    pub fn from_parts(positions: &[f64], excitations: &[f64]) -> Result<Self> {
        if positions.len() != excitations.len() {
            return Err(Error::DimensionMismatch {
                expected: positions.len(),
                found: excitations.len(),
            });
        }
        Self::new(
            positions
                .iter()
                .zip(excitations)
                .map(|(&p, &r)| ElementPlacement::new(p, r))
                .collect(),
        )
    }

    pub fn half_elements(&self) -> &[ElementPlacement] {
        &self.half_elements
    }

    pub fn has_center_element(&self) -> bool {
        self.has_center_element
    }

    /// Number of physical radiators in the full (mirrored) array.
    pub fn element_count(&self) -> usize {
        2 * self.half_elements.len() - usize::from(self.has_center_element)
    }

    pub fn positions(&self) -> Vec<f64> {
        self.half_elements.iter().map(|e| e.position).collect()
    }

    pub fn excitations(&self) -> Vec<f64> {
        self.half_elements.iter().map(|e| e.excitation).collect()
    }

    /// Explicit full array with signed positions, ordered by position.
    ///
    /// The center element (if any) appears once carrying `2 R`, which keeps
    /// the full sum identical to the doubled cosine sum.
    pub fn mirrored(&self) -> Vec<ElementPlacement> {
        let mut full = Vec::with_capacity(self.element_count());
        for el in self.half_elements.iter().rev() {
            if el.position > 0.0 {
                full.push(ElementPlacement { position: -el.position, ..*el });
            }
        }
        for el in &self.half_elements {
            if el.position == 0.0 {
                full.push(ElementPlacement {
                    excitation: 2.0 * el.excitation,
                    ..*el
                });
            } else {
                full.push(*el);
            }
        }
        full
    }

    /// Same geometry with every excitation multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            half_elements: self
                .half_elements
                .iter()
                .map(|e| ElementPlacement {
                    excitation: e.excitation * factor,
                    ..*e
                })
                .collect(),
            has_center_element: self.has_center_element,
        }
    }
}

/// Ordered pattern sample directions in `u = cos(theta)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleGrid {
    u_values: Vec<f64>,
}

impl AngleGrid {
    pub fn new(u_values: Vec<f64>) -> Result<Self> {
        if u_values.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 samples, got {}",
                u_values.len()
            )));
        }
        if let Some(u) = u_values.iter().find(|u| !(-1.0..=1.0).contains(*u)) {
            return Err(Error::InvalidGrid(format!("u = {u} outside [-1, 1]")));
        }
        if u_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("u values must be strictly increasing".into()));
        }
        Ok(Self { u_values })
    }

    /// `m` points evenly spaced from `start` to `end` inclusive.
    pub fn uniform(start: f64, end: f64, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 samples, got {m}")));
        }
        let span = end - start;
        let last = (m - 1) as f64;
        let u = (0..m)
            .map(|j| {
                if j == m - 1 {
                    end
                } else {
                    start + span * j as f64 / last
                }
            })
            .collect();
        Self::new(u)
    }

    /// `m` samples across `u` in `[0, 1]`. Symmetric patterns are even in `u`,
    /// so this half covers the whole visible region.
    pub fn half_space(m: usize) -> Result<Self> {
        Self::uniform(0.0, 1.0, m)
    }

    pub fn u_values(&self) -> &[f64] {
        &self.u_values
    }

    pub fn len(&self) -> usize {
        self.u_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u_values.is_empty()
    }

    /// Polar angle of each sample in degrees, `theta = acos(u)`.
    pub fn theta_deg(&self) -> Vec<f64> {
        self.u_values.iter().map(|u| u.acos().to_degrees()).collect()
    }

    /// Grid reflected through `u = 0`.
    pub fn reflected(&self) -> Self {
        Self {
            u_values: self.u_values.iter().rev().map(|u| -u).collect(),
        }
    }
}

/// Sampled array factor on an [`AngleGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    grid: AngleGrid,
    values: Vec<f64>,
    peak: f64,
}

impl Pattern {
    pub fn new(grid: AngleGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        Ok(Self { grid, values, peak })
    }

    pub fn grid(&self) -> &AngleGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn peak(&self) -> f64 {
        self.peak
    }

    pub fn to_db(&self) -> Result<Vec<f64>> {
        to_db(self)
    }
}

/// Normalized pattern in dB: `20 log10(|F| / peak)`, clamped at [`DB_FLOOR`].
pub fn to_db(pattern: &Pattern) -> Result<Vec<f64>> {
    if !(pattern.peak > 0.0) {
        return Err(Error::DegeneratePattern);
    }
    Ok(pattern
        .values
        .iter()
        .map(|v| {
            let ratio = v.abs() / pattern.peak;
            if ratio == 1.0 {
                0.0
            } else {
                (20.0 * ratio.log10()).max(DB_FLOOR)
            }
        })
        .collect())
}

/// Complex array factor `sum_i R_i exp(j 2 pi d_i u)` at every grid point.
pub fn array_factor_complex(
    elements: &[ElementPlacement],
    grid: &AngleGrid,
) -> Result<Vec<Complex64>> {
    if elements.is_empty() {
        return Err(Error::NoElements);
    }
    for (index, el) in elements.iter().enumerate() {
        if !el.excitation.is_finite() || !el.phase.is_finite() {
            return Err(Error::InvalidExcitation {
                index,
                value: el.excitation,
            });
        }
        if !el.position.is_finite() {
            return Err(Error::InvalidArray(format!(
                "element {index} has non-finite position"
            )));
        }
    }
    let weights: Vec<Complex64> = elements.iter().map(|e| e.complex_excitation()).collect();
    Ok(grid
        .u_values
        .iter()
        .map(|&u| {
            elements
                .iter()
                .zip(&weights)
                .map(|(el, w)| w * Complex64::cis(TAU * el.position * u))
                .sum()
        })
        .collect())
}

/// Array factor of an arbitrary element list.
///
/// When every imaginary part is negligible (`<= 1e-12` of the peak, as for
/// symmetric real-excited arrays) the signed real part is returned;
/// otherwise the magnitude.
pub fn array_factor_full(elements: &[ElementPlacement], grid: &AngleGrid) -> Result<Pattern> {
    let complex = array_factor_complex(elements, grid)?;
    let peak = complex.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    let real = complex.iter().all(|z| z.im.abs() <= 1e-12 * peak);
    let values = if real {
        complex.iter().map(|z| z.re).collect()
    } else {
        complex.iter().map(|z| z.norm()).collect()
    };
    Pattern::new(grid.clone(), values)
}

/// Array factor of a symmetric array: `F(u) = 2 sum_i R_i cos(2 pi d_i u)`.
pub fn array_factor_symmetric(array: &SymmetricArray, grid: &AngleGrid) -> Result<Pattern> {
    let values = grid
        .u_values
        .iter()
        .map(|&u| {
            2.0 * array
                .half_elements
                .iter()
                .map(|el| el.excitation * (TAU * el.position * u).cos())
                .sum::<f64>()
        })
        .collect();
    Pattern::new(grid.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(u: &[f64]) -> AngleGrid {
        AngleGrid::new(u.to_vec()).unwrap()
    }

    #[test]
    fn single_center_element_is_flat() {
        let g = AngleGrid::uniform(-1.0, 1.0, 11).unwrap();
        let p = array_factor_full(&[ElementPlacement::new(0.0, 1.0)], &g).unwrap();
        assert!(p.values().iter().all(|v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn quarter_wave_pair() {
        let pair = [ElementPlacement::new(-0.25, 1.0), ElementPlacement::new(0.25, 1.0)];
        let p = array_factor_full(&pair, &grid(&[0.0, 1.0])).unwrap();
        assert!((p.values()[0] - 2.0).abs() < 1e-15);
        assert!(p.values()[1].abs() < 1e-15);

        let half = SymmetricArray::from_parts(&[0.25], &[1.0]).unwrap();
        let s = array_factor_symmetric(&half, &grid(&[0.0, 1.0])).unwrap();
        assert!((s.values()[0] - 2.0).abs() < 1e-15);
        assert!(s.values()[1].abs() < 1e-15);
    }

    #[test]
    fn full_rejects_bad_input() {
        let g = grid(&[0.0, 1.0]);
        assert!(matches!(array_factor_full(&[], &g), Err(Error::NoElements)));
        let bad = [ElementPlacement::new(0.5, f64::NAN)];
        assert!(matches!(
            array_factor_full(&bad, &g),
            Err(Error::InvalidExcitation { index: 0, .. })
        ));
    }

    #[test]
    fn asymmetric_array_returns_magnitude() {
        let els = [ElementPlacement::new(0.0, 1.0), ElementPlacement::new(0.5, 1.0)];
        let p = array_factor_full(&els, &grid(&[0.0, 0.5])).unwrap();
        // |1 + exp(j pi/2)| = sqrt(2)
        assert!((p.values()[1] - 2f64.sqrt()).abs() < 1e-12);
        assert!(p.values().iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn db_examples() {
        let g3 = grid(&[0.0, 0.5, 1.0]);
        let p = Pattern::new(g3.clone(), vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(to_db(&p).unwrap(), vec![0.0, 0.0, 0.0]);

        let p = Pattern::new(grid(&[0.0, 1.0]), vec![1.0, 0.1]).unwrap();
        let db = to_db(&p).unwrap();
        assert_eq!(db[0], 0.0);
        assert!((db[1] + 20.0).abs() < 1e-12);

        let p = Pattern::new(g3.clone(), vec![2.0, 1.0, 0.0]).unwrap();
        let db = to_db(&p).unwrap();
        assert!((db[1] + 6.020599913279624).abs() < 1e-12);
        assert_eq!(db[2], DB_FLOOR);

        let zero = Pattern::new(g3, vec![0.0; 3]).unwrap();
        assert!(matches!(to_db(&zero), Err(Error::DegeneratePattern)));
    }

    #[test]
    fn symmetric_array_validation() {
        assert!(matches!(SymmetricArray::new(vec![]), Err(Error::NoElements)));
        assert!(SymmetricArray::from_parts(&[0.5, 0.5], &[1.0, 1.0]).is_err());
        assert!(SymmetricArray::from_parts(&[-0.5], &[1.0]).is_err());
        assert!(SymmetricArray::from_parts(&[0.5], &[f64::INFINITY]).is_err());

        let with_center = SymmetricArray::from_parts(&[0.0, 0.5, 1.0], &[1.0; 3]).unwrap();
        assert!(with_center.has_center_element());
        assert_eq!(with_center.element_count(), 5);
        assert_eq!(with_center.mirrored().len(), 5);

        let even = SymmetricArray::from_parts(&[0.25, 0.75], &[1.0; 2]).unwrap();
        assert!(!even.has_center_element());
        assert_eq!(even.element_count(), 4);
    }

    #[test]
    fn grid_validation() {
        assert!(AngleGrid::new(vec![0.0]).is_err());
        assert!(AngleGrid::new(vec![0.0, 1.5]).is_err());
        assert!(AngleGrid::new(vec![0.5, 0.5]).is_err());
        let g = AngleGrid::half_space(401).unwrap();
        assert_eq!(g.len(), 401);
        assert_eq!(g.u_values()[400], 1.0);
        assert!((g.theta_deg()[0] - 90.0).abs() < 1e-12);
    }

    #[test]
    fn phase_wraps_into_half_open_interval() {
        assert_eq!(ElementPlacement::with_phase(0.0, 1.0, PI).phase, -PI);
        assert!((ElementPlacement::with_phase(0.0, 1.0, 3.0 * PI / 2.0).phase + PI / 2.0).abs() < 1e-12);
    }
}
