//! Target arrays to synthesize against: Dolph-Chebyshev weights and the
//! published comparison tables.

use std::f64::consts::PI;
use std::path::Path;

use serde::Serialize;

use crate::array_model::{ElementPlacement, SymmetricArray};
use crate::error::{Error, Result};
use crate::table;

/// Uniform Dolph-Chebyshev array description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChebyshevSpec {
    pub n_elements: usize,
    /// Sidelobe level relative to the main beam, negative dB.
    pub sll_db: f64,
    /// Element spacing in wavelengths.
    pub spacing: f64,
}

impl ChebyshevSpec {
    pub fn new(n_elements: usize, sll_db: f64) -> Self {
        Self {
            n_elements,
            sll_db,
            spacing: 0.5,
        }
    }

    pub fn with_spacing(mut self, spacing: f64) -> Self {
        self.spacing = spacing;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_elements < 2 {
            return Err(Error::param("n_elements", format!("{} < 2", self.n_elements)));
        }
        if !(self.sll_db < 0.0) {
            return Err(Error::param("sll_db", format!("{} is not negative", self.sll_db)));
        }
        if !(self.spacing > 0.0) || !self.spacing.is_finite() {
            return Err(Error::param("spacing", format!("{} is not positive", self.spacing)));
        }
        Ok(())
    }
}

/// Chebyshev polynomial of the first kind, valid for any real argument.
pub(crate) fn chebyshev_t(order: usize, x: f64) -> f64 {
    let n = order as f64;
    if x.abs() <= 1.0 {
        (n * x.acos()).cos()
    } else {
        let sign = if x < 0.0 && order % 2 == 1 { -1.0 } else { 1.0 };
        sign * (n * x.abs().acosh()).cosh()
    }
}

/// Dolph-Chebyshev excitations for a uniform array, as a half-array.
///
/// The pattern `T_{N-1}(x0 cos(psi/2))` is sampled at the `N` points
/// `psi_k = 2 pi k / N` and the element weights are recovered with the
/// inverse transform on the (half-integer for even `N`) element indices.
/// Even `N` places elements at `spacing * (i - 1/2)`; odd `N` places a center
/// element at zero whose stored excitation is half the physical weight, so
/// the doubled cosine sum reproduces the pattern. Weights are normalized to
/// a maximum of 1.
pub fn chebyshev_excitations(spec: &ChebyshevSpec) -> Result<SymmetricArray> {
    spec.validate()?;
    let n = spec.n_elements;
    let order = n - 1;
    let ratio = 10f64.powf(-spec.sll_db / 20.0);
    let x0 = (ratio.acosh() / order as f64).cosh();

    let offset = order as f64 / 2.0;
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let psi = 2.0 * PI * k as f64 / n as f64;
            (psi, chebyshev_t(order, x0 * (psi / 2.0).cos()))
        })
        .collect();
    let weight = |index: usize| -> f64 {
        let shift = index as f64 - offset;
        samples
            .iter()
            .map(|(psi, v)| v * (shift * psi).cos())
            .sum::<f64>()
            / n as f64
    };

    let first = n / 2;
    let mut half: Vec<ElementPlacement> = (first..n)
        .map(|index| {
            let shift = index as f64 - offset;
            ElementPlacement::new(spec.spacing * shift, weight(index))
        })
        .collect();
    if n % 2 == 1 {
        half[0].excitation *= 0.5;
    }
    let max = half.iter().fold(0.0_f64, |m, e| m.max(e.excitation));
    for el in &mut half {
        el.excitation /= max;
    }
    SymmetricArray::new(half)
}

/// Taylor-Kaiser target: 15 tabulated half-array entries at 0..7 wavelengths
/// (29 physical elements).
pub fn taylor_kaiser_fixture() -> SymmetricArray {
    const EXCITATIONS: [f64; 15] = [
        1.0, 0.99328, 0.97329, 0.94063, 0.89622, 0.84132, 0.77748, 0.70645, 0.63017, 0.55065,
        0.46994, 0.39004, 0.31282, 0.24001, 0.17309,
    ];
    let positions: Vec<f64> = (0..15).map(|i| 0.5 * i as f64).collect();
    SymmetricArray::from_parts(&positions, &EXCITATIONS).expect("static fixture is valid")
}

/// A named reference array with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceFixture {
    pub name: String,
    pub source: String,
    pub array: SymmetricArray,
}

pub const BUILTIN_FIXTURES: [&str; 6] = [
    "chebyshev20_table1",
    "taylor_kaiser_table2_ref1",
    "matrix_pencil_table1_ref2",
    "matrix_pencil_table2_ref2",
    "compressive_table1_published",
    "compressive_table2_published",
];

fn tabulated(positions: &[f64], excitations: &[f64]) -> SymmetricArray {
    SymmetricArray::from_parts(positions, excitations).expect("static fixture is valid")
}

fn builtin(name: &str) -> Option<ReferenceFixture> {
    let (source, array) = match name {
        "chebyshev20_table1" => (
            "20-element Dolph-Chebyshev array, SLL -30 dB, half-wavelength spacing; \
             positions as tabulated, weights regenerated",
            chebyshev_excitations(&ChebyshevSpec::new(20, -30.0)).ok()?,
        ),
        "taylor_kaiser_table2_ref1" => (
            "29-element Taylor-Kaiser array (Orfanidis, Electromagnetic Waves and Antennas)",
            taylor_kaiser_fixture(),
        ),
        "matrix_pencil_table1_ref2" => (
            "matrix pencil result for the Chebyshev target (Liu, Nie, Liu 2008)",
            tabulated(
                &[0.0, 0.8206, 1.6381, 2.4481, 3.2432, 4.0071, 4.7145],
                &[1.0, 0.95818, 0.84113, 0.67176, 0.48115, 0.30046, 0.23345],
            ),
        ),
        "matrix_pencil_table2_ref2" => (
            "matrix pencil result for the Taylor-Kaiser target (Liu, Nie, Liu 2008)",
            tabulated(
                &[0.0, 0.8831, 1.7652, 2.6451, 3.5211, 4.3905, 5.2485, 6.0842],
                &[1.0, 0.97859, 0.91634, 0.81903, 0.69547, 0.55651, 0.4137, 0.27782],
            ),
        ),
        "compressive_table1_published" => (
            "published 12-element L1 synthesis of the Chebyshev target",
            tabulated(
                &[0.4, 1.2, 2.0, 2.8, 3.6, 4.5],
                &[1.0, 0.92947, 0.79514, 0.61428, 0.41719, 0.2409],
            ),
        ),
        "compressive_table2_published" => (
            "published 18-element L1 synthesis of the Taylor-Kaiser target",
            tabulated(
                &[0.4, 1.2, 2.0, 2.8, 3.6, 4.4, 5.2, 6.0, 6.8],
                &[1.0, 0.96431, 0.89689, 0.8045, 0.69429, 0.57146, 0.43998, 0.30694, 0.18562],
            ),
        ),
        _ => return None,
    };
    Some(ReferenceFixture {
        name: name.to_string(),
        source: source.to_string(),
        array,
    })
}

/// Loads a built-in fixture by name, or else an element-table file by path.
pub fn load_fixture(name_or_path: &str) -> Result<ReferenceFixture> {
    if let Some(fixture) = builtin(name_or_path) {
        return Ok(fixture);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(Error::UnknownFixture(name_or_path.to_string()));
    }
    let array = table::read_element_table(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| name_or_path.to_string());
    Ok(ReferenceFixture {
        name,
        source: path.display().to_string(),
        array,
    })
}
