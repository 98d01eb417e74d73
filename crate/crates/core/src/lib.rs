//! Sparse linear antenna array synthesis.
//!
//! A reference pattern is sampled in `u = cos(theta)` and expanded over a
//! fine grid of candidate element positions. The L1-minimal expansion that
//! reproduces the pattern within a residual tolerance selects few grid
//! points, which become the elements of a thinned, nonuniformly spaced
//! symmetric array.
//!
//! ```
//! use sparse_array::reference::load_fixture;
//! use sparse_array::synthesis::{synthesize, SynthesisParams};
//!
//! let target = load_fixture("chebyshev20_table1").unwrap();
//! let report = synthesize(&target.array, &SynthesisParams::default()).unwrap();
//! assert!(report.n_sparse < target.array.element_count());
//! ```

// `!(x > 0.0)` is used on purpose so NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod array_model;
pub mod cli;
pub mod error;
pub mod metrics;
pub mod reference;
pub mod report;
pub mod synthesis;
pub mod table;
pub mod theory;

pub use error::{Error, Result};
