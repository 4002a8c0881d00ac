//! The derived quotient `A/^L AeA`: its bar model, cohomology with products,
//! an independent Tor oracle, the periodicity class and an experimental
//! Hochschild `HH^0`.

pub(crate) mod bar;
mod cohomology;
mod eta;
mod hh0;
mod tor;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use bar::{build_bar, element_label, BarModel, BarOptions, BarTruncation, Tensor, DEFAULT_DIMENSION_CAP};
pub use cohomology::{cohomology, cohomology_with, Components, Detail};
pub use eta::{find_eta, PeriodicityClass};
pub use hh0::{hh0_experimental, Hh0Report};
pub use tor::{h_minus_one_kernel, tensor_over, tor_oracle, HMinusOneKernel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivedError {
    #[error("depth must be at least 1 (got {0})")]
    BadDepth(usize),
    #[error("B^-{degree} would have dimension {dim}, above the cap of {cap}")]
    DimensionBlowup { degree: usize, dim: u64, cap: usize },
    #[error("window [-{window}, 0] needs depth at least {}, but the truncation has depth {depth}", window + 1)]
    WindowExceedsDepth { window: usize, depth: usize },
    #[error("d^-{degree} is {rows}x{cols}, too large to export densely")]
    ExportTooLarge { degree: usize, rows: usize, cols: usize },
    #[error("H^0 is not local")]
    NotLocal,
    #[error("no periodicity class verifies on [-{window}, 0]: {reason}")]
    NoPeriodicityClass { window: usize, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
