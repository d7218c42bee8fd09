//! Exact condensation engine for continuous-variable stabilizer codes obtained
//! by condensing bosons in a two-dimensional ℝ gauge theory.
//!
//! Flux is measured in units of 2π throughout, so every phase is a fraction
//! of a full turn and exact arithmetic lives in `ℚ(√d)`.

// index loops mirror the matrix notation; error payloads carry exact scalars;
// `!(x > 0.0)` deliberately rejects NaN
#![allow(clippy::needless_range_loop, clippy::result_large_err, clippy::large_enum_variant, clippy::neg_cmp_op_on_partial_ord)]

pub mod anyon;
pub mod arith;
pub mod condense;
pub mod domain;
pub mod finite;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod spectral;

pub use anyon::{braiding, spin, FluxCharge};
pub use arith::{ArithError, PhaseFraction, Surd};
pub use condense::{condense, CondensationOutcome, CondenseError, EncodedFactor, Taxonomy};
pub use finite::{AnyonLabel, FiniteAnyonTheory};
pub use lattice::code::LatticeCode;
pub use lattice::geometry::{Displacement, Edge, Torus};
pub use lattice::hopping::{synthesize_hopping, HoppingPattern};
pub use lattice::logical::{logical_operators, HomologyBasis, LogicalContent};
pub use lattice::LatticeError;
pub use report::{render, run, Mode, Report, RunConfig};
pub use spectral::SpectralError;
