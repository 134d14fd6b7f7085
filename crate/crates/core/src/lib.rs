//! Weisfeiler filtrations and orders of infinitesimal Klein geometries.
//!
//! A pair `(𝔤, 𝔤₀)` of a finite-dimensional Lie algebra over ℚ and a
//! subalgebra carries the descending filtration
//! `𝔤₀ ⊇ 𝔤₁ ⊇ …` with `𝔤ₖ₊₁ = {x ∈ 𝔤ₖ : [x, 𝔤] ⊆ 𝔤ₖ}`. When the pair is
//! effective the chain reaches zero and the first index where it does is
//! the order of the pair. This crate computes that filtration exactly,
//! checks the structural bounds relating it to the lower central and
//! derived series, compares it with the jet filtration of polynomial
//! vector-field actions, and searches for stabilizers of large order.
//!
//! All arithmetic is exact; subspaces are kept in reduced row-echelon form
//! so equality is structural.

pub mod algebra;
pub mod catalog;
pub mod checks;
pub mod error;
pub mod filtration;
pub mod io;
pub mod jets;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod search;
pub mod series;
pub mod subspace;
pub mod tower;

pub use algebra::{validate_algebra, KleinPair, LieAlgebra, ValidationReport};
pub use error::{Error, Result};
pub use filtration::{effectivity_radical, is_effective, order, weisfeiler_filtration, Filtration};
pub use report::{CheckRecord, Report, Status};
pub use scalar::{Scalar, Vector};
pub use series::{classify, derived_series, killing_form, lower_central_series, Classification, SeriesChain};
pub use subspace::Subspace;
