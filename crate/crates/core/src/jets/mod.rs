//! Polynomial vector fields on ℚⁿ, their jets at a rational point, and the
//! jet filtration of a finite-dimensional family of fields.

mod action;
mod field;
mod polynomial;

pub use action::{
    abstract_pair, check_jet_agreement, check_transitivity, default_k_max, jet_filtration,
    structure_constants_from_fields, ActionFamily, JetFiltration,
};
pub use field::{jet_of, vf_bracket, Jet, PolyVectorField};
pub use polynomial::{multi_indices, Exponents, Polynomial};
