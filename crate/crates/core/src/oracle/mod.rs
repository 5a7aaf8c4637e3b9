//! Independent ground truth for the closed forms: a brute-force census of
//! subalgebras and ideals through Hermite normal forms, and the sum over
//! elementary divisor types of the centre.

mod census;
mod hnf;
mod lie;
mod types;
mod typesum;

pub use census::{count, count_ideals, count_subalgebras, is_ideal, is_subalgebra, CensusKind, CensusRow};
pub use hnf::{compositions, hnf_enumerate, sublattice_count, CompositionLattices, HnfBasis};
pub use lie::LieRing;
pub use types::{elementary_divisor_type, formula_count, smith_diagonal, type_census, type_count_check, TypeVector};
pub use typesum::{
    closed_form_coefficients, closed_form_without_prefactor, typesum_coefficients, z_ir_closed, z_ir_direct,
};
