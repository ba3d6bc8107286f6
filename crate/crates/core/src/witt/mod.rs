//! Quadratic forms, Witt-ring operations, residues and transfers.

pub mod form;
pub mod pfister;
pub mod rational;
pub mod residue;
pub mod transfer;

pub use form::{diagonalize, diagonalize_with_basis, total_signature, witt_product, witt_sum, QuadForm, TwistedForm};
pub use pfister::{pfister_signature, shift_by_minus_one, PfisterElement};
pub use rational::{
    anisotropic_part_q, hasse_invariant, hilbert_symbol, is_isotropic_q, isometric_q, witt_equivalent_q, QPlace,
};
pub use residue::{rost_schmid_differential, second_residue, Curve};
pub use transfer::{scharlau_transfer, trace_form};
