//! The real Gersten-type complex of curves and points.

pub mod complex;
pub mod iso;
pub mod realize;
pub mod scheme;
pub mod support;

pub use complex::{
    assemble, cochain0, cohomology, cohomology_with_support, default_support, differential, h0, h1, point_of_real,
    pushforward_proper, stabilization_check, Assembly, Cochain0, Cochain1,
};
pub use iso::{sign_iso_check, SignIsoReport};
pub use realize::{height_bound, realize_in_colimit, realize_sign_pattern, realize_with_bound, sign_pattern_element};
pub use scheme::{Bundle, DualizingData, SchemeSpec};
pub use support::{support_cohomology, SupportCohomology};
