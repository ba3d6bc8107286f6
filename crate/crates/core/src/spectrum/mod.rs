//! Sign-function groups on real spectra of the supported fields.

pub mod field;
pub mod function;
pub mod sign;
pub mod step;
pub mod twist;

pub use field::{Base, FieldDesc, FieldElem};
pub use function::{ClosedPoint, Factor, Place, RationalFunction};
pub use sign::{orderings_of, zeta, zeta_function, Body, SignVector};
pub use step::{Cut, StepFunction};
pub use twist::{BasisToken, TwistedClass};
