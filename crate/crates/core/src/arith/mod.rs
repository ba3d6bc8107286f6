//! Exact rational, polynomial and real algebraic arithmetic.

pub mod factor;
pub mod modp;
pub mod poly;
pub mod rational;
pub mod real_algebraic;
pub mod sturm;

pub use factor::{factor_over_q, is_irreducible, Factorization};
pub use poly::{parse_fraction, parse_polynomial, Polynomial};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use real_algebraic::{isolate_real_roots, sign_at, RealAlgebraic};
pub use sturm::{real_root_count, sturm_count};
