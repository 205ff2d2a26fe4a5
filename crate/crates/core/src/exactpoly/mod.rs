//! Exact rational arithmetic, polynomials in named commuting indeterminates,
//! and homogeneous linear solving over ℚ.
//!
//! Everything downstream (brackets, conformal maps, derivation solvers) is
//! expressed as identities between [`Poly`] values, so equality here is
//! structural: polynomials are kept in a canonical graded-lexicographic form
//! with no zero coefficients.

mod indet;
mod linsys;
mod poly;
mod rational;

pub use indet::{Indet, NUM_INDETS};
pub use linsys::{nullspace, rank, rref, LinSystem};
pub use poly::{Monomial, Poly};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
