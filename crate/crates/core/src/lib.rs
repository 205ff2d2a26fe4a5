//! Exact computations with finite Lie conformal superalgebras.
//!
//! An algebra is a free ℤ₂-graded ℚ[∂]-module of finite rank together with
//! generator-level λ-brackets. On top of that this crate provides the
//! extended λ-bracket, axiom checks, conformal linear maps and the gc-bracket,
//! predicates for conformal derivations and their triple/centroid/(A,B,C,D)
//! variants, degree-bounded solvers for the corresponding spaces, triple
//! homomorphism checks, and a small text format (`.lcsa`) for describing
//! algebras and maps.

pub mod basis_file;
pub mod derivations;
mod error;
pub(crate) mod matching;
pub mod exactpoly;
pub mod homs;
pub mod lang;
pub mod lcsa;
pub mod maps;
pub mod report;

pub use error::{Error, Result};
pub use exactpoly::{Indet, Poly, Rational};
pub use lcsa::{Algebra, Element, Parity, Signature};
pub use maps::{ConformalMap, ModuleHom};
