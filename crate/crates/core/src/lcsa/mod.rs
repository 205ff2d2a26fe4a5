//! ℤ₂-graded free ℚ[∂]-modules and Lie conformal superalgebras given by
//! generator-level structure constants.

mod algebra;
mod builders;
mod center;
mod direct_sum;
mod element;
mod parity;

pub use algebra::{Algebra, AlgebraBuilder};
pub use builders::{build_named, LieSuperalgebra, NamedAlgebra};
pub use center::{center, SubspaceBasis};
pub use direct_sum::{direct_sum, DirectSum};
pub use element::{Element, Signature};
pub use parity::Parity;
