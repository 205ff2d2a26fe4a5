//! Conformal linear maps, adjoint maps with the gc-bracket, and
//! ∂-linear maps between algebras.

mod conformal;
mod hom;

pub use conformal::{ad, ad_with_var, gc_bracket, ConformalMap};
pub use hom::{AutomorphismCertificate, HomKind, ModuleHom};
