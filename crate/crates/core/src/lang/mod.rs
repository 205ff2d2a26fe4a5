//! The `.lcsa` input language.
//!
//! ```text
//! // Neveu-Schwarz
//! algebra NS {
//!     generator L even;
//!     generator G odd;
//!     bracket [L, L] = (d + 2*l) L;
//!     bracket [L, G] = (d + 3/2*l) G;
//!     bracket [G, G] = 2 L;
//! }
//! algebra Vir = builtin virasoro;
//! algebra Pair = direct_sum(NS, NS);
//! map sign : NS -> NS { L |-> L; G |-> -G; } parity even;
//! ```
//!
//! `d`, `l`, `m` and `x` stand for ∂, λ, μ and the map variable; the Unicode
//! letters are accepted too. Bracket values may use `d` and `l`, map images
//! `d` and `x`. Unlisted bracket pairs are completed by skew-symmetry.
//! Comments run from `//` to the end of the line.

mod parse;
mod print;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactpoly::Indet;
use crate::lcsa::{Algebra, Element, Parity};
use crate::maps::{ConformalMap, ModuleHom};

pub use parse::{parse, parse_element};
pub use print::print_model;

/// A map block as written: generator images in the target algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct MapDef {
    pub name: String,
    pub source: String,
    pub target: String,
    pub parity: Parity,
    pub images: Vec<Element>,
}

/// Everything defined in one source file, in definition order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Model {
    pub algebras: Vec<(String, Arc<Algebra>)>,
    pub maps: Vec<MapDef>,
}

impl Model {
    pub fn is_empty(&self) -> bool {
        self.algebras.is_empty() && self.maps.is_empty()
    }

    pub fn algebra(&self, name: &str) -> Result<Arc<Algebra>> {
        self.algebras
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a.clone())
            .ok_or_else(|| Error::UnknownName(format!("algebra `{name}`")))
    }

    pub fn map(&self, name: &str) -> Result<&MapDef> {
        self.maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::UnknownName(format!("map `{name}`")))
    }

    /// The named map as a ∂-linear map between its algebras.
    pub fn module_hom(&self, name: &str) -> Result<ModuleHom> {
        let m = self.map(name)?;
        ModuleHom::new(self.algebra(&m.source)?, self.algebra(&m.target)?, m.parity, m.images.clone())
    }

    /// The named map as a conformal map with variable x; source and target
    /// must coincide.
    pub fn conformal_map(&self, name: &str) -> Result<ConformalMap> {
        let m = self.map(name)?;
        if m.source != m.target {
            return Err(Error::SpaceMismatch(format!(
                "map `{name}` goes from {} to {}; a conformal map needs one algebra",
                m.source, m.target
            )));
        }
        let alg = self.algebra(&m.source)?;
        ConformalMap::new(alg.sig(), m.parity, Indet::X, m.images.clone())
    }
}
