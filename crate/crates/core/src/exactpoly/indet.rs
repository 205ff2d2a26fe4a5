use std::fmt;

use crate::error::{Error, Result};

/// Number of registered indeterminates; every [`super::Monomial`] carries one
/// exponent per slot.
pub const NUM_INDETS: usize = 10;

// (ascii name, display name); registration order fixes the monomial order.
const NAMES: [(&str, &str); NUM_INDETS] = [
    ("d", "∂"),
    ("l", "λ"),
    ("m", "μ"),
    ("x", "x"),
    ("y", "y"),
    ("n", "ν"),
    ("A", "A"),
    ("B", "B"),
    ("C", "C"),
    ("D", "D"),
];

/// A registered commuting indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Indet(u8);

impl Indet {
    /// The translation operator ∂.
    pub const D: Indet = Indet(0);
    pub const LAMBDA: Indet = Indet(1);
    pub const MU: Indet = Indet(2);
    /// Default variable of a conformal map.
    pub const X: Indet = Indet(3);
    /// Outer variable of a gc-bracket family.
    pub const Y: Indet = Indet(4);
    pub const NU: Indet = Indet(5);
    // Symbolic weights, used when an identity must hold for all (A, B, C, D).
    pub const COEFF_A: Indet = Indet(6);
    pub const COEFF_B: Indet = Indet(7);
    pub const COEFF_C: Indet = Indet(8);
    pub const COEFF_D: Indet = Indet(9);

    pub fn all() -> impl Iterator<Item = Indet> {
        (0..NUM_INDETS as u8).map(Indet)
    }

    /// Looks up an indeterminate by its ascii or display name.
    pub fn from_name(name: &str) -> Result<Indet> {
        NAMES
            .iter()
            .position(|(ascii, pretty)| *ascii == name || *pretty == name)
            .map(|i| Indet(i as u8))
            .ok_or_else(|| Error::UnknownIndet(name.to_string()))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn ascii(self) -> &'static str {
        NAMES[self.index()].0
    }

    pub fn pretty(self) -> &'static str {
        NAMES[self.index()].1
    }
}

impl fmt::Display for Indet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pretty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(Indet::from_name("d").unwrap(), Indet::D);
        assert_eq!(Indet::from_name("λ").unwrap(), Indet::LAMBDA);
        assert_eq!(Indet::X.ascii(), "x");
        assert!(matches!(Indet::from_name("q"), Err(Error::UnknownIndet(_))));
    }
}
