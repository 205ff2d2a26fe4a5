use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactpoly::{Indet, Monomial, Poly, Rational};
use crate::lcsa::{Element, Parity, Signature};
use crate::maps::ConformalMap;

/// One unknown coefficient: the coefficient of `∂^d_exp x^x_exp` in the
/// `target` coordinate of the image of `source`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnsatzKey {
    pub source: usize,
    pub target: usize,
    pub d_exp: u16,
    pub x_exp: u16,
}

/// All conformal maps of a given parity whose image coefficients have total
/// degree at most `bound` in ∂ and x. Unknowns are ordered by
/// `(source, target, d_exp, x_exp)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ansatz {
    sig: Signature,
    parity: Parity,
    bound: u16,
    keys: Vec<AnsatzKey>,
    index: BTreeMap<AnsatzKey, usize>,
}

impl Ansatz {
    pub fn new(sig: &Signature, parity: Parity, bound: u16) -> Self {
        let mut keys = Vec::new();
        for source in 0..sig.rank() {
            for target in 0..sig.rank() {
                if sig.parity(target) != parity + sig.parity(source) {
                    continue;
                }
                for d_exp in 0..=bound {
                    for x_exp in 0..=(bound - d_exp) {
                        keys.push(AnsatzKey {
                            source,
                            target,
                            d_exp,
                            x_exp,
                        });
                    }
                }
            }
        }
        let index = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        Ansatz {
            sig: sig.clone(),
            parity,
            bound,
            keys,
            index,
        }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn bound(&self) -> u16 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[AnsatzKey] {
        &self.keys
    }

    pub fn position(&self, key: &AnsatzKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    fn monomial(key: &AnsatzKey) -> Monomial {
        Monomial::from_exps(&[(Indet::D, key.d_exp), (Indet::X, key.x_exp)])
    }

    /// The map whose only nonzero unknown is `k`.
    pub fn unit(&self, k: usize) -> ConformalMap {
        let key = &self.keys[k];
        let mut images = vec![Element::zero(self.sig.rank()); self.sig.rank()];
        *images[key.source].coord_mut(key.target) = Poly::term(Self::monomial(key), Rational::from_integer(1.into()));
        ConformalMap::from_parts(self.parity, Indet::X, images)
    }

    pub fn map_from(&self, v: &[Rational]) -> ConformalMap {
        let rank = self.sig.rank();
        let mut images = vec![Element::zero(rank); rank];
        for (key, c) in self.keys.iter().zip(v) {
            if !c.is_zero() {
                images[key.source].coord_mut(key.target).add_term(Self::monomial(key), c.clone());
            }
        }
        ConformalMap::from_parts(self.parity, Indet::X, images)
    }

    /// Coordinates of `phi`, or `None` if it lies outside the window (wrong
    /// parity, foreign variables, or degree above the bound).
    pub fn coordinates(&self, phi: &ConformalMap) -> Option<Vec<Rational>> {
        if phi.parity() != self.parity || phi.rank() != self.sig.rank() || !phi.params().is_empty() {
            return None;
        }
        let phi = phi.with_var(Indet::X).ok()?;
        let mut v = vec![Rational::zero(); self.len()];
        for (source, img) in phi.images().iter().enumerate() {
            for target in img.support() {
                for (m, c) in img.coord(target).terms() {
                    let (d_exp, x_exp) = (m.exp(Indet::D), m.exp(Indet::X));
                    if m.degree() != (d_exp + x_exp) as u32 {
                        return None;
                    }
                    let k = self.position(&AnsatzKey {
                        source,
                        target,
                        d_exp,
                        x_exp,
                    })?;
                    v[k] = c.clone();
                }
            }
        }
        Some(v)
    }
}
