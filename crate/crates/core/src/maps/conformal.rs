use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactpoly::{Indet, Poly, Rational};
use crate::lcsa::{Algebra, Element, Parity, Signature};

use super::hom::ModuleHom;

/// A homogeneous conformal linear map `φ_x` of an algebra into itself.
///
/// Only generator images are stored; `φ_x(p(∂)a) = p(∂+x) φ_x(a)` is applied
/// by [`ConformalMap::apply`]. Images may contain further variables besides
/// ∂ and the map variable; those are parameters of a map family (the output
/// of [`gc_bracket`] carries one).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConformalMap {
    parity: Parity,
    var: Indet,
    images: Vec<Element>,
}

impl ConformalMap {
    pub fn new(sig: &Signature, parity: Parity, var: Indet, images: Vec<Element>) -> Result<Self> {
        if images.len() != sig.rank() {
            return Err(Error::RankMismatch {
                expected: sig.rank(),
                got: images.len(),
            });
        }
        if var == Indet::D {
            return Err(Error::VariableCollision("d".into()));
        }
        for (i, img) in images.iter().enumerate() {
            if img.rank() != sig.rank() {
                return Err(Error::RankMismatch {
                    expected: sig.rank(),
                    got: img.rank(),
                });
            }
            let want = parity + sig.parity(i);
            if let Some(k) = img.support().find(|&k| sig.parity(k) != want) {
                return Err(Error::ParityMismatch(format!(
                    "image of {} under a {parity} map involves {}",
                    sig.name(i),
                    sig.name(k)
                )));
            }
        }
        Ok(ConformalMap { parity, var, images })
    }

    pub(crate) fn from_parts(parity: Parity, var: Indet, images: Vec<Element>) -> Self {
        ConformalMap { parity, var, images }
    }

    pub fn zero(sig: &Signature, parity: Parity) -> Self {
        ConformalMap {
            parity,
            var: Indet::X,
            images: vec![Element::zero(sig.rank()); sig.rank()],
        }
    }

    /// `e_i ↦ e_i`, hence `φ_x(p(∂)a) = p(∂+x)a`.
    pub fn identity(sig: &Signature) -> Self {
        ConformalMap {
            parity: Parity::Even,
            var: Indet::X,
            images: (0..sig.rank()).map(|i| Element::generator(sig.rank(), i)).collect(),
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn var(&self) -> Indet {
        self.var
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Element {
        &self.images[i]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Element::is_zero)
    }

    /// Family parameters: variables of the images other than ∂ and the map
    /// variable.
    pub fn params(&self) -> BTreeSet<Indet> {
        let mut vars: BTreeSet<Indet> = self.images.iter().flat_map(|e| e.vars()).collect();
        vars.remove(&Indet::D);
        vars.remove(&self.var);
        vars
    }

    /// `φ_t(a)` for a polynomial `t`: `Σ a_i(∂+t) · φ(e_i)|_{var=t}`.
    pub fn apply(&self, a: &Element, t: &Poly) -> Element {
        let d_shift = [(Indet::D, &Poly::var(Indet::D) + t)];
        let var_sub = [(self.var, t.clone())];
        let mut out = Element::zero(self.rank());
        for i in a.support() {
            if self.images[i].is_zero() {
                continue;
            }
            let p = a.coord(i).subst(&d_shift);
            let img = self.images[i].subst(&var_sub);
            out = &out + &img.mul_poly(&p);
        }
        out
    }

    /// `φ_x(a)` with a fresh variable `x`.
    pub fn apply_var(&self, a: &Element, x: Indet) -> Result<Element> {
        if x == Indet::D || a.contains(x) || self.params().contains(&x) {
            return Err(Error::VariableCollision(x.ascii().to_string()));
        }
        Ok(self.apply(a, &Poly::var(x)))
    }

    /// Renames the map variable.
    pub fn with_var(&self, var: Indet) -> Result<ConformalMap> {
        if var == self.var {
            return Ok(self.clone());
        }
        if var == Indet::D || self.params().contains(&var) {
            return Err(Error::VariableCollision(var.ascii().to_string()));
        }
        let sub = [(self.var, Poly::var(var))];
        Ok(ConformalMap {
            parity: self.parity,
            var,
            images: self.images.iter().map(|e| e.subst(&sub)).collect(),
        })
    }

    fn zip(&self, other: &ConformalMap, f: impl Fn(&Element, &Element) -> Element) -> ConformalMap {
        let other = other.with_var(self.var).expect("compatible map variables");
        ConformalMap {
            parity: self.parity,
            var: self.var,
            images: self.images.iter().zip(&other.images).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Sum of two maps of the same parity and rank.
    pub fn add(&self, other: &ConformalMap) -> ConformalMap {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ConformalMap) -> ConformalMap {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> ConformalMap {
        ConformalMap {
            parity: self.parity,
            var: self.var,
            images: self.images.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Multiplies every image by a polynomial (e.g. a family parameter).
    pub fn mul_poly(&self, p: &Poly) -> ConformalMap {
        ConformalMap {
            parity: self.parity,
            var: self.var,
            images: self.images.iter().map(|e| e.mul_poly(p)).collect(),
        }
    }

    /// The ∂-action on gc: `(∂φ)_x = -x φ_x`.
    pub fn d(&self) -> ConformalMap {
        self.mul_poly(&-Poly::var(self.var))
    }

    /// `f ∘ φ`.
    pub fn then_hom(&self, f: &ModuleHom) -> ConformalMap {
        ConformalMap {
            parity: self.parity + f.parity(),
            var: self.var,
            images: self.images.iter().map(|e| f.apply(e)).collect(),
        }
    }

    /// `φ ∘ f`.
    pub fn after_hom(&self, f: &ModuleHom) -> ConformalMap {
        let x = Poly::var(self.var);
        ConformalMap {
            parity: self.parity + f.parity(),
            var: self.var,
            images: f.images().iter().map(|e| self.apply(e, &x)).collect(),
        }
    }

    /// Generator images as "(source, target, coefficient)" text.
    pub fn display(&self, sig: &Signature) -> String {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, e)| format!("{} ↦ {}", sig.name(i), e.display(sig)))
            .collect();
        format!("[{}] {}", self.parity, parts.join(", "))
    }
}

/// `ad a` with map variable x: `e_j ↦ [a_x e_j]`.
pub fn ad(algebra: &Algebra, a: &Element) -> Result<ConformalMap> {
    ad_with_var(algebra, a, Indet::X)
}

/// `ad a` with an explicit map variable. `a` must be homogeneous; variables
/// in `a` other than ∂ become family parameters.
pub fn ad_with_var(algebra: &Algebra, a: &Element, var: Indet) -> Result<ConformalMap> {
    let parity = a.parity(algebra.sig())?.unwrap_or(Parity::Even);
    if a.contains(var) {
        return Err(Error::VariableCollision(var.ascii().to_string()));
    }
    let t = Poly::var(var);
    let images = (0..algebra.rank())
        .map(|j| algebra.bracket_at(a, &algebra.generator(j), &t))
        .collect();
    Ok(ConformalMap::from_parts(parity, var, images))
}

/// `[φ_x ψ]_y`: the map `a ↦ φ_x(ψ_{y-x} a) - (-1)^{|φ||ψ|} ψ_{y-x}(φ_x a)`
/// with map variable `y` and family parameter `x`.
pub fn gc_bracket(phi: &ConformalMap, psi: &ConformalMap, x: Indet, y: Indet) -> Result<ConformalMap> {
    if x == y || x == Indet::D || y == Indet::D {
        return Err(Error::VariableCollision(format!("{} / {}", x.ascii(), y.ascii())));
    }
    for p in phi.params().into_iter().chain(psi.params()) {
        if p == x || p == y {
            return Err(Error::VariableCollision(p.ascii().to_string()));
        }
    }
    if phi.rank() != psi.rank() {
        return Err(Error::RankMismatch {
            expected: phi.rank(),
            got: psi.rank(),
        });
    }
    let xp = Poly::var(x);
    let shifted = &Poly::var(y) - &xp;
    let sign = Parity::sign(phi.parity, psi.parity);
    let rank = phi.rank();
    let images = (0..rank)
        .map(|i| {
            let e = Element::generator(rank, i);
            let first = phi.apply(&psi.apply(&e, &shifted), &xp);
            let second = psi.apply(&phi.apply(&e, &xp), &shifted);
            &first - &second.scale(&sign)
        })
        .collect();
    Ok(ConformalMap::from_parts(phi.parity + psi.parity, y, images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, ratio};
    use crate::lcsa::{build_named, NamedAlgebra};

    fn ns() -> Algebra {
        build_named(NamedAlgebra::NeveuSchwarz).unwrap()
    }

    fn d() -> Poly {
        Poly::var(Indet::D)
    }

    fn x() -> Poly {
        Poly::var(Indet::X)
    }

    #[test]
    fn ad_l_images() {
        let ns = ns();
        let adl = ad(&ns, &ns.generator(0)).unwrap();
        assert_eq!(*adl.image(0), Element::monomial(2, 0, &d() + &x().scale(&rat(2))));
        assert_eq!(*adl.image(1), Element::monomial(2, 1, &d() + &x().scale(&ratio(3, 2))));
        let g = adl.apply_var(&ns.generator(1), Indet::X).unwrap();
        assert_eq!(g, Element::monomial(2, 1, &d() + &x().scale(&ratio(3, 2))));
    }

    #[test]
    fn ad_is_d_linear() {
        let ns = ns();
        let l = ns.generator(0);
        assert_eq!(ad(&ns, &l.d()).unwrap(), ad(&ns, &l).unwrap().d());
    }

    #[test]
    fn shift_law() {
        let ns = ns();
        let phi = ad(&ns, &ns.generator(1)).unwrap();
        let l = ns.generator(0);
        let lhs = phi.apply(&l.d(), &x());
        let rhs = phi.apply(&l, &x()).mul_poly(&(&d() + &x()));
        assert_eq!(lhs, rhs);
        assert!(ConformalMap::zero(ns.sig(), Parity::Odd).apply(&l, &x()).is_zero());
    }

    #[test]
    fn ad_is_bracket_homomorphism() {
        let ns = ns();
        let l = ns.generator(0);
        let g = ns.generator(1);
        let y = Poly::var(Indet::Y);
        for (a, b) in [(&l, &l), (&g, &g), (&l, &g)] {
            let br = gc_bracket(&ad(&ns, a).unwrap(), &ad(&ns, b).unwrap(), Indet::X, Indet::Y).unwrap();
            // ad([a_x b]) evaluated at y
            let inner = ns.bracket_at(a, b, &x());
            let expected: Vec<Element> =
                (0..2).map(|j| ns.bracket_at(&inner, &ns.generator(j), &y)).collect();
            assert_eq!(br.images(), expected.as_slice());
        }
    }

    #[test]
    fn bracket_with_zero() {
        let ns = ns();
        let phi = ad(&ns, &ns.generator(0)).unwrap();
        let z = ConformalMap::zero(ns.sig(), Parity::Even);
        assert!(gc_bracket(&phi, &z, Indet::X, Indet::Y).unwrap().is_zero());
        assert!(gc_bracket(&phi, &z, Indet::X, Indet::X).is_err());
    }

    #[test]
    fn parity_of_images_enforced() {
        let ns = ns();
        let bad = vec![ns.generator(1), ns.generator(1)];
        assert!(ConformalMap::new(ns.sig(), Parity::Even, Indet::X, bad).is_err());
    }
}
