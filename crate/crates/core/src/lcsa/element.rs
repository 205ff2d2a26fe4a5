use std::collections::BTreeSet;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactpoly::{Indet, Poly, Rational};

use super::parity::Parity;

/// Ordered, named, graded generators of a free ℚ[∂]-module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    generators: Vec<(String, Parity)>,
}

impl Signature {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = (S, Parity)>) -> Result<Self> {
        let generators: Vec<(String, Parity)> =
            generators.into_iter().map(|(n, p)| (n.into(), p)).collect();
        if generators.is_empty() {
            return Err(Error::InvalidSignature("rank must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        for (name, _) in &generators {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSignature(format!("duplicate generator `{name}`")));
            }
        }
        Ok(Signature { generators })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i].0
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.generators[i].1
    }

    pub fn generators(&self) -> &[(String, Parity)] {
        &self.generators
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|(n, _)| n == name)
    }

    /// Indices of generators of the given parity.
    pub fn of_parity(&self, p: Parity) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&i| self.parity(i) == p)
    }
}

/// Point of the module: one coefficient polynomial per generator.
///
/// Coefficients live in ℚ[∂] for honest elements; λ-brackets and conformal
/// maps produce elements whose coefficients also involve their variables
/// (λ, μ, x, ...), which are treated as commuting scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vec<Poly>,
}

impl Element {
    pub fn zero(rank: usize) -> Self {
        Element {
            coords: vec![Poly::zero(); rank],
        }
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        let mut e = Element::zero(rank);
        e.coords[i] = Poly::one();
        e
    }

    pub fn from_coords(coords: Vec<Poly>) -> Self {
        Element { coords }
    }

    /// `p · e_i`.
    pub fn monomial(rank: usize, i: usize, p: Poly) -> Self {
        let mut e = Element::zero(rank);
        e.coords[i] = p;
        e
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Poly {
        &self.coords[i]
    }

    pub fn coord_mut(&mut self, i: usize) -> &mut Poly {
        &mut self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.coords.len()).filter(move |&i| !self.coords[i].is_zero())
    }

    pub fn vars(&self) -> BTreeSet<Indet> {
        self.coords.iter().flat_map(|p| p.vars()).collect()
    }

    pub fn contains(&self, v: Indet) -> bool {
        self.coords.iter().any(|p| p.contains(v))
    }

    pub fn scale(&self, c: &Rational) -> Element {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, q: &Poly) -> Element {
        self.map(|p| p * q)
    }

    /// The ∂-action.
    pub fn d(&self) -> Element {
        self.mul_poly(&Poly::var(Indet::D))
    }

    pub fn subst(&self, bindings: &[(Indet, Poly)]) -> Element {
        self.map(|p| p.subst(bindings))
    }

    pub fn substitute(&self, bindings: &[(Indet, Poly)]) -> Result<Element> {
        Ok(Element {
            coords: self
                .coords
                .iter()
                .map(|p| p.substitute(bindings))
                .collect::<Result<_>>()?,
        })
    }

    pub fn coeff(&self, v: Indet, k: u16) -> Element {
        self.map(|p| p.coeff(v, k))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Element {
        Element {
            coords: self.coords.iter().map(f).collect(),
        }
    }

    /// Part supported on generators of parity `p`.
    pub fn part(&self, sig: &Signature, p: Parity) -> Element {
        Element {
            coords: self
                .coords
                .iter()
                .enumerate()
                .map(|(i, c)| if sig.parity(i) == p { c.clone() } else { Poly::zero() })
                .collect(),
        }
    }

    /// Parity of a homogeneous element; `None` for zero.
    pub fn parity(&self, sig: &Signature) -> Result<Option<Parity>> {
        let mut found = None;
        for i in self.support() {
            match found {
                None => found = Some(sig.parity(i)),
                Some(p) if p != sig.parity(i) => return Err(Error::NonHomogeneous),
                _ => {}
            }
        }
        Ok(found)
    }

    pub fn display(&self, sig: &Signature) -> String {
        self.render(sig, |p| p.to_string(), "")
    }

    /// Ascii surface syntax, e.g. `(d + 2*l) L + 2 G`.
    pub fn to_source(&self, sig: &Signature) -> String {
        self.render(sig, |p| p.to_source(), " ")
    }

    fn render(&self, sig: &Signature, show: impl Fn(&Poly) -> String, sep: &str) -> String {
        let mut out = String::new();
        for i in self.support() {
            let name = sig.name(i);
            let mut c = self.coords[i].clone();
            let constant_negative = c.as_constant().is_some_and(|k| k < Rational::from_integer(0.into()));
            if constant_negative {
                c = -c;
            }
            out.push_str(match (out.is_empty(), constant_negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            if c == Poly::one() {
                out.push_str(name);
            } else if c.len() == 1 && c.terms().next().unwrap().0.is_one() {
                out.push_str(&format!("{}{sep}{name}", show(&c)));
            } else {
                out.push_str(&format!("({}){sep}{name}", show(&c)));
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map(|p| -p)
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn sig() -> Signature {
        Signature::new([("L", Parity::Even), ("G", Parity::Odd)]).unwrap()
    }

    #[test]
    fn signature_validation() {
        assert!(Signature::new(Vec::<(String, Parity)>::new()).is_err());
        assert!(Signature::new([("a", Parity::Even), ("a", Parity::Odd)]).is_err());
    }

    #[test]
    fn homogeneous_parts() {
        let s = sig();
        let mixed = &Element::generator(2, 0) + &Element::generator(2, 1).scale(&rat(3));
        assert_eq!(mixed.parity(&s), Err(Error::NonHomogeneous));
        assert_eq!(mixed.part(&s, Parity::Odd), Element::generator(2, 1).scale(&rat(3)));
        assert_eq!(Element::zero(2).parity(&s), Ok(None));
        assert_eq!(Element::generator(2, 1).d().parity(&s), Ok(Some(Parity::Odd)));
    }

    #[test]
    fn rendering() {
        let s = sig();
        let d = Poly::var(Indet::D);
        let l = Poly::var(Indet::LAMBDA);
        let e = &Element::monomial(2, 0, &d + &l.scale(&rat(2))) + &Element::monomial(2, 1, Poly::int(2));
        assert_eq!(e.to_source(&s), "(d + 2*l) L + 2 G");
        assert_eq!(e.display(&s), "(∂ + 2λ)L + 2G");
        assert_eq!(Element::zero(2).display(&s), "0");
        let neg = &Element::generator(2, 0) - &Element::generator(2, 1).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(neg.display(&s), "L - (1/2)G");
        assert_eq!(neg.to_source(&s), "L - 1/2 G");
        assert_eq!((-neg).display(&s), "-L + (1/2)G");
    }
}
