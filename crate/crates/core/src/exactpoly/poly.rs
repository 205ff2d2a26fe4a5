use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::indet::{Indet, NUM_INDETS};
use super::rational::{is_neg, is_one, rat, Rational};
use crate::error::{Error, Result};

/// Exponent vector over the registered indeterminates.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared slot by slot in registration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; NUM_INDETS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Indet) -> Self {
        Monomial::one().with(v, 1)
    }

    pub fn from_exps(exps: &[(Indet, u16)]) -> Self {
        exps.iter().fold(Monomial::one(), |m, &(v, e)| {
            let cur = m.exp(v);
            m.with(v, cur + e)
        })
    }

    pub fn exp(&self, v: Indet) -> u16 {
        self.0[v.index()]
    }

    pub fn with(mut self, v: Indet, e: u16) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Indet, u16)> + '_ {
        Indet::all().filter_map(move |v| {
            let e = self.exp(v);
            (e > 0).then_some((v, e))
        })
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o += *e;
        }
        out
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o -= *e;
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with rational coefficients in the registered indeterminates.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(rat(c))
    }

    pub fn var(v: Indet) -> Self {
        Poly::term(Monomial::var(v), rat(1))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Indet) -> Option<u16> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn contains(&self, v: Indet) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn vars(&self) -> BTreeSet<Indet> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().map(|(v, _)| v).collect::<Vec<_>>())
            .collect()
    }

    /// Simultaneous substitution: every bound indeterminate is replaced by
    /// its polynomial in one pass, so images are never re-substituted.
    pub fn substitute(&self, bindings: &[(Indet, Poly)]) -> Result<Poly> {
        for (i, (v, _)) in bindings.iter().enumerate() {
            if bindings[..i].iter().any(|(w, _)| w == v) {
                return Err(Error::DuplicateBinding(v.ascii().to_string()));
            }
        }
        Ok(self.subst(bindings))
    }

    /// Infallible form of [`Poly::substitute`]; callers guarantee distinct
    /// binding targets.
    pub(crate) fn subst(&self, bindings: &[(Indet, Poly)]) -> Poly {
        if bindings.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one()]; bindings.len()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = Poly::constant(c.clone());
            for (slot, (v, target)) in bindings.iter().enumerate() {
                let e = rest.exp(*v) as usize;
                if e == 0 {
                    continue;
                }
                rest = rest.with(*v, 0);
                let cache = &mut powers[slot];
                while cache.len() <= e {
                    let next = cache.last().unwrap() * target;
                    cache.push(next);
                }
                factor = &factor * &cache[e];
            }
            out += &factor.mul_monomial(&rest);
        }
        out
    }

    /// Coefficient of `v^k` when `self` is viewed as a polynomial in `v`.
    pub fn coeff(&self, v: Indet, k: u16) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.with(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Groups terms by the exponents of `vars`; each group holds the
    /// remaining coefficient polynomial.
    pub fn split_by(&self, vars: &[Indet]) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = Monomial::from_exps(&vars.iter().map(|&v| (v, m.exp(v))).collect::<Vec<_>>());
            let rest = vars.iter().fold(*m, |acc, &v| acc.with(v, 0));
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Division by a single divisor with graded-lex leading terms. Since a
    /// single polynomial is a Gröbner basis of its own ideal, the remainder
    /// is zero exactly when `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let mut left = Poly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if lm.divides(&m) {
                let t = Poly::term(m.div(&lm), c / &lc);
                rem -= &(&t * divisor);
                quot += &t;
            } else {
                rem.terms.remove(&m);
                left.add_term(m, c);
            }
        }
        Some((quot, left))
    }

    /// Exact quotient, or `None` if `divisor` is zero or does not divide.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Ascii surface syntax, e.g. `d^2 + 3/2*d*l - x`.
    pub fn to_source(&self) -> String {
        self.render(|v| v.ascii(), "*", true)
    }

    fn render(&self, name: impl Fn(Indet) -> &'static str, sep: &str, ascii: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_neg(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !is_one(&mag) || m.is_one() {
                if mag.is_integer() || ascii {
                    factors.push(mag.to_string());
                } else {
                    factors.push(format!("({mag})"));
                }
            }
            for (v, e) in m.vars() {
                if e == 1 {
                    factors.push(name(v).to_string());
                } else {
                    factors.push(format!("{}^{}", name(v), e));
                }
            }
            out.push_str(&factors.join(sep));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|v| v.pretty(), "", false))
    }
}

impl From<Indet> for Poly {
    fn from(v: Indet) -> Self {
        Poly::var(v)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::int(c)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly { (&self).$method(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly { (&self).$method(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly { self.$method(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::ratio;

    fn d() -> Poly {
        Poly::var(Indet::D)
    }
    fn l() -> Poly {
        Poly::var(Indet::LAMBDA)
    }
    fn m() -> Poly {
        Poly::var(Indet::MU)
    }

    #[test]
    fn cancellation_and_absorption() {
        let a = &d() + &l().scale(&rat(2));
        let b = &d() - &l().scale(&rat(2));
        assert_eq!(&a + &b, d().scale(&rat(2)));
        assert!((&a * &Poly::zero()).is_zero());
    }

    #[test]
    fn hand_expansion() {
        let p = (&d() + &l()) * (&d() + &l().scale(&rat(2)));
        let expected = d().pow(2) + (&d() * &l()).scale(&rat(3)) + l().pow(2).scale(&rat(2));
        assert_eq!(p, expected);
    }

    #[test]
    fn substitution_examples() {
        let p = &d() + &l().scale(&rat(2));
        let skew = -(&d() + &l());
        let got = p.substitute(&[(Indet::LAMBDA, skew)]).unwrap();
        assert_eq!(got, -(&d() + &l().scale(&rat(2))));
        assert_eq!(p.substitute(&[]).unwrap(), p);
        let lm = &l() * &m();
        let got = lm.substitute(&[(Indet::LAMBDA, &l() + &m())]).unwrap();
        assert_eq!(got, &lm + &m().pow(2));
    }

    #[test]
    fn substitution_is_simultaneous() {
        // swap λ and μ
        let p = &l() + &m().scale(&rat(3));
        let got = p
            .substitute(&[(Indet::LAMBDA, m()), (Indet::MU, l())])
            .unwrap();
        assert_eq!(got, &m() + &l().scale(&rat(3)));
    }

    #[test]
    fn duplicate_binding_rejected() {
        let err = d().substitute(&[(Indet::D, l()), (Indet::D, m())]);
        assert!(matches!(err, Err(Error::DuplicateBinding(_))));
    }

    #[test]
    fn coefficient_extraction() {
        let p = &d() + &l().scale(&rat(2));
        assert_eq!(p.coeff(Indet::LAMBDA, 1), Poly::int(2));
        assert_eq!(p.coeff(Indet::LAMBDA, 0), d());
        assert!(p.coeff(Indet::LAMBDA, 4).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = &d() + &l();
        let b = &d().scale(&ratio(1, 2)) - &m();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!((&prod + &Poly::one()).div_exact(&b), None);
    }

    #[test]
    fn display_forms() {
        let p = &d() + &l().scale(&ratio(3, 2));
        assert_eq!(p.to_string(), "∂ + (3/2)λ");
        assert_eq!(p.to_source(), "d + 3/2*l");
        assert_eq!((-d().pow(2)).to_source(), "-d^2");
        assert_eq!(Poly::zero().to_source(), "0");
    }
}
