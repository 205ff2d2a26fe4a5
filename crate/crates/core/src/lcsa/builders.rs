use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::{rat, ratio, Indet, Poly, Rational};

use super::algebra::Algebra;
use super::element::{Element, Signature};
use super::parity::Parity;

/// Finite-dimensional Lie superalgebra given by structure constants
/// `[e_i, e_j] = Σ_k c_ijk e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSuperalgebra {
    name: String,
    sig: Signature,
    table: Vec<Vec<Vec<Rational>>>,
}

impl LieSuperalgebra {
    /// Builds from brackets for unordered pairs; the opposite orientation is
    /// filled in by super-antisymmetry. Verifies parity, antisymmetry and
    /// the super Jacobi identity.
    pub fn new(
        name: impl Into<String>,
        sig: Signature,
        brackets: &[(usize, usize, Vec<(usize, Rational)>)],
    ) -> Result<Self> {
        let name = name.into();
        let n = sig.rank();
        let invalid = |reason: String| Error::InvalidAlgebra {
            name: name.clone(),
            reason,
        };
        let mut table = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut set = vec![vec![false; n]; n];
        for (i, j, value) in brackets {
            let (i, j) = (*i, *j);
            let mut v = vec![Rational::zero(); n];
            for (k, c) in value {
                if sig.parity(*k) != sig.parity(i) + sig.parity(j) && !c.is_zero() {
                    return Err(invalid(format!(
                        "[{}, {}] involves {} of the wrong parity",
                        sig.name(i),
                        sig.name(j),
                        sig.name(*k)
                    )));
                }
                v[*k] += c;
            }
            let sign = -super_sign(&sig, i, j);
            let w: Vec<Rational> = v.iter().map(|c| c * &sign).collect();
            if (set[i][j] && table[i][j] != v) || (set[j][i] && table[j][i] != w) {
                return Err(invalid(format!(
                    "inconsistent bracket [{}, {}]",
                    sig.name(i),
                    sig.name(j)
                )));
            }
            table[i][j] = v;
            table[j][i] = w;
            set[i][j] = true;
            set[j][i] = true;
        }
        let out = LieSuperalgebra { name, sig, table };
        out.verify()?;
        Ok(out)
    }

    fn verify(&self) -> Result<()> {
        let n = self.sig.rank();
        let sig = &self.sig;
        for i in 0..n {
            for j in 0..n {
                let sign = -super_sign(sig, i, j);
                let flipped: Vec<Rational> = self.table[j][i].iter().map(|c| c * &sign).collect();
                if flipped != self.table[i][j] {
                    return Err(self.fail(format!("antisymmetry on ({}, {})", sig.name(i), sig.name(j))));
                }
                for k in 0..n {
                    let e = |m: usize| unit(n, m);
                    let lhs = self.apply(&e(i), &self.apply(&e(j), &e(k)));
                    let first = self.apply(&self.apply(&e(i), &e(j)), &e(k));
                    let second = self.apply(&e(j), &self.apply(&e(i), &e(k)));
                    let s = super_sign(sig, i, j);
                    let ok = (0..n).all(|m| (&lhs[m] - &first[m] - &second[m] * &s).is_zero());
                    if !ok {
                        return Err(self.fail(format!(
                            "Jacobi on ({}, {}, {})",
                            sig.name(i),
                            sig.name(j),
                            sig.name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn fail(&self, what: String) -> Error {
        Error::InvalidAlgebra {
            name: self.name.clone(),
            reason: format!("Lie superalgebra violates {what}"),
        }
    }

    /// Bracket of coordinate vectors.
    fn apply(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.sig.rank();
        let mut out = vec![Rational::zero(); n];
        for (i, ca) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, cb) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let f = ca * cb;
                for (o, c) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += &f * c;
                }
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i][j]
    }

    /// One-dimensional abelian Lie algebra.
    pub fn abelian_line() -> Self {
        let sig = Signature::new([("a", Parity::Even)]).unwrap();
        LieSuperalgebra::new("abelian1", sig, &[]).unwrap()
    }

    /// Two-dimensional nonabelian Lie algebra `[h, e] = e`.
    pub fn two_dim() -> Self {
        let sig = Signature::new([("h", Parity::Even), ("e", Parity::Even)]).unwrap();
        LieSuperalgebra::new("aff1", sig, &[(0, 1, vec![(1, rat(1))])]).unwrap()
    }

    /// `sl2` in the basis `e, h, f`.
    pub fn sl2() -> Self {
        let sig = Signature::new([("e", Parity::Even), ("h", Parity::Even), ("f", Parity::Even)]).unwrap();
        LieSuperalgebra::new(
            "sl2",
            sig,
            &[
                (1, 0, vec![(0, rat(2))]),
                (1, 2, vec![(2, rat(-2))]),
                (0, 2, vec![(1, rat(1))]),
            ],
        )
        .unwrap()
    }

    /// `gl2` in the matrix-unit basis `E11, E12, E21, E22`.
    pub fn gl2() -> Self {
        let names = ["E11", "E12", "E21", "E22"];
        let sig = Signature::new(names.iter().map(|n| (*n, Parity::Even))).unwrap();
        let idx = |r: usize, c: usize| 2 * r + c;
        let mut brackets = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        let (i, j) = (idx(a, b), idx(c, d));
                        if i > j {
                            continue;
                        }
                        // [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb
                        let mut v = Vec::new();
                        if b == c {
                            v.push((idx(a, d), rat(1)));
                        }
                        if d == a {
                            v.push((idx(c, b), rat(-1)));
                        }
                        brackets.push((i, j, v));
                    }
                }
            }
        }
        LieSuperalgebra::new("gl2", sig, &brackets).unwrap()
    }

    /// `osp(1|2)` with even `e, h, f` and odd `u, v`.
    pub fn osp12() -> Self {
        let sig = Signature::new([
            ("e", Parity::Even),
            ("h", Parity::Even),
            ("f", Parity::Even),
            ("u", Parity::Odd),
            ("v", Parity::Odd),
        ])
        .unwrap();
        LieSuperalgebra::new(
            "osp12",
            sig,
            &[
                (1, 0, vec![(0, rat(2))]),
                (1, 2, vec![(2, rat(-2))]),
                (0, 2, vec![(1, rat(1))]),
                (1, 3, vec![(3, rat(1))]),
                (1, 4, vec![(4, rat(-1))]),
                (0, 4, vec![(3, rat(-1))]),
                (2, 3, vec![(4, rat(-1))]),
                (3, 3, vec![(0, rat(2))]),
                (4, 4, vec![(2, rat(-2))]),
                (3, 4, vec![(1, rat(1))]),
            ],
        )
        .unwrap()
    }
}

fn super_sign(sig: &Signature, i: usize, j: usize) -> Rational {
    Parity::sign(sig.parity(i), sig.parity(j))
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = rat(1);
    v
}

/// The built-in algebras.
#[derive(Clone, Debug)]
pub enum NamedAlgebra {
    NeveuSchwarz,
    /// Rank-2 algebra `L, W` with `[W λ W] = 0`.
    Example22,
    Virasoro,
    Abelian(Signature),
    Current(LieSuperalgebra),
}

impl NamedAlgebra {
    /// Resolves names used on the command line and in `.lcsa` files:
    /// `neveu_schwarz`, `example22`, `virasoro`, `abelian:N`, and
    /// `current:{abelian1,aff1,sl2,gl2,osp12}`.
    pub fn from_name(name: &str) -> Result<NamedAlgebra> {
        let unknown = || Error::InvalidAlgebra {
            name: name.to_string(),
            reason: "unknown built-in algebra".into(),
        };
        Ok(match name {
            "neveu_schwarz" | "ns" => NamedAlgebra::NeveuSchwarz,
            "example22" => NamedAlgebra::Example22,
            "virasoro" => NamedAlgebra::Virasoro,
            _ => {
                if let Some(n) = name.strip_prefix("abelian:") {
                    let n: usize = n.parse().map_err(|_| unknown())?;
                    let sig = Signature::new((1..=n).map(|i| (format!("c{i}"), Parity::Even)))?;
                    NamedAlgebra::Abelian(sig)
                } else if let Some(g) = name.strip_prefix("current:") {
                    NamedAlgebra::Current(match g {
                        "abelian1" => LieSuperalgebra::abelian_line(),
                        "aff1" => LieSuperalgebra::two_dim(),
                        "sl2" => LieSuperalgebra::sl2(),
                        "gl2" => LieSuperalgebra::gl2(),
                        "osp12" => LieSuperalgebra::osp12(),
                        _ => return Err(unknown()),
                    })
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

fn d() -> Poly {
    Poly::var(Indet::D)
}

fn l() -> Poly {
    Poly::var(Indet::LAMBDA)
}

/// `(∂ + c·λ) e_k` in a rank-`n` module.
fn conformal_weight(n: usize, k: usize, c: Rational) -> Element {
    Element::monomial(n, k, &d() + &l().scale(&c))
}

/// Builds a built-in algebra and verifies both axioms.
pub fn build_named(which: NamedAlgebra) -> Result<Algebra> {
    let algebra = match which {
        NamedAlgebra::NeveuSchwarz | NamedAlgebra::Example22 => {
            let (name, odd, odd_square) = match which {
                NamedAlgebra::NeveuSchwarz => ("NS", "G", Element::monomial(2, 0, Poly::int(2))),
                _ => ("Example22", "W", Element::zero(2)),
            };
            let sig = Signature::new([("L", Parity::Even), (odd, Parity::Odd)])?;
            let mut b = Algebra::builder(name, sig);
            b.bracket(0, 0, conformal_weight(2, 0, rat(2)))?
                .bracket(0, 1, conformal_weight(2, 1, ratio(3, 2)))?
                .bracket(1, 1, odd_square)?;
            b.build()?
        }
        NamedAlgebra::Virasoro => {
            let sig = Signature::new([("L", Parity::Even)])?;
            let mut b = Algebra::builder("Vir", sig);
            b.bracket(0, 0, conformal_weight(1, 0, rat(2)))?;
            b.build()?
        }
        NamedAlgebra::Abelian(sig) => {
            let name = format!("abelian{}", sig.rank());
            Algebra::builder(name, sig).build()?
        }
        NamedAlgebra::Current(g) => current(&g)?,
    };
    algebra.validated()
}

/// Current algebra `Cur g`: `[a λ b] = [a, b]` on generators, extended by
/// sesquilinearity to `f(-λ) g(∂+λ) [a, b]`.
pub fn current(g: &LieSuperalgebra) -> Result<Algebra> {
    let n = g.sig().rank();
    let mut b = Algebra::builder(format!("Cur({})", g.name()), g.sig().clone());
    for i in 0..n {
        for j in 0..n {
            let coords = g.structure(i, j).iter().map(|c| Poly::constant(c.clone())).collect();
            b.bracket(i, j, Element::from_coords(coords))?;
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neveu_schwarz_constants() {
        let ns = build_named(NamedAlgebra::NeveuSchwarz).unwrap();
        assert_eq!(ns.rank(), 2);
        assert_eq!(*ns.structure(1, 1), Element::monomial(2, 0, Poly::int(2)));
        // [G λ L] = (∂/2 + 3λ/2) G by skew completion
        let expected = Element::monomial(2, 1, &d().scale(&ratio(1, 2)) + &l().scale(&ratio(3, 2)));
        assert_eq!(*ns.structure(1, 0), expected);
    }

    #[test]
    fn example22_and_abelian() {
        let ex = build_named(NamedAlgebra::Example22).unwrap();
        assert!(ex.structure(1, 1).is_zero());
        let ab = build_named(NamedAlgebra::from_name("abelian:1").unwrap()).unwrap();
        assert_eq!(ab.rank(), 1);
        assert!(ab.structure(0, 0).is_zero());
    }

    #[test]
    fn broken_lie_superalgebra_rejected() {
        let sig = Signature::new([("a", Parity::Even), ("b", Parity::Even), ("c", Parity::Even)]).unwrap();
        // [a,b] = c, [b,c] = a, [c,a] = c violates Jacobi
        let res = LieSuperalgebra::new(
            "bad",
            sig,
            &[
                (0, 1, vec![(2, rat(1))]),
                (1, 2, vec![(0, rat(1))]),
                (2, 0, vec![(2, rat(1))]),
            ],
        );
        assert!(res.is_err());
    }

    #[test]
    fn odd_bracket_parity_enforced() {
        let sig = Signature::new([("a", Parity::Even), ("u", Parity::Odd)]).unwrap();
        assert!(LieSuperalgebra::new("bad", sig, &[(0, 1, vec![(0, rat(1))])]).is_err());
    }
}
