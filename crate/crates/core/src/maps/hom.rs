use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactpoly::{Indet, Poly, Rational};
use crate::lcsa::{Algebra, Element, Parity};
use crate::report::CheckReport;

/// Which bracket law [`ModuleHom::hom_check`] tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomKind {
    /// `f([a λ b]) = [f(a) λ f(b)]`
    Hom,
    /// `f([a λ b]) = -[f(a) λ f(b)]`
    AntiHom,
}

impl HomKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HomKind::Hom => "hom",
            HomKind::AntiHom => "antihom",
        }
    }
}

/// A homogeneous ℚ[∂]-module map between two algebras, fixed by the images
/// of the source generators. Image coefficients are polynomials in ∂ only.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleHom {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    parity: Parity,
    images: Vec<Element>,
}

/// Outcome of [`ModuleHom::is_automorphism`].
#[derive(Clone, Debug)]
pub struct AutomorphismCertificate {
    pub is_automorphism: bool,
    /// Determinant of the generator-image matrix over ℚ[∂].
    pub determinant: Poly,
    /// Present whenever the determinant is a nonzero constant.
    pub inverse: Option<ModuleHom>,
    pub hom_report: CheckReport,
    pub reason: Option<String>,
}

impl ModuleHom {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, parity: Parity, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::RankMismatch {
                expected: source.rank(),
                got: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if img.rank() != target.rank() {
                return Err(Error::RankMismatch {
                    expected: target.rank(),
                    got: img.rank(),
                });
            }
            if let Some(v) = img.vars().into_iter().find(|&v| v != Indet::D) {
                return Err(Error::VariableCollision(format!(
                    "image of {} contains {}",
                    source.sig().name(i),
                    v.ascii()
                )));
            }
            let want = parity + source.sig().parity(i);
            if let Some(k) = img.support().find(|&k| target.sig().parity(k) != want) {
                return Err(Error::ParityMismatch(format!(
                    "image of {} involves {}",
                    source.sig().name(i),
                    target.sig().name(k)
                )));
            }
        }
        Ok(ModuleHom {
            source,
            target,
            parity,
            images,
        })
    }

    pub fn identity(algebra: Arc<Algebra>) -> Self {
        let images = (0..algebra.rank()).map(|i| algebra.generator(i)).collect();
        ModuleHom {
            source: algebra.clone(),
            target: algebra,
            parity: Parity::Even,
            images,
        }
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Element::is_zero)
    }

    /// `f(Σ p_i(∂) e_i) = Σ p_i(∂) f(e_i)`.
    pub fn apply(&self, a: &Element) -> Element {
        let mut out = Element::zero(self.target.rank());
        for i in a.support() {
            out = &out + &self.images[i].mul_poly(a.coord(i));
        }
        out
    }

    fn same_ends(&self, other: &ModuleHom) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.parity != other.parity {
            return Err(Error::SpaceMismatch(
                "module maps differ in source, target or parity".into(),
            ));
        }
        Ok(())
    }

    fn with_images(&self, images: Vec<Element>) -> ModuleHom {
        ModuleHom {
            images,
            ..self.clone()
        }
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        self.same_ends(other)?;
        Ok(self.with_images(self.images.iter().zip(&other.images).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &ModuleHom) -> Result<ModuleHom> {
        self.same_ends(other)?;
        Ok(self.with_images(self.images.iter().zip(&other.images).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: &Rational) -> ModuleHom {
        self.with_images(self.images.iter().map(|e| e.scale(c)).collect())
    }

    pub fn neg(&self) -> ModuleHom {
        self.with_images(self.images.iter().map(|e| -e).collect())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleHom) -> Result<ModuleHom> {
        if inner.target != self.source {
            return Err(Error::SpaceMismatch("composition of incompatible maps".into()));
        }
        Ok(ModuleHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            parity: self.parity + inner.parity,
            images: inner.images.iter().map(|e| self.apply(e)).collect(),
        })
    }

    /// Residuals `f([e_i λ e_j]) ∓ [f(e_i) λ f(e_j)]` over generator pairs.
    /// Generators suffice: both sides are ∂-linear in each slot up to the
    /// same factor (`-λ` on the left, `∂+λ` on the right).
    pub fn hom_check(&self, kind: HomKind) -> CheckReport {
        let mut report = CheckReport::new(kind.as_str());
        let l = Poly::var(Indet::LAMBDA);
        for i in 0..self.source.rank() {
            for j in 0..self.source.rank() {
                let lhs = self.apply(self.source.structure(i, j));
                let rhs = self.target.bracket_at(&self.images[i], &self.images[j], &l);
                let residual = match kind {
                    HomKind::Hom => &lhs - &rhs,
                    HomKind::AntiHom => &lhs + &rhs,
                };
                report.record(kind.as_str(), &[i, j], residual);
            }
        }
        report
    }

    /// Column `i` holds the coordinates of `f(e_i)`.
    fn matrix(&self) -> Vec<Vec<Poly>> {
        let n = self.target.rank();
        (0..n)
            .map(|k| self.images.iter().map(|img| img.coord(k).clone()).collect())
            .collect()
    }

    /// An even endomorphism is an automorphism when it is a homomorphism and
    /// its matrix over ℚ[∂] has a nonzero constant determinant.
    pub fn is_automorphism(&self) -> AutomorphismCertificate {
        let hom_report = self.hom_check(HomKind::Hom);
        let square = self.source == self.target;
        let determinant = if square { determinant(self.matrix()) } else { Poly::zero() };
        let unit = determinant.as_constant().filter(|c| *c != Rational::from_integer(0.into()));
        let inverse = unit.as_ref().map(|c| self.inverse_with(c));
        let reason = if !square {
            Some("source and target differ".to_string())
        } else if self.parity != Parity::Even {
            Some("map is odd".to_string())
        } else if !hom_report.passed() {
            Some("not a homomorphism".to_string())
        } else if unit.is_none() {
            Some(format!("determinant {} is not a nonzero constant", determinant))
        } else {
            None
        };
        AutomorphismCertificate {
            is_automorphism: reason.is_none(),
            determinant,
            inverse,
            hom_report,
            reason,
        }
    }

    /// Inverse through the adjugate, given the constant determinant.
    fn inverse_with(&self, det: &Rational) -> ModuleHom {
        let m = self.matrix();
        let n = m.len();
        let inv_det = Rational::from_integer(1.into()) / det;
        // inverse[i][k] = (-1)^{i+k} minor(k, i) / det; column k is the image of e_k.
        let images = (0..n)
            .map(|k| {
                let coords = (0..n)
                    .map(|i| {
                        let minor: Vec<Vec<Poly>> = (0..n)
                            .filter(|&r| r != k)
                            .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                            .collect();
                        let c = determinant(minor).scale(&inv_det);
                        if (i + k) % 2 == 1 {
                            -c
                        } else {
                            c
                        }
                    })
                    .collect();
                Element::from_coords(coords)
            })
            .collect();
        ModuleHom {
            source: self.target.clone(),
            target: self.source.clone(),
            parity: self.parity,
            images,
        }
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, e)| format!("{} ↦ {}", self.source.sig().name(i), e.display(self.target.sig())))
            .collect();
        parts.join(", ")
    }
}

/// Fraction-free (Bareiss) determinant over ℚ[∂].
fn determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}
