use num_traits::Zero;

use crate::exactpoly::{rank, rref, Indet, Monomial, Poly, Rational};
use crate::matching::Matcher;

use super::algebra::Algebra;
use super::element::Element;

/// ℚ-basis of a subspace of `{a : deg_∂ a ≤ degree_bound}`.
///
/// Vectors are kept in reduced echelon form over the coordinates
/// `(generator, ∂-exponent)`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    rank: usize,
    degree_bound: u16,
    vectors: Vec<Element>,
}

impl SubspaceBasis {
    pub fn degree_bound(&self) -> u16 {
        self.degree_bound
    }

    pub fn vectors(&self) -> &[Element] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    fn width(&self) -> usize {
        self.rank * (self.degree_bound as usize + 1)
    }

    /// Coordinates of an element with coefficients in ℚ[∂]; `None` if it
    /// involves other variables or exceeds the degree bound.
    pub fn coordinates(rank: usize, degree_bound: u16, e: &Element) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); rank * (degree_bound as usize + 1)];
        for i in e.support() {
            for (m, c) in e.coord(i).terms() {
                let k = m.exp(Indet::D);
                if k > degree_bound || m.degree() != k as u32 {
                    return None;
                }
                v[i * (degree_bound as usize + 1) + k as usize] = c.clone();
            }
        }
        Some(v)
    }

    fn element(rank: usize, degree_bound: u16, v: &[Rational]) -> Element {
        let w = degree_bound as usize + 1;
        let coords = (0..rank)
            .map(|i| {
                Poly::from_terms((0..w).map(|k| {
                    (Monomial::var(Indet::D).with(Indet::D, k as u16), v[i * w + k].clone())
                }))
            })
            .collect();
        Element::from_coords(coords)
    }

    /// Span of `elements` (canonicalised); elements outside the window are
    /// rejected with `None`.
    pub fn span(rank: usize, degree_bound: u16, elements: &[Element]) -> Option<SubspaceBasis> {
        let rows = elements
            .iter()
            .map(|e| Self::coordinates(rank, degree_bound, e))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_rows(rank, degree_bound, rows))
    }

    fn from_rows(rank: usize, degree_bound: u16, rows: Vec<Vec<Rational>>) -> SubspaceBasis {
        let width = rank * (degree_bound as usize + 1);
        let (reduced, _) = rref(rows, width);
        SubspaceBasis {
            rank,
            degree_bound,
            vectors: reduced.iter().map(|v| Self::element(rank, degree_bound, v)).collect(),
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        let Some(v) = Self::coordinates(self.rank, self.degree_bound, e) else {
            return false;
        };
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.rows();
        let before = rank(rows.clone(), self.width());
        rows.push(v);
        rank(rows, self.width()) == before
    }

    fn rows(&self) -> Vec<Vec<Rational>> {
        self.vectors
            .iter()
            .map(|e| Self::coordinates(self.rank, self.degree_bound, e).unwrap())
            .collect()
    }
}

/// Central elements of ∂-degree at most `degree_bound`.
///
/// By sesquilinearity `[a λ p(∂)e_j] = p(∂+λ)[a λ e_j]`, so vanishing
/// against every generator is enough.
pub fn center(algebra: &Algebra, degree_bound: u16) -> SubspaceBasis {
    let rank = algebra.rank();
    let w = degree_bound as usize + 1;
    let mut matcher = Matcher::new(rank * w);
    let lambda = Poly::var(Indet::LAMBDA);
    for i in 0..rank {
        for k in 0..w {
            let a = Element::monomial(rank, i, Poly::var(Indet::D).pow(k as u32));
            let blocks: Vec<Element> = (0..rank)
                .map(|j| algebra.bracket_at(&a, &algebra.generator(j), &lambda))
                .collect();
            matcher.add_column(i * w + k, &blocks);
        }
    }
    SubspaceBasis::from_rows(rank, degree_bound, matcher.nullspace())
}
