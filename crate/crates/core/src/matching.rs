//! Coefficient matching: turns "a linear combination of polynomial-valued
//! columns vanishes identically" into a homogeneous system over ℚ.

use std::collections::BTreeMap;

use crate::exactpoly::{nullspace, Monomial, Rational};
use crate::lcsa::Element;

/// Row key: (block, coordinate, monomial).
type Key = (usize, usize, Monomial);

#[derive(Default)]
pub(crate) struct Matcher {
    cols: usize,
    rows: BTreeMap<Key, BTreeMap<usize, Rational>>,
}

impl Matcher {
    pub fn new(cols: usize) -> Self {
        Matcher {
            cols,
            rows: BTreeMap::new(),
        }
    }

    /// Adds the coefficients of column `col`; `blocks[b]` is the residual
    /// element produced by identity instance `b`.
    pub fn add_column(&mut self, col: usize, blocks: &[Element]) {
        for (b, e) in blocks.iter().enumerate() {
            for k in e.support() {
                for (m, c) in e.coord(k).terms() {
                    self.rows.entry((b, k, *m)).or_default().insert(col, c.clone());
                }
            }
        }
    }

    pub fn nullspace(self) -> Vec<Vec<Rational>> {
        let cols = self.cols;
        let dense = self
            .rows
            .into_values()
            .map(|row| {
                let mut v = vec![num_traits::Zero::zero(); cols];
                for (c, a) in row {
                    v[c] = a;
                }
                v
            })
            .collect();
        nullspace(dense, cols)
    }
}
