use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Homogeneous linear system over ℚ in named unknowns.
#[derive(Clone, Debug, Default)]
pub struct LinSystem {
    unknowns: Vec<String>,
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl LinSystem {
    pub fn new<S: Into<String>>(unknowns: impl IntoIterator<Item = S>) -> Self {
        LinSystem {
            unknowns: unknowns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// System over `n` anonymous unknowns `u0, u1, ...`.
    pub fn with_unknowns(n: usize) -> Self {
        LinSystem::new((0..n).map(|i| format!("u{i}")))
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    pub fn num_unknowns(&self) -> usize {
        self.unknowns.len()
    }

    pub fn rows(&self) -> &[BTreeMap<usize, Rational>] {
        &self.rows
    }

    /// Adds `Σ coeff · unknown = 0`; zero rows are dropped.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) -> Result<()> {
        let mut row = BTreeMap::new();
        for (col, c) in entries {
            if col >= self.unknowns.len() {
                return Err(Error::UnknownUnknown(col));
            }
            let slot: &mut Rational = row.entry(col).or_insert_with(Rational::zero);
            *slot += c;
        }
        row.retain(|_, c| !c.is_zero());
        if !row.is_empty() {
            self.rows.push(row);
        }
        Ok(())
    }

    /// Adds a row given by name.
    pub fn push_named(&mut self, entries: &[(&str, Rational)]) -> Result<()> {
        let mut idx = Vec::with_capacity(entries.len());
        for (name, c) in entries {
            let col = self
                .unknowns
                .iter()
                .position(|u| u == name)
                .ok_or_else(|| Error::UnknownName(name.to_string()))?;
            idx.push((col, c.clone()));
        }
        self.push_row(idx)
    }

    /// Whether `v` satisfies every row.
    pub fn satisfied_by(&self, v: &[Rational]) -> bool {
        self.rows.iter().all(|row| {
            row.iter()
                .fold(Rational::zero(), |acc, (c, a)| acc + a * &v[*c])
                .is_zero()
        })
    }

    pub fn dense(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![Rational::zero(); self.unknowns.len()];
                for (c, a) in row {
                    dense[*c] = a.clone();
                }
                dense
            })
            .collect()
    }

    /// Basis of the solution space; see [`nullspace`].
    pub fn solve_nullspace(&self) -> Vec<Vec<Rational>> {
        nullspace(self.dense(), self.unknowns.len())
    }
}

/// Reduced row echelon form; returns the nonzero rows (pivots normalised to 1,
/// ordered by pivot column) and the pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(pivot_row.iter()) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{v : rows · v = 0}`.
///
/// The basis is returned in reduced echelon form itself (leading entries 1,
/// ordered by leading column), so it depends only on the solution space and
/// not on how the rows were assembled.
pub fn nullspace(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in reduced.iter().zip(pivots.iter()) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    rref(basis, ncols).0
}
