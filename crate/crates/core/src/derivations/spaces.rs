use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::{nullspace, rank, Indet, Rational};
use crate::lcsa::{Algebra, Element, Parity};
use crate::maps::{ad, gc_bracket, ConformalMap};
use crate::matching::Matcher;

use super::ansatz::{Ansatz, AnsatzKey};
use super::solver::MapSpace;

/// Whether two spaces over the same window have the same span.
pub fn space_equal(s: &MapSpace, t: &MapSpace) -> Result<bool> {
    s.same_window(t)?;
    let n = s.ansatz().len();
    let mut rows = s.vectors().to_vec();
    rows.extend(t.vectors().iter().cloned());
    let joint = rank(rows, n);
    Ok(s.dim() == t.dim() && joint == s.dim())
}

fn combine(vectors: &[Vec<Rational>], coeffs: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// `span(S) ∩ span(T)`, from the kernel of `[S | -T]`.
pub fn space_intersect(s: &MapSpace, t: &MapSpace) -> Result<MapSpace> {
    s.same_window(t)?;
    let n = s.ansatz().len();
    let (ds, dt) = (s.dim(), t.dim());
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            s.vectors()
                .iter()
                .map(|v| v[r].clone())
                .chain(t.vectors().iter().map(|v| -v[r].clone()))
                .collect()
        })
        .collect();
    let vectors = nullspace(rows, ds + dt)
        .iter()
        .map(|k| combine(s.vectors(), &k[..ds], n))
        .collect();
    MapSpace::from_vectors(
        s.algebra(),
        s.sig(),
        s.parity(),
        s.bound(),
        format!("{} ∩ {}", s.tag(), t.tag()),
        vectors,
    )
}

/// Inner derivations `ad(∂^k e_i)` with `|e_i| = parity` and `k ≤ bound`,
/// restricted to the degree-`bound` window: the span is formed in a window
/// large enough to hold every generator, then intersected with the
/// coordinates of degree at most `bound`.
pub fn inner_space(alg: &Algebra, parity: Parity, bound: u16) -> Result<MapSpace> {
    let mut gens: Vec<ConformalMap> = Vec::new();
    for i in alg.sig().of_parity(parity) {
        let mut e = alg.generator(i);
        for _ in 0..=bound {
            gens.push(ad(alg, &e)?);
            e = e.d();
        }
    }
    let top = gens
        .iter()
        .flat_map(|m| m.images().iter().flat_map(Element::coords))
        .filter_map(|p| p.total_degree())
        .max()
        .unwrap_or(0) as u16;
    let wide = Ansatz::new(alg.sig(), parity, top.max(bound));
    let vectors: Vec<Vec<Rational>> = gens
        .iter()
        .map(|m| wide.coordinates(m).ok_or_else(|| Error::Internal("ad outside its window".into())))
        .collect::<Result<_>>()?;
    let outside: Vec<usize> = (0..wide.len())
        .filter(|&k| {
            let key = wide.keys()[k];
            key.d_exp + key.x_exp > bound
        })
        .collect();
    let rows: Vec<Vec<Rational>> = outside
        .iter()
        .map(|&k| vectors.iter().map(|v| v[k].clone()).collect())
        .collect();
    let narrow = Ansatz::new(alg.sig(), parity, bound);
    let restricted = nullspace(rows, vectors.len())
        .iter()
        .map(|c| {
            let full = combine(&vectors, c, wide.len());
            narrow
                .keys()
                .iter()
                .map(|key: &AnsatzKey| full[wide.position(key).expect("narrow keys are wide keys")].clone())
                .collect()
        })
        .collect();
    MapSpace::from_vectors(alg.name(), alg.sig(), parity, bound, "inner", restricted)
}

/// Elements `φ ∈ span(S)` with `[φ_x ψ]_y = 0` for every basis map `ψ` of
/// `T`.
pub fn centralizer_in(s: &MapSpace, t: &MapSpace, x: Indet, y: Indet) -> Result<MapSpace> {
    if s.algebra() != t.algebra() || s.sig() != t.sig() {
        return Err(Error::SpaceMismatch(format!(
            "spaces belong to different algebras ({} vs {})",
            s.algebra(),
            t.algebra()
        )));
    }
    let s_maps = s.maps();
    let t_maps = t.maps();
    let mut matcher = Matcher::new(s.dim());
    for (c, phi) in s_maps.iter().enumerate() {
        let mut blocks = Vec::new();
        for psi in &t_maps {
            let psi = psi.with_var(x)?;
            let phi = phi.with_var(x)?;
            blocks.extend(gc_bracket(&phi, &psi, x, y)?.images().iter().cloned());
        }
        matcher.add_column(c, &blocks);
    }
    let n = s.ansatz().len();
    let vectors = matcher.nullspace().iter().map(|k| combine(s.vectors(), k, n)).collect();
    MapSpace::from_vectors(
        s.algebra(),
        s.sig(),
        s.parity(),
        s.bound(),
        format!("centralizer of {} in {}", t.tag(), s.tag()),
        vectors,
    )
}
