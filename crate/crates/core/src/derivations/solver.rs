use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::{rank, rref, Rational};
use crate::lcsa::{Algebra, Element, Parity, Signature};
use crate::maps::{ConformalMap, ModuleHom};
use crate::matching::Matcher;
use crate::report::CheckReport;

use super::ansatz::Ansatz;
use super::predicates::{
    cder_entries, ensure_automorphism, gctder_entries, to_report, weighted_entries, ztder_entries, AbcdParams, Entry,
};

/// Which identity a space is cut out by.
#[derive(Clone, Debug, PartialEq)]
pub enum PredicateTag {
    CDer,
    CTDer,
    Tc,
    Tqc,
    ZTDer,
    /// Pairs `(φ, τ)` with `τ` a triple derivation relating `φ`.
    GctderPair,
    Abcd(AbcdParams),
    /// Twisted by two automorphisms; the names are only used for labels.
    PhiPsi {
        names: [String; 2],
        maps: Box<[ModuleHom; 2]>,
    },
}

impl PredicateTag {
    /// Parses every tag except `phipsi`, which needs the automorphisms.
    pub fn parse(s: &str) -> Result<PredicateTag> {
        Ok(match s {
            "cder" => PredicateTag::CDer,
            "ctder" => PredicateTag::CTDer,
            "tc" => PredicateTag::Tc,
            "tqc" => PredicateTag::Tqc,
            "ztder" => PredicateTag::ZTDer,
            "gctder" => PredicateTag::GctderPair,
            _ => match s.strip_prefix("abcd:") {
                Some(rest) => PredicateTag::Abcd(rest.parse()?),
                None => return Err(Error::UnknownName(s.to_string())),
            },
        })
    }

    pub fn label(&self) -> String {
        match self {
            PredicateTag::CDer => "cder".into(),
            PredicateTag::CTDer => "ctder".into(),
            PredicateTag::Tc => "tc".into(),
            PredicateTag::Tqc => "tqc".into(),
            PredicateTag::ZTDer => "ztder".into(),
            PredicateTag::GctderPair => "gctder".into(),
            PredicateTag::Abcd(p) => format!("abcd:{p}"),
            PredicateTag::PhiPsi { names, .. } => format!("phipsi:{},{}", names[0], names[1]),
        }
    }

    /// Whether the identity is one of the triple (three-slot) identities.
    pub fn is_triple(&self) -> bool {
        !matches!(self, PredicateTag::CDer)
    }
}

impl fmt::Display for PredicateTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn entries(alg: &Algebra, tag: &PredicateTag, phi: &ConformalMap) -> Result<Vec<Entry>> {
    let w = |a, b, c, d| AbcdParams::ints(a, b, c, d).weights();
    match tag {
        PredicateTag::CDer => cder_entries(alg, phi),
        PredicateTag::CTDer => weighted_entries(alg, phi, "ctder", &w(1, 1, 1, 1), None),
        PredicateTag::Tc => weighted_entries(alg, phi, "tc", &w(1, 1, 0, 0), None),
        PredicateTag::Tqc => weighted_entries(alg, phi, "tqc", &w(0, 1, 0, -1), None),
        PredicateTag::ZTDer => ztder_entries(alg, phi),
        PredicateTag::Abcd(p) => weighted_entries(alg, phi, "abcd", &p.weights(), None),
        PredicateTag::PhiPsi { maps, .. } => {
            weighted_entries(alg, phi, "phipsi", &w(1, 1, 1, 1), Some((&maps[0], &maps[1])))
        }
        PredicateTag::GctderPair => Err(Error::SpaceMismatch("gctder needs a pair of maps".into())),
    }
}

/// Runs the predicate named by `tag` on a single map.
pub fn check_tag(alg: &Algebra, tag: &PredicateTag, phi: &ConformalMap) -> Result<CheckReport> {
    Ok(to_report(tag.label(), entries(alg, tag, phi)?))
}

/// A ℚ-subspace of an [`Ansatz`], stored as a reduced echelon basis of
/// coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpace {
    algebra: String,
    ansatz: Ansatz,
    tag: String,
    vectors: Vec<Vec<Rational>>,
}

impl MapSpace {
    pub fn from_vectors(
        algebra: impl Into<String>,
        sig: &Signature,
        parity: Parity,
        bound: u16,
        tag: impl Into<String>,
        vectors: Vec<Vec<Rational>>,
    ) -> Result<MapSpace> {
        let ansatz = Ansatz::new(sig, parity, bound);
        if let Some(v) = vectors.iter().find(|v| v.len() != ansatz.len()) {
            return Err(Error::RankMismatch {
                expected: ansatz.len(),
                got: v.len(),
            });
        }
        let n = ansatz.len();
        Ok(MapSpace {
            algebra: algebra.into(),
            ansatz,
            tag: tag.into(),
            vectors: rref(vectors, n).0,
        })
    }

    /// Span of maps that lie inside the ansatz window.
    pub fn from_maps(
        algebra: impl Into<String>,
        sig: &Signature,
        parity: Parity,
        bound: u16,
        tag: impl Into<String>,
        maps: &[ConformalMap],
    ) -> Result<MapSpace> {
        let ansatz = Ansatz::new(sig, parity, bound);
        let vectors = maps
            .iter()
            .map(|m| {
                ansatz
                    .coordinates(m)
                    .ok_or_else(|| Error::SpaceMismatch("map outside the ansatz window".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        MapSpace::from_vectors(algebra, sig, parity, bound, tag, vectors)
    }

    pub fn algebra(&self) -> &str {
        &self.algebra
    }

    pub fn ansatz(&self) -> &Ansatz {
        &self.ansatz
    }

    pub fn sig(&self) -> &Signature {
        self.ansatz.sig()
    }

    pub fn parity(&self) -> Parity {
        self.ansatz.parity()
    }

    pub fn bound(&self) -> u16 {
        self.ansatz.bound()
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> MapSpace {
        self.tag = tag.into();
        self
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn maps(&self) -> Vec<ConformalMap> {
        self.vectors.iter().map(|v| self.ansatz.map_from(v)).collect()
    }

    pub fn contains(&self, phi: &ConformalMap) -> bool {
        let Some(v) = self.ansatz.coordinates(phi) else {
            return false;
        };
        let mut rows = self.vectors.clone();
        rows.push(v);
        rank(rows, self.ansatz.len()) == self.dim()
    }

    pub(crate) fn same_window(&self, other: &MapSpace) -> Result<()> {
        if self.algebra != other.algebra || self.sig() != other.sig() {
            return Err(Error::SpaceMismatch(format!(
                "spaces belong to different algebras ({} vs {})",
                self.algebra, other.algebra
            )));
        }
        if self.bound() != other.bound() {
            return Err(Error::SpaceMismatch(format!(
                "degree bounds differ ({} vs {})",
                self.bound(),
                other.bound()
            )));
        }
        if self.parity() != other.parity() {
            return Err(Error::SpaceMismatch(format!(
                "parities differ ({} vs {})",
                self.parity(),
                other.parity()
            )));
        }
        Ok(())
    }

    pub fn display(&self) -> String {
        let mut out = format!(
            "{} space of {} ({} part, degree ≤ {}): dimension {}\n",
            self.tag,
            self.algebra,
            self.parity(),
            self.bound(),
            self.dim()
        );
        for (k, m) in self.maps().iter().enumerate() {
            out.push_str(&format!("  φ{}: {}\n", k + 1, m.display(self.sig())));
        }
        out
    }
}

/// Pairs `(φ, τ)` solving the generalized triple-derivation identity.
/// Vectors hold φ's ansatz coordinates followed by τ's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpace {
    algebra: String,
    ansatz: Ansatz,
    vectors: Vec<Vec<Rational>>,
}

impl PairSpace {
    pub fn from_vectors(
        algebra: impl Into<String>,
        sig: &Signature,
        parity: Parity,
        bound: u16,
        vectors: Vec<Vec<Rational>>,
    ) -> Result<PairSpace> {
        let ansatz = Ansatz::new(sig, parity, bound);
        let n = 2 * ansatz.len();
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::RankMismatch {
                expected: n,
                got: v.len(),
            });
        }
        Ok(PairSpace {
            algebra: algebra.into(),
            ansatz,
            vectors: rref(vectors, n).0,
        })
    }

    pub fn algebra(&self) -> &str {
        &self.algebra
    }

    pub fn ansatz(&self) -> &Ansatz {
        &self.ansatz
    }

    pub fn parity(&self) -> Parity {
        self.ansatz.parity()
    }

    pub fn bound(&self) -> u16 {
        self.ansatz.bound()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn pairs(&self) -> Vec<(ConformalMap, ConformalMap)> {
        let n = self.ansatz.len();
        self.vectors
            .iter()
            .map(|v| (self.ansatz.map_from(&v[..n]), self.ansatz.map_from(&v[n..])))
            .collect()
    }

    /// The relating maps τ that occur, as a space.
    pub fn tau_space(&self) -> MapSpace {
        let n = self.ansatz.len();
        MapSpace::from_vectors(
            self.algebra.clone(),
            self.ansatz.sig(),
            self.parity(),
            self.bound(),
            "gctder-tau",
            self.vectors.iter().map(|v| v[n..].to_vec()).collect(),
        )
        .expect("consistent widths")
    }

    pub fn display(&self) -> String {
        let sig = self.ansatz.sig();
        let mut out = format!(
            "gctder pairs of {} ({} part, degree ≤ {}): dimension {}\n",
            self.algebra,
            self.parity(),
            self.bound(),
            self.dim()
        );
        for (k, (p, t)) in self.pairs().iter().enumerate() {
            out.push_str(&format!("  pair {}:\n    φ: {}\n    τ: {}\n", k + 1, p.display(sig), t.display(sig)));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolvedSpace {
    Maps(MapSpace),
    Pairs(PairSpace),
}

impl SolvedSpace {
    pub fn dim(&self) -> usize {
        match self {
            SolvedSpace::Maps(s) => s.dim(),
            SolvedSpace::Pairs(p) => p.dim(),
        }
    }

    pub fn display(&self) -> String {
        match self {
            SolvedSpace::Maps(s) => s.display(),
            SolvedSpace::Pairs(p) => p.display(),
        }
    }

    pub fn into_maps(self) -> Option<MapSpace> {
        match self {
            SolvedSpace::Maps(s) => Some(s),
            SolvedSpace::Pairs(_) => None,
        }
    }

    pub fn into_pairs(self) -> Option<PairSpace> {
        match self {
            SolvedSpace::Pairs(p) => Some(p),
            SolvedSpace::Maps(_) => None,
        }
    }
}

fn values(entries: Vec<Entry>) -> Vec<Element> {
    entries.into_iter().map(|(_, _, v)| v).collect()
}

/// Basis of all maps (or pairs) inside the degree-`bound` ansatz satisfying
/// the identity named by `tag`. Each residual is linear in the unknowns, so
/// the residual of every unit map is one column of the coefficient system.
/// Every basis element is re-checked before it is returned.
pub fn solve_space(alg: &Algebra, tag: &PredicateTag, parity: Parity, bound: u16) -> Result<SolvedSpace> {
    if let PredicateTag::PhiPsi { maps, .. } = tag {
        ensure_automorphism(alg, &maps[0], "Φ")?;
        ensure_automorphism(alg, &maps[1], "Ψ")?;
    }
    let ansatz = Ansatz::new(alg.sig(), parity, bound);
    let n = ansatz.len();
    if *tag == PredicateTag::GctderPair {
        let zero = ConformalMap::zero(alg.sig(), parity);
        let columns = (0..2 * n)
            .into_par_iter()
            .map(|c| {
                let (phi, tau) = if c < n {
                    (ansatz.unit(c), zero.clone())
                } else {
                    (zero.clone(), ansatz.unit(c - n))
                };
                gctder_entries(alg, &phi, &tau).map(values)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut matcher = Matcher::new(2 * n);
        for (c, blocks) in columns.iter().enumerate() {
            matcher.add_column(c, blocks);
        }
        let space = PairSpace::from_vectors(alg.name(), alg.sig(), parity, bound, matcher.nullspace())?;
        for (phi, tau) in space.pairs() {
            if !to_report("gctder", gctder_entries(alg, &phi, &tau)?).passed() {
                return Err(Error::Internal("solved gctder pair fails its identity".into()));
            }
        }
        return Ok(SolvedSpace::Pairs(space));
    }
    let columns = (0..n)
        .into_par_iter()
        .map(|c| entries(alg, tag, &ansatz.unit(c)).map(values))
        .collect::<Result<Vec<_>>>()?;
    let mut matcher = Matcher::new(n);
    for (c, blocks) in columns.iter().enumerate() {
        matcher.add_column(c, blocks);
    }
    let space = MapSpace::from_vectors(alg.name(), alg.sig(), parity, bound, tag.label(), matcher.nullspace())?;
    for phi in space.maps() {
        if !check_tag(alg, tag, &phi)?.passed() {
            return Err(Error::Internal(format!("solved {} map fails its identity", tag.label())));
        }
    }
    Ok(SolvedSpace::Maps(space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcsa::{build_named, NamedAlgebra};
    use crate::maps::ad;

    #[test]
    fn tags_round_trip() {
        for s in ["cder", "ctder", "tc", "tqc", "ztder", "gctder", "abcd:1,2,3,4", "abcd:1/5,0,1,4/5"] {
            assert_eq!(PredicateTag::parse(s).unwrap().label(), s);
        }
        assert!(PredicateTag::parse("nope").is_err());
    }

    #[test]
    fn ns_even_derivations() {
        let ns = build_named(NamedAlgebra::NeveuSchwarz).unwrap();
        let s = solve_space(&ns, &PredicateTag::CDer, Parity::Even, 2).unwrap().into_maps().unwrap();
        // ad(L) and ad(∂L) fit in degree 2
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&ad(&ns, &ns.generator(0)).unwrap()));
        assert!(s.contains(&ad(&ns, &ns.generator(0).d()).unwrap()));
    }

    #[test]
    fn abelian_everything_is_a_triple_derivation() {
        let ab = build_named(NamedAlgebra::from_name("abelian:1").unwrap()).unwrap();
        let s = solve_space(&ab, &PredicateTag::CTDer, Parity::Even, 1).unwrap();
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn zero_weights_give_full_ansatz() {
        let ns = build_named(NamedAlgebra::NeveuSchwarz).unwrap();
        let s = solve_space(&ns, &PredicateTag::Abcd(AbcdParams::ints(0, 0, 0, 0)), Parity::Odd, 1).unwrap();
        assert_eq!(s.dim(), Ansatz::new(ns.sig(), Parity::Odd, 1).len());
    }
}
