#![allow(dead_code)]

use std::sync::Arc;

use conformal_forge::exactpoly::{ratio, Indet, Monomial, Poly};
use conformal_forge::lcsa::{build_named, direct_sum, Algebra, Element, NamedAlgebra};
use proptest::prelude::*;

pub fn named(name: &str) -> Algebra {
    build_named(NamedAlgebra::from_name(name).unwrap()).unwrap()
}

pub fn builtins() -> Vec<Algebra> {
    [
        "neveu_schwarz",
        "example22",
        "virasoro",
        "abelian:1",
        "abelian:3",
        "current:abelian1",
        "current:aff1",
        "current:sl2",
        "current:gl2",
        "current:osp12",
    ]
    .iter()
    .map(|n| named(n))
    .collect()
}

/// `NS ⊕ abelian(1)`: a centre makes triple centroids nonzero.
pub fn ns_plus_line() -> Arc<Algebra> {
    direct_sum(&named("neveu_schwarz"), &named("abelian:1")).algebra
}

pub fn d() -> Poly {
    Poly::var(Indet::D)
}

pub fn p(v: Indet) -> Poly {
    Poly::var(v)
}

pub fn small_rational() -> impl Strategy<Value = conformal_forge::Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

/// Polynomials in `vars` with at most `terms` terms of per-variable degree ≤ `max_exp`.
pub fn poly_in(vars: &'static [Indet], max_exp: u16, terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, vars.len()), small_rational()),
        0..=terms,
    )
    .prop_map(move |ts| {
        Poly::from_terms(ts.into_iter().map(|(exps, c)| {
            let pairs: Vec<(Indet, u16)> = vars.iter().copied().zip(exps).collect();
            (Monomial::from_exps(&pairs), c)
        }))
    })
}

pub fn d_poly() -> impl Strategy<Value = Poly> {
    poly_in(&[Indet::D], 2, 3)
}

pub fn element(rank: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(d_poly(), rank).prop_map(Element::from_coords)
}

/// An element supported on generators of a single parity.
pub fn homogeneous(alg: &Algebra) -> impl Strategy<Value = Element> {
    let sig = alg.sig().clone();
    let rank = alg.rank();
    (any::<bool>(), element(rank)).prop_map(move |(odd, e)| {
        let parity = if odd { conformal_forge::Parity::Odd } else { conformal_forge::Parity::Even };
        e.part(&sig, parity)
    })
}
