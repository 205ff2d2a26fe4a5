mod common;

use std::sync::Arc;

use common::{named, small_rational};
use conformal_forge::exactpoly::{rat, Indet, Poly};
use conformal_forge::homs::{check_hom_intertwiner, check_orthogonal_images, check_triple_hom, decompose_triple_hom};
use conformal_forge::lcsa::direct_sum;
use conformal_forge::maps::HomKind;
use conformal_forge::{Algebra, Element, ModuleHom, Parity};
use proptest::prelude::*;

fn ns() -> Arc<Algebra> {
    Arc::new(named("neveu_schwarz"))
}

/// `a ↦ (s·a, t·a)` from NS into NS ⊕ NS.
fn diagonal(s: i64, t: i64) -> ModuleHom {
    let source = ns();
    let target = direct_sum(&source, &source).algebra;
    let images = (0..2)
        .map(|i| &Element::generator(4, i).scale(&rat(s)) + &Element::generator(4, i + 2).scale(&rat(t)))
        .collect();
    ModuleHom::new(source, target, Parity::Even, images).unwrap()
}

#[test]
fn homomorphisms_and_anti_homomorphisms_are_triple_homomorphisms() {
    let sum = direct_sum(&named("neveu_schwarz"), &named("current:sl2"));
    let neg = ModuleHom::identity(ns()).neg();
    let sign = ModuleHom::new(ns(), ns(), Parity::Even, vec![ns().generator(0), -ns().generator(1)]).unwrap();
    let candidates = [
        sum.injections[0].clone(),
        sum.projections[1].clone(),
        sign.clone(),
        sign.compose(&neg).unwrap(),
        neg.clone(),
        diagonal(1, -1),
    ];
    for f in &candidates {
        let hom = f.hom_check(HomKind::Hom).passed();
        let anti = f.hom_check(HomKind::AntiHom).passed();
        if hom || anti {
            assert!(check_triple_hom(f).passed(), "{}", f.display());
        }
    }
    assert!(neg.hom_check(HomKind::AntiHom).passed());
    assert!(!neg.hom_check(HomKind::Hom).passed());
    let mixed = diagonal(1, -1);
    assert!(check_triple_hom(&mixed).passed());
    assert!(!mixed.hom_check(HomKind::Hom).passed());
    assert!(!mixed.hom_check(HomKind::AntiHom).passed());
}

#[test]
fn diagonal_maps_split_into_hom_and_anti_hom_parts() {
    for s in -1..=1 {
        for t in -1..=1 {
            let f = diagonal(s, t);
            let delta = diagonal(s * s, t * t);
            assert!(check_hom_intertwiner(&f, &delta).unwrap().passed());
            let dec = decompose_triple_hom(&f, &delta, 1).unwrap();
            assert!(dec.certified(), "({s}, {t})\n{}", dec.render());
            assert_eq!(dec.f_plus, diagonal((s + s * s) / 2, (t + t * t) / 2));
            assert_eq!(dec.f_minus, diagonal((s - s * s) / 2, (t - t * t) / 2));
        }
    }
}

#[test]
fn a_wrong_intertwiner_is_reported() {
    let f = diagonal(1, -1);
    let delta = diagonal(1, -1);
    let dec = decompose_triple_hom(&f, &delta, 1).unwrap();
    assert!(!dec.plus_is_hom.passed());
    assert!(!dec.certified());
    let zero = diagonal(0, 0);
    assert!(!check_orthogonal_images(&f, &zero).unwrap().passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scalar_multiples_of_the_identity(c in small_rational()) {
        let f = ModuleHom::identity(ns()).scale(&c);
        let cube_fixed = &(&c * &c) * &c == c;
        prop_assert_eq!(check_triple_hom(&f).passed(), cube_fixed);
        prop_assert_eq!(f.hom_check(HomKind::Hom).passed(), &c * &c == c);
    }

    #[test]
    fn automorphisms_of_an_abelian_algebra(a in -3i64..=3, b in -3i64..=3, k in 0u32..=2) {
        let alg = Arc::new(named("abelian:2"));
        let d = Poly::var(Indet::D).pow(k).scale(&rat(b));
        let images = vec![
            &Element::generator(2, 0).scale(&rat(a)) + &Element::monomial(2, 1, d),
            Element::generator(2, 1),
        ];
        let f = ModuleHom::new(alg.clone(), alg, Parity::Even, images).unwrap();
        let cert = f.is_automorphism();
        prop_assert_eq!(cert.determinant.clone(), Poly::int(a));
        prop_assert_eq!(cert.is_automorphism, a != 0);
        if let Some(inv) = cert.inverse {
            prop_assert_eq!(inv.compose(&f).unwrap(), ModuleHom::identity(f.source().clone()));
            prop_assert_eq!(f.compose(&inv).unwrap(), ModuleHom::identity(f.source().clone()));
        }
    }
}

#[test]
fn stretching_by_d_is_not_invertible() {
    let stretch = ModuleHom::new(
        ns(),
        ns(),
        Parity::Even,
        vec![ns().generator(0).d(), ns().generator(1)],
    )
    .unwrap();
    let cert = stretch.is_automorphism();
    assert!(!cert.is_automorphism);
    assert_eq!(cert.determinant, Poly::var(Indet::D));
}
