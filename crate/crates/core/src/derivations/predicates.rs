use std::fmt;
use std::str::FromStr;


use crate::error::{Error, Result};
use crate::exactpoly::{parse_rational, Indet, Poly, Rational};
use crate::lcsa::{Algebra, Element, Parity};
use crate::maps::{ad_with_var, gc_bracket, ConformalMap, ModuleHom};
use crate::report::CheckReport;

/// Weights of an (A,B,C,D)-derivation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbcdParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl AbcdParams {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        AbcdParams { a, b, c, d }
    }

    pub fn ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |n: i64| Rational::from_integer(n.into());
        AbcdParams::new(r(a), r(b), r(c), r(d))
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        AbcdParams::new(&self.a * t, &self.b * t, &self.c * t, &self.d * t)
    }

    pub(crate) fn weights(&self) -> [Poly; 4] {
        [&self.a, &self.b, &self.c, &self.d].map(|w| Poly::constant(w.clone()))
    }
}

impl fmt::Display for AbcdParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for AbcdParams {
    type Err = Error;

    /// `"1,2,3,4"` or `"1/5,0,1,4/5"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::InvalidRational(s.to_string()));
        }
        let v = parts.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [Rational; 4] = v.try_into().expect("four parts");
        Ok(AbcdParams { a, b, c, d })
    }
}

/// The four terms of the triple-derivation identity on one triple, with the
/// super signs already applied:
///
/// * `lhs    = φ_x([[a λ b]_{λ+μ} c])`
/// * `first  = [[φ_x(a)_{λ+x} b]_{λ+μ+x} c]`
/// * `second = (-1)^{|φ||a|} [[a λ φ_x(b)]_{λ+μ+x} c]`
/// * `third  = (-1)^{|φ|(|a|+|b|)} [[a λ b]_{λ+μ} φ_x(c)]`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTerms {
    pub lhs: Element,
    pub first: Element,
    pub second: Element,
    pub third: Element,
}

impl TripleTerms {
    /// `w0·lhs - w1·first - w2·second - w3·third`.
    pub fn weighted(&self, w: &[Poly; 4]) -> Element {
        let mut out = Element::zero(self.lhs.rank());
        for (term, weight, sign) in [
            (&self.lhs, &w[0], 1),
            (&self.first, &w[1], -1),
            (&self.second, &w[2], -1),
            (&self.third, &w[3], -1),
        ] {
            if weight.is_zero() || term.is_zero() {
                continue;
            }
            let scaled = term.mul_poly(weight);
            out = if sign > 0 { &out + &scaled } else { &out - &scaled };
        }
        out
    }
}

fn lambda() -> Poly {
    Poly::var(Indet::LAMBDA)
}

fn mu() -> Poly {
    Poly::var(Indet::MU)
}

fn ensure_compatible(phi: &ConformalMap) -> Result<()> {
    let v = phi.var();
    if v == Indet::LAMBDA || v == Indet::MU {
        return Err(Error::VariableCollision(v.ascii().to_string()));
    }
    let params = phi.params();
    for v in [Indet::LAMBDA, Indet::MU] {
        if params.contains(&v) {
            return Err(Error::VariableCollision(v.ascii().to_string()));
        }
    }
    Ok(())
}

fn elem_parity(alg: &Algebra, e: &Element) -> Result<Parity> {
    Ok(e.parity(alg.sig())?.unwrap_or(Parity::Even))
}

/// Triple terms on arbitrary homogeneous elements, optionally twisted by a
/// pair of automorphisms `(Φ, Ψ)`: `first` then uses `Φ(b), Ψ(c)`, `second`
/// uses `Φ(a), Ψ(c)` and `third` uses `Φ(a), Ψ(b)`.
pub(crate) fn triple_terms_twisted(
    alg: &Algebra,
    phi: &ConformalMap,
    a: &Element,
    b: &Element,
    c: &Element,
    twist: Option<(&ModuleHom, &ModuleHom)>,
) -> Result<TripleTerms> {
    ensure_compatible(phi)?;
    let (pa, pb) = (elem_parity(alg, a)?, elem_parity(alg, b)?);
    let (l, m, x) = (lambda(), mu(), Poly::var(phi.var()));
    let lm = &l + &m;
    let lmx = &lm + &x;
    let (fa, fb) = match twist {
        Some((f, _)) => (f.apply(a), f.apply(b)),
        None => (a.clone(), b.clone()),
    };
    let (gb, gc) = match twist {
        Some((_, g)) => (g.apply(b), g.apply(c)),
        None => (b.clone(), c.clone()),
    };
    let ab = alg.bracket_at(a, b, &l);
    let lhs = phi.apply(&alg.bracket_at(&ab, c, &lm), &x);
    let first = alg.bracket_at(&alg.bracket_at(&phi.apply(a, &x), &fb, &(&l + &x)), &gc, &lmx);
    let second = alg
        .bracket_at(&alg.bracket_at(&fa, &phi.apply(b, &x), &l), &gc, &lmx)
        .scale(&Parity::sign(phi.parity(), pa));
    let inner = if twist.is_some() { alg.bracket_at(&fa, &gb, &l) } else { ab };
    let third = alg
        .bracket_at(&inner, &phi.apply(c, &x), &lm)
        .scale(&Parity::sign(phi.parity(), pa + pb));
    Ok(TripleTerms {
        lhs,
        first,
        second,
        third,
    })
}

/// Triple terms on homogeneous elements `a, b, c`.
pub fn triple_terms(alg: &Algebra, phi: &ConformalMap, a: &Element, b: &Element, c: &Element) -> Result<TripleTerms> {
    triple_terms_twisted(alg, phi, a, b, c, None)
}

/// A residual instance: label, generator tuple, value.
pub(crate) type Entry = (&'static str, Vec<usize>, Element);

pub(crate) fn to_report(name: impl Into<String>, entries: Vec<Entry>) -> CheckReport {
    let mut report = CheckReport::new(name);
    for (label, tuple, value) in entries {
        report.record(label, &tuple, value);
    }
    report
}

fn triples(rank: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..rank).flat_map(move |i| (0..rank).flat_map(move |j| (0..rank).map(move |k| (i, j, k))))
}

pub(crate) fn cder_entries(alg: &Algebra, phi: &ConformalMap) -> Result<Vec<Entry>> {
    ensure_compatible(phi)?;
    let (l, x) = (lambda(), Poly::var(phi.var()));
    let lx = &l + &x;
    let mut out = Vec::new();
    for i in 0..alg.rank() {
        for j in 0..alg.rank() {
            let (ei, ej) = (alg.generator(i), alg.generator(j));
            let lhs = phi.apply(alg.structure(i, j), &x);
            let first = alg.bracket_at(&phi.apply(&ei, &x), &ej, &lx);
            let second = alg
                .bracket_at(&ei, &phi.apply(&ej, &x), &l)
                .scale(&Parity::sign(phi.parity(), alg.sig().parity(i)));
            out.push(("cder", vec![i, j], &(&lhs - &first) - &second));
        }
    }
    Ok(out)
}

pub(crate) fn weighted_entries(
    alg: &Algebra,
    phi: &ConformalMap,
    label: &'static str,
    w: &[Poly; 4],
    twist: Option<(&ModuleHom, &ModuleHom)>,
) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for (i, j, k) in triples(alg.rank()) {
        let t = triple_terms_twisted(alg, phi, &alg.generator(i), &alg.generator(j), &alg.generator(k), twist)?;
        out.push((label, vec![i, j, k], t.weighted(w)));
    }
    Ok(out)
}

pub(crate) fn ztder_entries(alg: &Algebra, phi: &ConformalMap) -> Result<Vec<Entry>> {
    let one = Poly::one;
    let z = Poly::zero;
    let mut out = weighted_entries(alg, phi, "ztder-image", &[one(), z(), z(), z()], None)?;
    out.extend(weighted_entries(alg, phi, "ztder-slot", &[z(), -one(), z(), z()], None)?);
    Ok(out)
}

pub(crate) fn gctder_entries(alg: &Algebra, phi: &ConformalMap, tau: &ConformalMap) -> Result<Vec<Entry>> {
    if phi.parity() != tau.parity() {
        return Err(Error::ParityMismatch(format!(
            "φ is {} but τ is {}",
            phi.parity(),
            tau.parity()
        )));
    }
    let tau = tau.with_var(phi.var())?;
    let mut out = Vec::new();
    for (i, j, k) in triples(alg.rank()) {
        let (a, b, c) = (alg.generator(i), alg.generator(j), alg.generator(k));
        let p = triple_terms(alg, phi, &a, &b, &c)?;
        let t = triple_terms(alg, &tau, &a, &b, &c)?;
        let residual = &(&(&p.lhs - &p.first) - &t.second) - &t.third;
        out.push(("gctder", vec![i, j, k], residual));
    }
    let ones = [Poly::one(), Poly::one(), Poly::one(), Poly::one()];
    out.extend(weighted_entries(alg, &tau, "tau-ctder", &ones, None)?);
    Ok(out)
}

/// Leibniz rule `φ_x([a λ b]) = [φ_x(a)_{x+λ} b] + (-1)^{|φ||a|}[a λ φ_x(b)]`
/// on generator pairs; replacing `a` by `∂a` multiplies every term by `-λ`,
/// replacing `b` by `∂b` multiplies every term by `∂+λ+x`.
pub fn check_cder(alg: &Algebra, phi: &ConformalMap) -> Result<CheckReport> {
    Ok(to_report("cder", cder_entries(alg, phi)?))
}

/// `A·lhs - B·first - C·second - D·third` on generator triples.
pub fn check_abcd(alg: &Algebra, phi: &ConformalMap, p: &AbcdParams) -> Result<CheckReport> {
    Ok(to_report(format!("abcd({p})"), weighted_entries(alg, phi, "abcd", &p.weights(), None)?))
}

pub fn check_ctder(alg: &Algebra, phi: &ConformalMap) -> Result<CheckReport> {
    let w = AbcdParams::ints(1, 1, 1, 1).weights();
    Ok(to_report("ctder", weighted_entries(alg, phi, "ctder", &w, None)?))
}

/// Triple centroid: `lhs = first`.
pub fn check_tc(alg: &Algebra, phi: &ConformalMap) -> Result<CheckReport> {
    let w = AbcdParams::ints(1, 1, 0, 0).weights();
    Ok(to_report("tc", weighted_entries(alg, phi, "tc", &w, None)?))
}

/// Triple quasicentroid: `first = third`.
pub fn check_tqc(alg: &Algebra, phi: &ConformalMap) -> Result<CheckReport> {
    let w = AbcdParams::ints(0, 1, 0, -1).weights();
    Ok(to_report("tqc", weighted_entries(alg, phi, "tqc", &w, None)?))
}

/// Central triple derivation: `lhs = 0` and `first = 0`.
pub fn check_ztder(alg: &Algebra, phi: &ConformalMap) -> Result<CheckReport> {
    Ok(to_report("ztder", ztder_entries(alg, phi)?))
}

/// Generalized triple derivation with relating map `τ`; the report also
/// carries the triple-derivation residuals of `τ` (label `tau-ctder`).
pub fn check_gctder(alg: &Algebra, phi: &ConformalMap, tau: &ConformalMap) -> Result<CheckReport> {
    Ok(to_report("gctder", gctder_entries(alg, phi, tau)?))
}

pub(crate) fn ensure_automorphism(alg: &Algebra, f: &ModuleHom, which: &str) -> Result<()> {
    if **f.source() != *alg {
        return Err(Error::NotAutomorphism(format!("{which} is not an endomorphism of {}", alg.name())));
    }
    let cert = f.is_automorphism();
    if !cert.is_automorphism {
        return Err(Error::NotAutomorphism(format!(
            "{which}: {}",
            cert.reason.unwrap_or_default()
        )));
    }
    Ok(())
}

/// Triple-derivation identity twisted by the automorphisms `Φ` (big phi) and
/// `Ψ`.
pub fn check_phipsi(alg: &Algebra, phi: &ConformalMap, big_phi: &ModuleHom, big_psi: &ModuleHom) -> Result<CheckReport> {
    ensure_automorphism(alg, big_phi, "Φ")?;
    ensure_automorphism(alg, big_psi, "Ψ")?;
    let ones = [Poly::one(), Poly::one(), Poly::one(), Poly::one()];
    Ok(to_report(
        "phipsi",
        weighted_entries(alg, phi, "phipsi", &ones, Some((big_phi, big_psi)))?,
    ))
}

/// `[φ_x (ad e_i)]_y - ad(δ_x(e_i))_y` for every generator; tuples are
/// `(i, j)` with `j` the generator the difference is evaluated on.
pub fn check_intertwiner(alg: &Algebra, phi: &ConformalMap, delta: &ConformalMap) -> Result<CheckReport> {
    if phi.parity() != delta.parity() {
        return Err(Error::ParityMismatch(format!(
            "φ is {} but δ is {}",
            phi.parity(),
            delta.parity()
        )));
    }
    let (x, y) = (Indet::X, Indet::Y);
    let phi = phi.with_var(x)?;
    let delta = delta.with_var(x)?;
    let mut report = CheckReport::new("intertwiner");
    for i in 0..alg.rank() {
        let ei = alg.generator(i);
        let left = gc_bracket(&phi, &ad_with_var(alg, &ei, x)?, x, y)?;
        let right = ad_with_var(alg, &delta.apply(&ei, &Poly::var(x)), y)?;
        for j in 0..alg.rank() {
            report.record("intertwiner", &[i, j], left.image(j) - right.image(j));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;
    use crate::lcsa::{build_named, NamedAlgebra};
    use crate::maps::ad;

    fn ns() -> Algebra {
        build_named(NamedAlgebra::NeveuSchwarz).unwrap()
    }

    #[test]
    fn ad_is_a_derivation() {
        let ns = ns();
        for i in 0..2 {
            let phi = ad(&ns, &ns.generator(i)).unwrap();
            assert!(check_cder(&ns, &phi).unwrap().passed());
            assert!(check_ctder(&ns, &phi).unwrap().passed());
        }
    }

    #[test]
    fn identity_is_not_a_derivation() {
        let ns = ns();
        let id = ConformalMap::identity(ns.sig());
        let report = check_cder(&ns, &id).unwrap();
        // id_x((∂+2λ)L) - (∂+2x+2λ)L - (∂+2λ)L
        let d = Poly::var(Indet::D);
        let expected = -(&(&d + &lambda().scale(&rat(2))) + &Poly::var(Indet::X));
        assert_eq!(report.find("cder", &[0, 0]), Some(&Element::monomial(2, 0, expected)));
    }

    #[test]
    fn degenerate_weights_accept_everything() {
        let ns = ns();
        let id = ConformalMap::identity(ns.sig());
        assert!(check_abcd(&ns, &id, &AbcdParams::ints(0, 0, 0, 0)).unwrap().passed());
        let z = ConformalMap::zero(ns.sig(), Parity::Odd);
        assert!(check_abcd(&ns, &z, &AbcdParams::ints(3, -1, 2, 5)).unwrap().passed());
    }

    #[test]
    fn ad_l_is_not_central() {
        let ns = ns();
        let phi = ad(&ns, &ns.generator(0)).unwrap();
        assert!(!check_ztder(&ns, &phi).unwrap().passed());
        assert!(check_ztder(&ns, &ConformalMap::zero(ns.sig(), Parity::Even)).unwrap().passed());
    }

    #[test]
    fn gctder_with_equal_maps() {
        let ns = ns();
        let phi = ad(&ns, &ns.generator(0)).unwrap();
        assert!(check_gctder(&ns, &phi, &phi).unwrap().passed());
        let odd = ad(&ns, &ns.generator(1)).unwrap();
        assert!(matches!(check_gctder(&ns, &phi, &odd), Err(Error::ParityMismatch(_))));
    }

    #[test]
    fn identity_is_not_a_triple_centroid() {
        // (L, L, L): lhs = (λ-μ)(∂+x+2λ+2μ)L, first = (λ+x-μ)(∂+2λ+2μ+2x)L
        let ns = ns();
        let id = ConformalMap::identity(ns.sig());
        assert!(!check_tc(&ns, &id).unwrap().passed());
    }

    #[test]
    fn intertwiner_on_ad() {
        let ns = ns();
        let phi = ad(&ns, &ns.generator(0)).unwrap();
        assert!(check_intertwiner(&ns, &phi, &phi).unwrap().passed());
        let z = ConformalMap::zero(ns.sig(), Parity::Even);
        assert!(check_intertwiner(&ns, &z, &z).unwrap().passed());
    }

    #[test]
    fn params_parse() {
        let p: AbcdParams = "1/5, 0, 1, 4/5".parse().unwrap();
        assert_eq!(p.to_string(), "1/5,0,1,4/5");
        assert!("1,2,3".parse::<AbcdParams>().is_err());
    }
}
