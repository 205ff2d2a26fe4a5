//! Triple homomorphisms between algebras and their splitting into a
//! homomorphism plus an anti-homomorphism with orthogonal images.


use crate::error::{Error, Result};
use crate::exactpoly::{ratio, Indet, Poly};
use crate::lcsa::{center, Algebra, Element, SubspaceBasis};
use crate::maps::{HomKind, ModuleHom};
use crate::report::CheckReport;

/// Residuals `f([[e_i λ e_j]_{λ+μ} e_k]) - [[f(e_i) λ f(e_j)]_{λ+μ} f(e_k)]`.
pub fn check_triple_hom(f: &ModuleHom) -> CheckReport {
    let (src, dst) = (f.source(), f.target());
    let l = Poly::var(Indet::LAMBDA);
    let lm = &l + &Poly::var(Indet::MU);
    let mut report = CheckReport::new("triplehom");
    let imgs = f.images();
    for i in 0..src.rank() {
        for j in 0..src.rank() {
            let inner = src.structure(i, j);
            let image_inner = dst.bracket_at(&imgs[i], &imgs[j], &l);
            for k in 0..src.rank() {
                let lhs = f.apply(&src.bracket_at(inner, &src.generator(k), &lm));
                let rhs = dst.bracket_at(&image_inner, &imgs[k], &lm);
                report.record("triplehom", &[i, j, k], &lhs - &rhs);
            }
        }
    }
    report
}

fn same_ends(f: &ModuleHom, delta: &ModuleHom) -> Result<()> {
    if f.source() != delta.source() || f.target() != delta.target() {
        return Err(Error::SpaceMismatch("maps differ in source or target".into()));
    }
    Ok(())
}

/// `[(f+δ)(e_i) λ (f-δ)(e_j)]` for all generator pairs.
pub fn check_orthogonal_images(f: &ModuleHom, delta: &ModuleHom) -> Result<CheckReport> {
    same_ends(f, delta)?;
    let plus = f.add(delta)?;
    let minus = f.sub(delta)?;
    let l = Poly::var(Indet::LAMBDA);
    let mut report = CheckReport::new("orthogonal");
    let n = f.source().rank();
    for i in 0..n {
        for j in 0..n {
            let v = f.target().bracket_at(&plus.images()[i], &minus.images()[j], &l);
            report.record("orthogonal", &[i, j], v);
        }
    }
    Ok(report)
}

/// `f([e_i x e_j]) - [δ(e_i) x f(e_j)]` for all generator pairs.
pub fn check_hom_intertwiner(f: &ModuleHom, delta: &ModuleHom) -> Result<CheckReport> {
    same_ends(f, delta)?;
    let x = Poly::var(Indet::X);
    let mut report = CheckReport::new("hom-intertwiner");
    let n = f.source().rank();
    for i in 0..n {
        for j in 0..n {
            let structure = f.source().structure(i, j).subst(&[(Indet::LAMBDA, x.clone())]);
            let lhs = f.apply(&structure);
            let rhs = f.target().bracket_at(&delta.images()[i], &f.images()[j], &x);
            report.record("intertwiner", &[i, j], &lhs - &rhs);
        }
    }
    Ok(report)
}

/// Outcome of [`decompose_triple_hom`].
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub f_plus: ModuleHom,
    pub f_minus: ModuleHom,
    pub triple: CheckReport,
    pub plus_is_hom: CheckReport,
    pub minus_is_antihom: CheckReport,
    pub orthogonal: CheckReport,
    pub sums_back: bool,
    /// Hypotheses that were not verified, plus the bounded center check.
    pub notes: Vec<String>,
}

impl Decomposition {
    pub fn certified(&self) -> bool {
        self.triple.passed()
            && self.plus_is_hom.passed()
            && self.minus_is_antihom.passed()
            && self.orthogonal.passed()
            && self.sums_back
    }

    pub fn render(&self) -> String {
        let mark = |ok: bool| if ok { "yes" } else { "no" };
        let mut out = String::new();
        out.push_str(&format!("f_plus  = {}\n", self.f_plus.display()));
        out.push_str(&format!("f_minus = {}\n", self.f_minus.display()));
        out.push_str(&format!("f is a triple homomorphism: {}\n", mark(self.triple.passed())));
        out.push_str(&format!("f_plus is a homomorphism: {}\n", mark(self.plus_is_hom.passed())));
        out.push_str(&format!("f_minus is an anti-homomorphism: {}\n", mark(self.minus_is_antihom.passed())));
        out.push_str(&format!("images orthogonal: {}\n", mark(self.orthogonal.passed())));
        out.push_str(&format!("f = f_plus + f_minus: {}\n", mark(self.sums_back)));
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

/// Splits `f` as `(f+δ)/2 + (f-δ)/2` for a caller-supplied `δ` and checks
/// each property of the splitting. The `center_bound` controls the bounded
/// centerlessness check of the target.
pub fn decompose_triple_hom(f: &ModuleHom, delta: &ModuleHom, center_bound: u16) -> Result<Decomposition> {
    same_ends(f, delta)?;
    let half = ratio(1, 2);
    let f_plus = f.add(delta)?.scale(&half);
    let f_minus = f.sub(delta)?.scale(&half);
    let sums_back = f_plus.add(&f_minus)? == *f;
    let z = center(f.target(), center_bound);
    let mut notes = vec![format!(
        "center of {} up to ∂-degree {}: dimension {}",
        f.target().name(),
        center_bound,
        z.dim()
    )];
    notes.push("decomposability of the target into indecomposable ideals is assumed, not checked".into());
    Ok(Decomposition {
        triple: check_triple_hom(f),
        plus_is_hom: f_plus.hom_check(HomKind::Hom),
        minus_is_antihom: f_minus.hom_check(HomKind::AntiHom),
        orthogonal: check_orthogonal_images(f, delta)?,
        f_plus,
        f_minus,
        sums_back,
        notes,
    })
}

/// Result of [`enveloping_span`].
#[derive(Clone, Debug)]
pub struct Envelope {
    pub span: SubspaceBasis,
    /// False when the iteration cap was reached before the span stabilised.
    pub converged: bool,
    pub iterations: usize,
}

fn truncated(alg: &Algebra, bound: u16, elements: &[Element]) -> SubspaceBasis {
    let inside: Vec<Element> = elements
        .iter()
        .filter(|e| SubspaceBasis::coordinates(alg.rank(), bound, e).is_some())
        .cloned()
        .collect();
    SubspaceBasis::span(alg.rank(), bound, &inside).expect("filtered to the window")
}

/// Grows the span of `seeds` under ∂ and all n-products, discarding
/// anything of ∂-degree above `bound`, for at most `max_iterations` rounds.
pub fn enveloping_span(alg: &Algebra, seeds: &[Element], bound: u16, max_iterations: usize) -> Envelope {
    let mut span = truncated(alg, bound, seeds);
    for it in 0..max_iterations {
        let basis = span.vectors().to_vec();
        let mut grown = basis.clone();
        for u in &basis {
            grown.push(u.d());
            for v in &basis {
                let full = alg.bracket_at(u, v, &Poly::var(Indet::LAMBDA));
                let top = full.coords().iter().filter_map(|p| p.degree_in(Indet::LAMBDA)).max();
                for n in 0..=top.unwrap_or(0) {
                    let c = full.coeff(Indet::LAMBDA, n);
                    if !c.is_zero() {
                        grown.push(c);
                    }
                }
            }
        }
        let next = truncated(alg, bound, &grown);
        if next.dim() == span.dim() {
            return Envelope {
                span,
                converged: true,
                iterations: it + 1,
            };
        }
        span = next;
    }
    Envelope {
        span,
        converged: false,
        iterations: max_iterations,
    }
}

/// Whether every λ-coefficient of `[u λ e_j]` that fits in the window lies in
/// the span, for every basis vector `u` and generator `e_j`.
pub fn is_ideal_in_window(alg: &Algebra, span: &SubspaceBasis) -> bool {
    let l = Poly::var(Indet::LAMBDA);
    span.vectors().iter().all(|u| {
        (0..alg.rank()).all(|j| {
            let full = alg.bracket_at(u, &alg.generator(j), &l);
            let top = full.coords().iter().filter_map(|p| p.degree_in(Indet::LAMBDA)).max().unwrap_or(0);
            (0..=top).all(|n| {
                let c = full.coeff(Indet::LAMBDA, n);
                SubspaceBasis::coordinates(alg.rank(), span.degree_bound(), &c).is_none()
                    || c.is_zero()
                    || span.contains(&c)
            })
        })
    })
}
