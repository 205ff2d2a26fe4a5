//! Python bindings: `import conformal_forge_py as cf`.

use std::sync::Arc;

use conformal_forge::basis_file::BasisFile;
use conformal_forge::derivations::{
    centralizer_in, check_tag, inner_space, solve_space, space_equal, space_intersect, sufficiency_self_test,
    PredicateTag, SolvedSpace,
};
use conformal_forge::homs::{check_triple_hom, decompose_triple_hom};
use conformal_forge::lang::{parse, parse_element};
use conformal_forge::lcsa::{build_named, center, direct_sum, NamedAlgebra};
use conformal_forge::maps::{ad, gc_bracket, HomKind};
use conformal_forge::report::CheckReport;
use conformal_forge::{Indet, Parity};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(conformal_forge_py, ConformalForgeError, PyException);

fn wrap<T>(r: conformal_forge::Result<T>) -> PyResult<T> {
    r.map_err(|e| ConformalForgeError::new_err(e.to_string()))
}

fn parity(s: &str) -> PyResult<Parity> {
    wrap(s.parse())
}

/// A Lie conformal superalgebra given by generator brackets.
#[pyclass(frozen, module = "conformal_forge_py")]
struct Algebra {
    inner: Arc<conformal_forge::Algebra>,
}

/// An element of an algebra; coefficients are polynomials in ∂ and possibly
/// λ or the map variable x.
#[pyclass(frozen, module = "conformal_forge_py")]
struct Element {
    alg: Arc<conformal_forge::Algebra>,
    inner: conformal_forge::Element,
}

/// A conformal linear map with variable x, stored by its generator images.
#[pyclass(frozen, module = "conformal_forge_py")]
struct ConformalMap {
    alg: Arc<conformal_forge::Algebra>,
    inner: conformal_forge::ConformalMap,
}

/// A ∂-linear map between two algebras.
#[pyclass(frozen, module = "conformal_forge_py")]
struct Hom {
    inner: conformal_forge::ModuleHom,
}

/// Outcome of a check: residuals of the identities that did not vanish.
#[pyclass(frozen, module = "conformal_forge_py")]
struct Report {
    text: String,
    json: String,
    passed: bool,
}

impl Report {
    fn new(r: &CheckReport, tuple_alg: &conformal_forge::Algebra, value_alg: &conformal_forge::Algebra) -> Report {
        Report {
            text: r.render(tuple_alg.sig(), value_alg.sig()),
            json: r.to_json(tuple_alg.sig(), value_alg.sig()).to_string(),
            passed: r.passed(),
        }
    }
}

/// A degree-bounded solution space.
#[pyclass(frozen, module = "conformal_forge_py")]
struct Space {
    inner: SolvedSpace,
}

#[pymethods]
impl Report {
    #[getter]
    fn passed(&self) -> bool {
        self.passed
    }

    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __bool__(&self) -> bool {
        self.passed
    }

    fn __str__(&self) -> String {
        self.text.clone()
    }

    fn __repr__(&self) -> String {
        format!("<Report passed={}>", self.passed)
    }
}

#[pymethods]
impl Algebra {
    /// Built-in algebra by name, e.g. `neveu_schwarz`, `abelian:2`, `current:sl2`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Algebra> {
        let alg = wrap(NamedAlgebra::from_name(name).and_then(build_named))?;
        Ok(Algebra { inner: Arc::new(alg) })
    }

    /// Algebra `name` defined in `.lcsa` source text.
    #[staticmethod]
    fn from_source(text: &str, name: &str) -> PyResult<Algebra> {
        Ok(Algebra {
            inner: wrap(parse(text).and_then(|m| m.algebra(name)))?,
        })
    }

    #[staticmethod]
    fn load(path: &str, name: &str) -> PyResult<Algebra> {
        let text = std::fs::read_to_string(path).map_err(|e| ConformalForgeError::new_err(format!("{path}: {e}")))?;
        Algebra::from_source(&text, name)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// `(name, parity)` for every generator.
    #[getter]
    fn generators(&self) -> Vec<(String, String)> {
        self.inner
            .sig()
            .generators()
            .iter()
            .map(|(n, p)| (n.clone(), p.as_str().to_string()))
            .collect()
    }

    /// Parses an element such as `(d + 1/2) L - G`.
    fn element(&self, expr: &str) -> PyResult<Element> {
        let e = wrap(parse_element(expr, self.inner.sig(), &[Indet::D]))?;
        Ok(Element {
            alg: self.inner.clone(),
            inner: e,
        })
    }

    fn generator(&self, name: &str) -> PyResult<Element> {
        Ok(Element {
            alg: self.inner.clone(),
            inner: wrap(self.inner.gen(name))?,
        })
    }

    /// `[a λ b]`.
    fn bracket(&self, a: &Element, b: &Element) -> PyResult<Element> {
        Ok(Element {
            alg: self.inner.clone(),
            inner: wrap(self.inner.bracket(&a.inner, &b.inner, Indet::LAMBDA))?,
        })
    }

    fn check_skew(&self) -> Report {
        Report::new(&self.inner.check_skew(), &self.inner, &self.inner)
    }

    fn check_jacobi(&self) -> Report {
        Report::new(&self.inner.check_jacobi(), &self.inner, &self.inner)
    }

    fn check_axioms(&self) -> Report {
        Report::new(&self.inner.check_axioms(), &self.inner, &self.inner)
    }

    /// Basis of the central elements of ∂-degree at most `deg`.
    #[pyo3(signature = (deg = 2))]
    fn center(&self, deg: u16) -> Vec<Element> {
        center(&self.inner, deg)
            .vectors()
            .iter()
            .map(|e| Element {
                alg: self.inner.clone(),
                inner: e.clone(),
            })
            .collect()
    }

    fn direct_sum(&self, other: &Algebra) -> Algebra {
        Algebra {
            inner: direct_sum(&self.inner, &other.inner).algebra,
        }
    }

    /// Conformal map with the given generator images, written with `d` and `x`.
    #[pyo3(signature = (images, parity = "even"))]
    fn conformal_map(&self, images: Vec<String>, parity: &str) -> PyResult<ConformalMap> {
        let sig = self.inner.sig();
        let images = images
            .iter()
            .map(|s| wrap(parse_element(s, sig, &[Indet::D, Indet::X])))
            .collect::<PyResult<Vec<_>>>()?;
        let p = self::parity(parity)?;
        Ok(ConformalMap {
            alg: self.inner.clone(),
            inner: wrap(conformal_forge::ConformalMap::new(sig, p, Indet::X, images))?,
        })
    }

    fn ad(&self, a: &Element) -> PyResult<ConformalMap> {
        Ok(ConformalMap {
            alg: self.inner.clone(),
            inner: wrap(ad(&self.inner, &a.inner))?,
        })
    }

    /// ∂-linear map into `target` with generator images written with `d`.
    #[pyo3(signature = (target, images, parity = "even"))]
    fn hom(&self, target: &Algebra, images: Vec<String>, parity: &str) -> PyResult<Hom> {
        let images = images
            .iter()
            .map(|s| wrap(parse_element(s, target.inner.sig(), &[Indet::D])))
            .collect::<PyResult<Vec<_>>>()?;
        let p = self::parity(parity)?;
        Ok(Hom {
            inner: wrap(conformal_forge::ModuleHom::new(self.inner.clone(), target.inner.clone(), p, images))?,
        })
    }

    /// Checks a conformal map against `cder`, `ctder`, `tc`, `tqc`, `ztder` or `abcd:A,B,C,D`.
    fn check_map(&self, phi: &ConformalMap, kind: &str) -> PyResult<Report> {
        let tag = wrap(PredicateTag::parse(kind))?;
        let r = wrap(check_tag(&self.inner, &tag, &phi.inner))?;
        Ok(Report::new(&r, &self.inner, &self.inner))
    }

    /// Solves for a basis of `space` (`cder`, `ctder`, `tc`, `tqc`, `ztder`,
    /// `gctder` or `abcd:A,B,C,D`) within total (∂, x)-degree `deg`.
    #[pyo3(signature = (space, parity = "even", deg = 2))]
    fn solve(&self, py: Python<'_>, space: &str, parity: &str, deg: u16) -> PyResult<Space> {
        let tag = wrap(PredicateTag::parse(space))?;
        let p = self::parity(parity)?;
        let alg = self.inner.clone();
        let solved = py.detach(move || solve_space(&alg, &tag, p, deg));
        Ok(Space { inner: wrap(solved)? })
    }

    #[pyo3(signature = (parity = "even", deg = 2))]
    fn inner_space(&self, parity: &str, deg: u16) -> PyResult<Space> {
        let p = self::parity(parity)?;
        Ok(Space {
            inner: SolvedSpace::Maps(wrap(inner_space(&self.inner, p, deg))?),
        })
    }

    /// Symbolic check that generator triples suffice for the triple identities.
    #[pyo3(signature = (deg = 1))]
    fn selftest(&self, deg: u16) -> PyResult<Report> {
        let r = wrap(sufficiency_self_test(&self.inner, deg))?;
        Ok(Report::new(&r, &self.inner, &self.inner))
    }

    fn __repr__(&self) -> String {
        format!("<Algebra {} of rank {}>", self.inner.name(), self.inner.rank())
    }
}

#[pymethods]
impl Element {
    #[getter]
    fn parity(&self) -> PyResult<Option<String>> {
        Ok(wrap(self.inner.parity(self.alg.sig()))?.map(|p| p.as_str().to_string()))
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `∂` applied to the element.
    fn d(&self) -> Element {
        Element {
            alg: self.alg.clone(),
            inner: self.inner.d(),
        }
    }

    /// Ascii form accepted by `Algebra.element`.
    fn source(&self) -> String {
        self.inner.to_source(self.alg.sig())
    }

    fn __add__(&self, other: &Element) -> Element {
        Element {
            alg: self.alg.clone(),
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &Element) -> Element {
        Element {
            alg: self.alg.clone(),
            inner: &self.inner - &other.inner,
        }
    }

    fn __neg__(&self) -> Element {
        Element {
            alg: self.alg.clone(),
            inner: -&self.inner,
        }
    }

    fn __eq__(&self, other: &Element) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.display(self.alg.sig())
    }

    fn __repr__(&self) -> String {
        format!("<Element {}>", self.inner.display(self.alg.sig()))
    }
}

#[pymethods]
impl ConformalMap {
    #[getter]
    fn parity(&self) -> String {
        self.inner.parity().as_str().to_string()
    }

    /// Generator images in ascii form.
    #[getter]
    fn images(&self) -> Vec<String> {
        self.inner.images().iter().map(|e| e.to_source(self.alg.sig())).collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `φ_x(a)`.
    fn apply(&self, a: &Element) -> Element {
        Element {
            alg: self.alg.clone(),
            inner: self.inner.apply(&a.inner, &conformal_forge::Poly::var(Indet::X)),
        }
    }

    /// `[φ_x ψ]_y`, returned with map variable y renamed to x and the
    /// bracket parameter x renamed to ν.
    fn bracket(&self, other: &ConformalMap) -> PyResult<ConformalMap> {
        let b = wrap(gc_bracket(&self.inner, &other.inner, Indet::NU, Indet::Y))?;
        Ok(ConformalMap {
            alg: self.alg.clone(),
            inner: wrap(b.with_var(Indet::X))?,
        })
    }

    fn __add__(&self, other: &ConformalMap) -> ConformalMap {
        ConformalMap {
            alg: self.alg.clone(),
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &ConformalMap) -> ConformalMap {
        ConformalMap {
            alg: self.alg.clone(),
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __eq__(&self, other: &ConformalMap) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.display(self.alg.sig())
    }

    fn __repr__(&self) -> String {
        format!("<ConformalMap {}>", self.inner.display(self.alg.sig()))
    }
}

#[pymethods]
impl Hom {
    fn is_hom(&self) -> Report {
        Report::new(&self.inner.hom_check(HomKind::Hom), self.inner.source(), self.inner.target())
    }

    fn is_antihom(&self) -> Report {
        Report::new(&self.inner.hom_check(HomKind::AntiHom), self.inner.source(), self.inner.target())
    }

    fn is_triple_hom(&self) -> Report {
        Report::new(&check_triple_hom(&self.inner), self.inner.source(), self.inner.target())
    }

    /// Whether the map is an automorphism, together with its determinant over ℚ[∂].
    fn is_automorphism(&self) -> (bool, String) {
        let cert = self.inner.is_automorphism();
        (cert.is_automorphism, cert.determinant.to_string())
    }

    /// Splits into `(f + δ)/2` and `(f - δ)/2`; returns `(certified, f_plus, f_minus, summary)`.
    fn decompose(&self, delta: &Hom) -> PyResult<(bool, Hom, Hom, String)> {
        let dec = wrap(decompose_triple_hom(&self.inner, &delta.inner, 2))?;
        Ok((
            dec.certified(),
            Hom { inner: dec.f_plus.clone() },
            Hom { inner: dec.f_minus.clone() },
            dec.render(),
        ))
    }

    fn __str__(&self) -> String {
        self.inner.display()
    }
}

impl Space {
    fn maps_space(&self) -> PyResult<&conformal_forge::derivations::MapSpace> {
        match &self.inner {
            SolvedSpace::Maps(m) => Ok(m),
            SolvedSpace::Pairs(_) => Err(ConformalForgeError::new_err("operation needs a space of single maps")),
        }
    }
}

#[pymethods]
impl Space {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Basis maps; for `gctder` spaces, the φ part of each pair.
    fn maps(&self, alg: &Algebra) -> Vec<ConformalMap> {
        let maps = match &self.inner {
            SolvedSpace::Maps(m) => m.maps(),
            SolvedSpace::Pairs(p) => p.pairs().into_iter().map(|(phi, _)| phi).collect(),
        };
        maps.into_iter()
            .map(|m| ConformalMap {
                alg: alg.inner.clone(),
                inner: m,
            })
            .collect()
    }

    fn contains(&self, phi: &ConformalMap) -> PyResult<bool> {
        Ok(self.maps_space()?.contains(&phi.inner))
    }

    fn equals(&self, other: &Space) -> PyResult<bool> {
        wrap(space_equal(self.maps_space()?, other.maps_space()?))
    }

    fn intersect(&self, other: &Space) -> PyResult<Space> {
        let s = wrap(space_intersect(self.maps_space()?, other.maps_space()?))?;
        Ok(Space {
            inner: SolvedSpace::Maps(s),
        })
    }

    /// Elements of this space whose gc-bracket with every basis map of `other` vanishes.
    fn centralizer(&self, other: &Space) -> PyResult<Space> {
        let s = wrap(centralizer_in(self.maps_space()?, other.maps_space()?, Indet::X, Indet::Y))?;
        Ok(Space {
            inner: SolvedSpace::Maps(s),
        })
    }

    /// Canonical basis file text.
    fn to_json(&self) -> String {
        BasisFile::from_solved(&self.inner).to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Space> {
        Ok(Space {
            inner: wrap(BasisFile::from_json(text).and_then(|f| f.to_solved()))?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.display()
    }

    fn __repr__(&self) -> String {
        format!("<Space of dimension {}>", self.inner.dim())
    }
}

#[pymodule]
fn conformal_forge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ConformalForgeError", m.py().get_type::<ConformalForgeError>())?;
    m.add_class::<Algebra>()?;
    m.add_class::<Element>()?;
    m.add_class::<ConformalMap>()?;
    m.add_class::<Hom>()?;
    m.add_class::<Report>()?;
    m.add_class::<Space>()?;
    Ok(())
}
