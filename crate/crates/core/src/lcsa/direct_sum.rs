use std::sync::Arc;

use crate::maps::ModuleHom;

use super::algebra::Algebra;
use super::element::{Element, Signature};
use super::parity::Parity;

/// `A ⊕ B` with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub algebra: Arc<Algebra>,
    pub injections: [ModuleHom; 2],
    pub projections: [ModuleHom; 2],
}

/// Direct sum with vanishing cross brackets. Generator names shared by both
/// summands get the suffixes `#1` and `#2`.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> DirectSum {
    let (ra, rb) = (a.rank(), b.rank());
    let n = ra + rb;
    let clash = |name: &str, other: &Signature| other.index_of(name).is_some();
    let mut gens: Vec<(String, Parity)> = Vec::with_capacity(n);
    for (name, p) in a.sig().generators() {
        let name = if clash(name, b.sig()) { format!("{name}#1") } else { name.clone() };
        gens.push((name, *p));
    }
    for (name, p) in b.sig().generators() {
        let name = if clash(name, a.sig()) { format!("{name}#2") } else { name.clone() };
        gens.push((name, *p));
    }
    let sig = Signature::new(gens).expect("summand signatures are valid");
    let embed = |e: &Element, offset: usize| {
        let mut out = Element::zero(n);
        for k in e.support() {
            *out.coord_mut(offset + k) = e.coord(k).clone();
        }
        out
    };
    let mut builder = Algebra::builder(format!("{} ⊕ {}", a.name(), b.name()), sig);
    for i in 0..ra {
        for j in 0..ra {
            builder.bracket(i, j, embed(a.structure(i, j), 0)).expect("summand bracket");
        }
    }
    for i in 0..rb {
        for j in 0..rb {
            builder.bracket(ra + i, ra + j, embed(b.structure(i, j), ra)).expect("summand bracket");
        }
    }
    let sum = Arc::new(builder.build().expect("direct sum of complete tables"));
    let (aa, bb) = (Arc::new(a.clone()), Arc::new(b.clone()));
    let inj = |src: &Arc<Algebra>, offset: usize| {
        let images = (0..src.rank()).map(|i| sum.generator(offset + i)).collect();
        ModuleHom::new(src.clone(), sum.clone(), Parity::Even, images).expect("injection")
    };
    let proj = |dst: &Arc<Algebra>, offset: usize| {
        let images = (0..n)
            .map(|i| {
                if i >= offset && i < offset + dst.rank() {
                    dst.generator(i - offset)
                } else {
                    dst.zero()
                }
            })
            .collect();
        ModuleHom::new(sum.clone(), dst.clone(), Parity::Even, images).expect("projection")
    };
    DirectSum {
        injections: [inj(&aa, 0), inj(&bb, ra)],
        projections: [proj(&aa, 0), proj(&bb, ra)],
        algebra: sum.clone(),
    }
}
