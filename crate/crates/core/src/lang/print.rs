use crate::lcsa::Algebra;

use super::{MapDef, Model};

fn print_algebra(name: &str, alg: &Algebra, out: &mut String) {
    out.push_str(&format!("algebra {name} {{\n"));
    for (g, p) in alg.sig().generators() {
        out.push_str(&format!("    generator {g} {p};\n"));
    }
    let sig = alg.sig();
    for i in 0..alg.rank() {
        for j in i..alg.rank() {
            let v = alg.structure(i, j);
            if !v.is_zero() {
                out.push_str(&format!(
                    "    bracket [{}, {}] = {};\n",
                    sig.name(i),
                    sig.name(j),
                    v.to_source(sig)
                ));
            }
        }
    }
    out.push_str("}\n");
}

fn print_map(m: &MapDef, model: &Model, out: &mut String) {
    let target = model.algebra(&m.target).expect("map targets are defined");
    let source = model.algebra(&m.source).expect("map sources are defined");
    out.push_str(&format!("map {} : {} -> {} {{\n", m.name, m.source, m.target));
    for (i, img) in m.images.iter().enumerate() {
        out.push_str(&format!("    {} |-> {};\n", source.sig().name(i), img.to_source(target.sig())));
    }
    out.push_str(&format!("}} parity {};\n", m.parity));
}

/// Prints a model in source form. Brackets are written for pairs `[e_i, e_j]`
/// with `i ≤ j`; the others follow from skew-symmetry on re-parsing.
pub fn print_model(model: &Model) -> String {
    let mut out = String::new();
    for (name, alg) in &model.algebras {
        print_algebra(name, alg, &mut out);
    }
    for m in &model.maps {
        print_map(m, model, &mut out);
    }
    out
}
