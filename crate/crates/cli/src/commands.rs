use std::path::Path;
use std::sync::Arc;

use conformal_forge::basis_file::BasisFile;
use conformal_forge::derivations::{
    centralizer_in, check_gctder, check_intertwiner, check_phipsi, check_tag, inner_space, solve_space,
    space_equal, space_intersect, sufficiency_self_test, MapSpace, PredicateTag, SolvedSpace,
};
use conformal_forge::homs::{check_hom_intertwiner, check_orthogonal_images, check_triple_hom, decompose_triple_hom};
use conformal_forge::lang::{parse, print_model, Model};
use conformal_forge::lcsa::center;
use conformal_forge::maps::HomKind;
use conformal_forge::report::CheckReport;
use conformal_forge::{Algebra, Error, Indet, Parity, Result};
use serde_json::json;

use crate::{AlgebraArgs, Command};

fn load(path: &Path) -> Result<Model> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::UnknownName(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse { line, col, msg } => Error::Parse {
            line,
            col,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    })
}

fn load_algebra(args: &AlgebraArgs) -> Result<(Model, Arc<Algebra>)> {
    let model = load(&args.file)?;
    let alg = model.algebra(&args.algebra)?;
    Ok((model, alg))
}

fn parity(s: &str) -> Result<Parity> {
    s.parse()
}

fn emit(report: &CheckReport, alg: &Algebra, value_alg: &Algebra, json: bool) -> bool {
    if json {
        println!("{}", report.to_json(alg.sig(), value_alg.sig()));
    } else {
        print!("{}", report.render(alg.sig(), value_alg.sig()));
    }
    report.passed()
}

fn tag(model: &Model, alg: &Algebra, spec: &str) -> Result<PredicateTag> {
    if let Some(rest) = spec.strip_prefix("phipsi:") {
        let names: Vec<&str> = rest.split(',').map(str::trim).collect();
        let [phi, psi] = names[..] else {
            return Err(Error::UnknownName(format!("expected phipsi:PHI,PSI, found `{spec}`")));
        };
        let maps = [model.module_hom(phi)?, model.module_hom(psi)?];
        if maps.iter().any(|m| **m.source() != *alg) {
            return Err(Error::NotAutomorphism("automorphisms must act on the solved algebra".into()));
        }
        return Ok(PredicateTag::PhiPsi {
            names: [phi.to_string(), psi.to_string()],
            maps: Box::new(maps),
        });
    }
    PredicateTag::parse(spec)
}

fn save(file: &BasisFile, out: &Option<std::path::PathBuf>, json: bool, text: String) -> Result<()> {
    if let Some(path) = out {
        file.write(path)?;
    }
    if json && out.is_none() {
        print!("{}", file.to_json());
    } else {
        print!("{text}");
    }
    Ok(())
}

fn read_space(path: &Path) -> Result<MapSpace> {
    BasisFile::read(path)?.to_space()
}

pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Check { alg, out } => {
            let (_, a) = load_algebra(&alg)?;
            let report = a.check_axioms();
            Ok(emit(&report, &a, &a, out.json))
        }
        Command::Solve {
            alg,
            space,
            parity: p,
            deg,
            out,
            fmt,
        } => {
            let (model, a) = load_algebra(&alg)?;
            let tag = tag(&model, &a, &space)?;
            if tag.is_triple() {
                let st = sufficiency_self_test(&a, deg.min(1))?;
                if !st.passed() {
                    return Err(Error::Internal(format!("generator sufficiency failed:\n{}", st.render(a.sig(), a.sig()))));
                }
            }
            let solved = solve_space(&a, &tag, parity(&p)?, deg)?;
            save(&BasisFile::from_solved(&solved), &out, fmt.json, solved.display())?;
            Ok(true)
        }
        Command::Inner {
            alg,
            parity: p,
            deg,
            out,
            fmt,
        } => {
            let (_, a) = load_algebra(&alg)?;
            let s = inner_space(&a, parity(&p)?, deg)?;
            save(&BasisFile::from_space(&s), &out, fmt.json, s.display())?;
            Ok(true)
        }
        Command::Compare { first, second, fmt } => {
            let (s, t) = (BasisFile::read(&first)?.to_solved()?, BasisFile::read(&second)?.to_solved()?);
            let equal = match (&s, &t) {
                (SolvedSpace::Maps(s), SolvedSpace::Maps(t)) => space_equal(s, t)?,
                (SolvedSpace::Pairs(s), SolvedSpace::Pairs(t)) => {
                    if s.algebra() != t.algebra() || s.ansatz() != t.ansatz() {
                        return Err(Error::SpaceMismatch("pair spaces over different windows".into()));
                    }
                    s.vectors() == t.vectors()
                }
                _ => return Err(Error::SpaceMismatch("cannot compare a pair space with a map space".into())),
            };
            if fmt.json {
                println!("{}", json!({ "equal": equal, "dims": [s.dim(), t.dim()] }));
            } else {
                println!("equal: {equal} (dimensions {} and {})", s.dim(), t.dim());
            }
            Ok(equal)
        }
        Command::Intersect { first, second, out, fmt } => {
            let s = space_intersect(&read_space(&first)?, &read_space(&second)?)?;
            save(&BasisFile::from_space(&s), &out, fmt.json, s.display())?;
            Ok(true)
        }
        Command::Centralizer { first, second, out, fmt } => {
            let s = centralizer_in(&read_space(&first)?, &read_space(&second)?, Indet::X, Indet::Y)?;
            save(&BasisFile::from_space(&s), &out, fmt.json, s.display())?;
            Ok(true)
        }
        Command::Checkmap {
            file,
            map,
            kind,
            tau,
            delta,
            fmt,
        } => checkmap(&load(&file)?, &map, &kind, tau.as_deref(), delta.as_deref(), fmt.json),
        Command::Selftest { alg, deg, fmt } => {
            let (_, a) = load_algebra(&alg)?;
            Ok(emit(&sufficiency_self_test(&a, deg)?, &a, &a, fmt.json))
        }
        Command::Center { alg, deg } => {
            let (_, a) = load_algebra(&alg)?;
            let z = center(&a, deg);
            println!("center of {} up to ∂-degree {deg}: dimension {}", a.name(), z.dim());
            for v in z.vectors() {
                println!("  {}", v.display(a.sig()));
            }
            Ok(true)
        }
        Command::Print { file } => {
            print!("{}", print_model(&load(&file)?));
            Ok(true)
        }
    }
}

fn companion<'a>(name: Option<&'a str>, flag: &str, kind: &str) -> Result<&'a str> {
    name.ok_or_else(|| Error::UnknownName(format!("--kind {kind} needs --{flag}")))
}

fn checkmap(model: &Model, map: &str, kind: &str, tau: Option<&str>, delta: Option<&str>, json: bool) -> Result<bool> {
    let def = model.map(map)?;
    let source = model.algebra(&def.source)?;
    let target = model.algebra(&def.target)?;
    match kind {
        "hom" | "antihom" => {
            let k = if kind == "hom" { HomKind::Hom } else { HomKind::AntiHom };
            Ok(emit(&model.module_hom(map)?.hom_check(k), &source, &target, json))
        }
        "triplehom" => Ok(emit(&check_triple_hom(&model.module_hom(map)?), &source, &target, json)),
        "automorphism" => {
            let cert = model.module_hom(map)?.is_automorphism();
            if json {
                println!(
                    "{}",
                    json!({
                        "automorphism": cert.is_automorphism,
                        "determinant": cert.determinant.to_source(),
                        "inverse": cert.inverse.as_ref().map(|f| f.images().iter().map(|e| e.to_source(source.sig())).collect::<Vec<_>>()),
                        "reason": cert.reason,
                        "hom": cert.hom_report.to_json(source.sig(), target.sig()),
                    })
                );
            } else {
                println!("automorphism: {}", if cert.is_automorphism { "yes" } else { "no" });
                println!("determinant: {}", cert.determinant);
                if let Some(r) = &cert.reason {
                    println!("reason: {r}");
                }
                if let Some(inv) = &cert.inverse {
                    println!("inverse: {}", inv.display());
                }
            }
            Ok(cert.is_automorphism)
        }
        "orthogonal" | "hom-intertwiner" | "decompose" => {
            let f = model.module_hom(map)?;
            let d = model.module_hom(companion(delta, "delta", kind)?)?;
            match kind {
                "orthogonal" => Ok(emit(&check_orthogonal_images(&f, &d)?, &source, &target, json)),
                "hom-intertwiner" => Ok(emit(&check_hom_intertwiner(&f, &d)?, &source, &target, json)),
                _ => {
                    let dec = decompose_triple_hom(&f, &d, 2)?;
                    if json {
                        println!(
                            "{}",
                            json!({
                                "certified": dec.certified(),
                                "f_plus": dec.f_plus.images().iter().map(|e| e.to_source(target.sig())).collect::<Vec<_>>(),
                                "f_minus": dec.f_minus.images().iter().map(|e| e.to_source(target.sig())).collect::<Vec<_>>(),
                                "triplehom": dec.triple.passed(),
                                "plus_is_hom": dec.plus_is_hom.passed(),
                                "minus_is_antihom": dec.minus_is_antihom.passed(),
                                "orthogonal": dec.orthogonal.passed(),
                                "sums_back": dec.sums_back,
                                "notes": dec.notes,
                            })
                        );
                    } else {
                        print!("{}", dec.render());
                    }
                    Ok(dec.certified())
                }
            }
        }
        _ => {
            let phi = model.conformal_map(map)?;
            let report = if kind == "gctder" {
                let t = model.conformal_map(companion(tau, "tau", kind)?)?;
                check_gctder(&source, &phi, &t)?
            } else if kind == "intertwiner" {
                let d = model.conformal_map(companion(delta, "delta", kind)?)?;
                check_intertwiner(&source, &phi, &d)?
            } else if let Some(rest) = kind.strip_prefix("phipsi:") {
                let names: Vec<&str> = rest.split(',').map(str::trim).collect();
                let [a, b] = names[..] else {
                    return Err(Error::UnknownName(format!("expected phipsi:PHI,PSI, found `{kind}`")));
                };
                check_phipsi(&source, &phi, &model.module_hom(a)?, &model.module_hom(b)?)?
            } else {
                check_tag(&source, &tag(model, &source, kind)?, &phi)?
            };
            Ok(emit(&report, &source, &source, json))
        }
    }
}
