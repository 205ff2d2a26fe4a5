//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use conformal_forge::basis_file::BasisFile;
use conformal_forge::derivations::{check_abcd, check_gctder, check_tc, check_tqc, AbcdParams, MapSpace};
use conformal_forge::maps::gc_bracket;
use conformal_forge::{ConformalMap, Indet};
use tempfile::TempDir;

fn lcsa(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "lcsa", name].iter().collect()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_conformal-forge")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn ok(args: &[&str]) -> Run {
    let r = cli(args);
    assert_eq!(r.code, 0, "{args:?}\n{}{}", r.stdout, r.stderr);
    r
}

struct Ctx {
    dir: TempDir,
}

impl Ctx {
    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_str().unwrap().to_string()
    }

    /// Runs `solve` and returns the basis file path.
    fn solve(&self, file: &str, alg: &str, space: &str, parity: &str, deg: u16) -> String {
        let out = self.path(&format!("{alg}-{}-{parity}-{deg}.json", space.replace([':', ',', '/'], "_")));
        let file = lcsa(file);
        ok(&[
            "solve", file.to_str().unwrap(), "--algebra", alg, "--space", space, "--parity", parity,
            "--deg", &deg.to_string(), "--out", &out,
        ]);
        out
    }

    fn inner(&self, file: &str, alg: &str, parity: &str, deg: u16) -> String {
        let out = self.path(&format!("{alg}-inner-{parity}-{deg}.json"));
        let file = lcsa(file);
        ok(&["inner", file.to_str().unwrap(), "--algebra", alg, "--parity", parity, "--deg", &deg.to_string(), "--out", &out]);
        out
    }

    fn intersect(&self, a: &str, b: &str) -> String {
        let out = self.path(&format!("meet-{}", Path::new(a).file_name().unwrap().to_str().unwrap()));
        ok(&["intersect", a, b, "--out", &out]);
        out
    }
}

fn equal(a: &str, b: &str) -> Result<String, String> {
    let r = cli(&["compare", a, b]);
    match r.code {
        0 => Ok(r.stdout.trim().to_string()),
        1 => Err(r.stdout.trim().to_string()),
        _ => Err(r.stderr.trim().to_string()),
    }
}

fn space(path: &str) -> MapSpace {
    BasisFile::read(Path::new(path)).unwrap().to_space().unwrap()
}

fn bracket(phi: &ConformalMap, psi: &ConformalMap) -> ConformalMap {
    gc_bracket(phi, psi, Indet::X, Indet::Y).unwrap()
}

fn ns() -> conformal_forge::Algebra {
    (*conformal_forge::lang::parse(&std::fs::read_to_string(lcsa("ns.lcsa")).unwrap()).unwrap().algebra("NS").unwrap()).clone()
}

type Outcome = Result<String, String>;

/// Criteria whose literal statement cannot hold. The suite still evaluates
/// them as stated and prints FAIL; any other failure aborts the run.
///
/// Criterion 2 asks for skew residual `(∂+λ)L` after setting `[L λ L] = (∂+3λ)L`,
/// but `(∂+3λ) + (∂+3(-λ-∂)) = -∂`. It also asks for a skew failure after
/// setting `[G λ G] = 2∂L`, but an odd-odd bracket independent of λ is always
/// skew-symmetric; that mutation breaks the Jacobi identity instead.
const KNOWN_FAILURES: &[usize] = &[2];

fn c1(_: &Ctx) -> Outcome {
    let file = lcsa("builtins.lcsa");
    let mut names = Vec::new();
    for alg in ["NS", "E22", "Vir", "Ab3", "CurAb", "CurAff", "CurSl2", "CurGl2", "CurOsp"] {
        let r = cli(&["check", file.to_str().unwrap(), "--algebra", alg]);
        if r.code != 0 {
            return Err(format!("{alg}: {}", r.stdout));
        }
        names.push(alg);
    }
    let e = lcsa("example22.lcsa");
    ok(&["check", e.to_str().unwrap(), "--algebra", "E"]);
    Ok(format!("exact zero residuals for {} and the written Example22", names.join(", ")))
}

fn c2(_: &Ctx) -> Outcome {
    let ll = lcsa("ns_mutated_ll.lcsa");
    let gg = lcsa("ns_mutated_gg.lcsa");
    let r_ll = cli(&["check", ll.to_str().unwrap(), "--algebra", "NS", "--json"]);
    let r_gg = cli(&["check", gg.to_str().unwrap(), "--algebra", "NS", "--json"]);
    let v_ll: serde_json::Value = serde_json::from_str(&r_ll.stdout).unwrap();
    let v_gg: serde_json::Value = serde_json::from_str(&r_gg.stdout).unwrap();
    let skew_of = |v: &serde_json::Value| -> Vec<(String, String)> {
        v["failures"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|f| f["identity"] == "skew")
            .map(|f| {
                let tuple: Vec<&str> = f["tuple"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect();
                (tuple.join(","), f["residual"].as_str().unwrap().to_string())
            })
            .collect()
    };
    let ll_skew = skew_of(&v_ll);
    let gg_skew = skew_of(&v_gg);
    let detail = format!(
        "exit codes {} and {}; [L,L] mutation skew residuals {:?}; [G,G] mutation skew residuals {:?}",
        r_ll.code, r_gg.code, ll_skew, gg_skew
    );
    let expected_ll = vec![("L,L".to_string(), "(d + l) L".to_string())];
    if r_ll.code == 1 && r_gg.code == 1 && ll_skew == expected_ll && !gg_skew.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; expected skew residual (∂ + λ)L on (L, L) and a skew failure for [G,G]"))
    }
}

fn c3(ctx: &Ctx) -> Outcome {
    let mut lines = Vec::new();
    for p in ["even", "odd"] {
        let cder = ctx.solve("ns.lcsa", "NS", "cder", p, 2);
        let inner = ctx.inner("ns.lcsa", "NS", p, 2);
        lines.push(format!("{p}: {}", equal(&cder, &inner)?));
    }
    Ok(lines.join("; "))
}

fn c4(ctx: &Ctx) -> Outcome {
    let mut lines = Vec::new();
    for deg in [2, 3] {
        for p in ["even", "odd"] {
            let w = ctx.solve("ns.lcsa", "NS", "abcd:1,1,1,1", p, deg);
            let cder = ctx.solve("ns.lcsa", "NS", "cder", p, deg);
            lines.push(format!("{p} deg {deg}: {}", equal(&w, &cder)?));
        }
    }
    Ok(lines.join("; "))
}

fn c5(ctx: &Ctx) -> Outcome {
    let ct = ctx.solve("ns.lcsa", "NS", "ctder", "even", 2);
    let inner = ctx.inner("ns.lcsa", "NS", "even", 2);
    let out = ctx.path("centralizer.json");
    ok(&["centralizer", &ct, &inner, "--out", &out]);
    let dim = space(&out).dim();
    if dim == 0 {
        Ok(format!("centralizer of CInn (dim {}) in CTDer (dim {}) has dimension 0", space(&inner).dim(), space(&ct).dim()))
    } else {
        Err(format!("centralizer has dimension {dim}"))
    }
}

fn c6(ctx: &Ctx) -> Outcome {
    let mut lines = Vec::new();
    for (file, alg) in [("ns.lcsa", "NS"), ("example22.lcsa", "E")] {
        for [a, b, c, d] in [[1, 2, 3, 4], [0, 1, 1, 0]] {
            for p in ["even", "odd"] {
                let w = |v: [i64; 4]| format!("abcd:{},{},{},{}", v[0], v[1], v[2], v[3]);
                let base = ctx.solve(file, alg, &w([a, b, c, d]), p, 2);
                let sym = ctx.solve(file, alg, &w([2 * a, b + c, b + c, 2 * d]), p, 2);
                let anti = ctx.solve(file, alg, &w([0, b - c, c - b, 0]), p, 2);
                let meet = ctx.intersect(&sym, &anti);
                equal(&base, &meet)?;
                equal(&base, &ctx.solve(file, alg, &w([7 * a, 7 * b, 7 * c, 7 * d]), p, 2))?;
                equal(&base, &ctx.solve(file, alg, &w([a, c, b, d]), p, 2))?;
                lines.push(format!("{alg} {p} ({a},{b},{c},{d}) dim {}", space(&base).dim()));
            }
        }
    }
    Ok(format!("decomposition, scaling by 7 and B/C swap agree: {}", lines.join(", ")))
}

fn c7(ctx: &Ctx) -> Outcome {
    let mut lines = Vec::new();
    for p in ["even", "odd"] {
        let a = ctx.solve("ns.lcsa", "NS", "abcd:1,2,3,4", p, 2);
        let b = ctx.solve("ns.lcsa", "NS", "abcd:1/5,0,1,4/5", p, 2);
        lines.push(format!("{p}: {}", equal(&a, &b)?));
    }
    Ok(lines.join("; "))
}

fn c8(ctx: &Ctx) -> Outcome {
    let alg = ns();
    let mut lines = Vec::new();
    for p in ["even", "odd"] {
        let full = space(&ctx.solve("ns.lcsa", "NS", "abcd:0,0,0,0", p, 2));
        if full.dim() != full.ansatz().len() {
            return Err(format!("{p}: Φ(0,0,0,0) has dimension {} of {}", full.dim(), full.ansatz().len()));
        }
        let tc = space(&ctx.solve("ns.lcsa", "NS", "abcd:1,1,0,0", p, 2));
        let tqc = space(&ctx.solve("ns.lcsa", "NS", "abcd:0,1,0,-1", p, 2));
        for phi in tc.maps() {
            if !check_tc(&alg, &phi).unwrap().passed() {
                return Err(format!("{p}: a Φ(1,1,0,0) member fails TC"));
            }
        }
        for phi in tqc.maps() {
            if !check_tqc(&alg, &phi).unwrap().passed() {
                return Err(format!("{p}: a Φ(0,1,0,-1) member fails TQC"));
            }
        }
        lines.push(format!("{p}: full {} = ansatz size, Φ(1,1,0,0) dim {}, Φ(0,1,0,-1) dim {}", full.dim(), tc.dim(), tqc.dim()));
    }
    Ok(lines.join("; "))
}

fn c9(ctx: &Ctx) -> Outcome {
    let alg = ns();
    let basis = space(&ctx.solve("ns.lcsa", "NS", "ctder", "even", 2)).maps();
    let ones = AbcdParams::ints(1, 1, 1, 1);
    for phi in &basis {
        for psi in &basis {
            let b = bracket(phi, psi);
            if !check_abcd(&alg, &b, &ones).unwrap().passed() {
                return Err(format!("bracket {} fails", b.display(alg.sig())));
            }
        }
    }
    Ok(format!("{} brackets of a {}-element basis pass Φ(1,1,1,1) over ℚ[x]", basis.len() * basis.len(), basis.len()))
}

fn c10(ctx: &Ctx) -> Outcome {
    let tc = space(&ctx.solve("ns.lcsa", "NS", "tc", "even", 2)).maps();
    let tqc = space(&ctx.solve("ns.lcsa", "NS", "tqc", "even", 2)).maps();
    for phi in &tc {
        for psi in tc.iter().chain(tqc.iter()) {
            if !bracket(phi, psi).is_zero() {
                return Err("nonzero bracket".into());
            }
        }
    }
    Ok(format!("TC dim {}, TQC dim {}; all brackets vanish", tc.len(), tqc.len()))
}

fn c11(ctx: &Ctx) -> Outcome {
    let alg = ns();
    let ct = space(&ctx.solve("ns.lcsa", "NS", "ctder", "even", 2)).maps();
    let tc = space(&ctx.solve("ns.lcsa", "NS", "tc", "even", 2));
    let mut chis = tc.maps();
    chis.push(ConformalMap::zero(alg.sig(), conformal_forge::Parity::Even));
    let mut n = 0;
    for tau in &ct {
        for chi in &chis {
            let phi = tau.add(chi);
            if !check_gctder(&alg, &phi, tau).unwrap().passed() {
                return Err("check_gctder fails".into());
            }
            if !check_tc(&alg, &phi.sub(tau)).unwrap().passed() {
                return Err("φ - τ fails TC".into());
            }
            n += 1;
        }
    }
    Ok(format!("{n} sums τ + χ checked (TC basis has dimension {})", tc.dim()))
}

fn c12(_: &Ctx) -> Outcome {
    let pair = lcsa("ns_pair.lcsa");
    let pair = pair.to_str().unwrap();
    let code = |kind: &str, extra: &[&str]| {
        let mut args = vec!["checkmap", pair, "--map", "f", "--kind", kind];
        args.extend_from_slice(extra);
        cli(&args).code
    };
    let results = [
        ("f triplehom", code("triplehom", &[]), 0),
        ("f hom", code("hom", &[]), 1),
        ("f antihom", code("antihom", &[]), 1),
        ("decompose", code("decompose", &["--delta", "delta"]), 0),
    ];
    let ns_file = lcsa("ns.lcsa");
    let neg = |kind: &str| cli(&["checkmap", ns_file.to_str().unwrap(), "--map", "negid", "--kind", kind]).code;
    let all = results
        .into_iter()
        .chain([("-id antihom", neg("antihom"), 0), ("-id triplehom", neg("triplehom"), 0)]);
    let mut lines = Vec::new();
    for (what, got, want) in all {
        if got != want {
            return Err(format!("{what}: exit {got}, expected {want}"));
        }
        lines.push(format!("{what} exit {got}"));
    }
    Ok(lines.join(", "))
}

fn c13(_: &Ctx) -> Outcome {
    let file = lcsa("builtins.lcsa");
    for alg in ["NS", "E22", "CurOsp"] {
        let r = cli(&["selftest", file.to_str().unwrap(), "--algebra", alg, "--deg", "1"]);
        if r.code != 0 {
            return Err(format!("{alg}: {}", r.stdout));
        }
    }
    Ok("the three slot scaling laws hold with symbolic A, B, C, D on NS, E22 and CurOsp".into())
}

fn c14(ctx: &Ctx) -> Outcome {
    let file = lcsa("ns.lcsa");
    let mut compared = 0;
    for space in ["cder", "ctder", "gctder", "abcd:1,2,3,4"] {
        let mut outputs = Vec::new();
        for k in 0..2 {
            let out = ctx.path(&format!("det-{k}.json"));
            ok(&["solve", file.to_str().unwrap(), "--algebra", "NS", "--space", space, "--parity", "odd", "--deg", "3", "--out", &out]);
            outputs.push(std::fs::read(&out).unwrap());
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{space}: basis files differ"));
        }
        compared += 1;
    }
    Ok(format!("{compared} solves repeated with byte-identical basis files"))
}

fn main() {
    let ctx = Ctx { dir: tempfile::tempdir().unwrap() };
    let criteria: [(&str, fn(&Ctx) -> Outcome); 14] = [
        ("axiom suite on the built-in algebras", c1),
        ("mutation detection", c2),
        ("derivations of NS are inner", c3),
        ("Φ(1,1,1,1) equals CDer on NS", c4),
        ("triple derivations centralizing inner maps vanish", c5),
        ("weighted space decomposition, scaling and symmetry", c6),
        ("Φ(1,2,3,4) = Φ(1/5,0,1,4/5) on NS", c7),
        ("special weights give gc, TC and TQC", c8),
        ("gc-bracket closure of triple derivations", c9),
        ("triple centroids commute", c10),
        ("generalized triple derivations split", c11),
        ("triple homomorphisms into NS ⊕ NS", c12),
        ("generator sufficiency self-test", c13),
        ("deterministic basis files", c14),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&ctx)))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail}"),
            Err(detail) => {
                println!("criterion {n:>2} FAIL  {title}: {detail}");
                failed.push(n);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed.len(), criteria.len(), start.elapsed());
    let unexpected: Vec<usize> = failed.iter().copied().filter(|n| !KNOWN_FAILURES.contains(n)).collect();
    for n in failed.iter().filter(|n| KNOWN_FAILURES.contains(n)) {
        println!("criterion {n:>2} is a known failure: its stated residuals disagree with the exact computation");
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
    let fixed: Vec<usize> = KNOWN_FAILURES.iter().copied().filter(|n| !failed.contains(n)).collect();
    if !fixed.is_empty() {
        println!("known failures now passing: {fixed:?}");
        std::process::exit(1);
    }
}
