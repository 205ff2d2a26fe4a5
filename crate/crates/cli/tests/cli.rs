use std::path::PathBuf;
use std::process::Command;

fn lcsa(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "lcsa", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_conformal-forge")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_reports_pass() {
    let (code, out, _) = cli(&["check", &lcsa("ns.lcsa"), "--algebra", "NS"]);
    assert_eq!(code, 0);
    assert_eq!(out, "skew-symmetry + jacobi: PASS\n");
}

#[test]
fn ll_mutation_residual() {
    let (code, out, _) = cli(&["check", &lcsa("ns_mutated_ll.lcsa"), "--algebra", "NS"]);
    assert_eq!(code, 1);
    assert!(out.contains("skew (L, L): residual (-∂)L\n"), "{out}");
}

#[test]
fn gg_mutation_fails_jacobi() {
    let (code, out, _) = cli(&["check", &lcsa("ns_mutated_gg.lcsa"), "--algebra", "NS"]);
    assert_eq!(code, 1);
    assert!(!out.contains("skew ("), "{out}");
    assert!(out.contains("jacobi (L, G, G)"), "{out}");
}

#[test]
fn print_is_a_normal_form() {
    let (code, out, _) = cli(&["print", &lcsa("ns.lcsa")]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("again.lcsa");
    std::fs::write(&path, &out).unwrap();
    let (code, again, _) = cli(&["print", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(again, out);
    assert!(out.contains("bracket [L, G] = (d + 3/2*l) G;"), "{out}");
}

#[test]
fn solve_prints_text_and_json() {
    let (code, out, _) = cli(&["solve", &lcsa("ns.lcsa"), "--algebra", "NS", "--space", "cder", "--deg", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("cder space of NS (even part, degree ≤ 1): dimension 1\n"), "{out}");
    let (code, out, _) = cli(&["solve", &lcsa("ns.lcsa"), "--algebra", "NS", "--space", "cder", "--deg", "1", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["predicate"], "cder");
    assert_eq!(v["maps"].as_array().unwrap().len(), 1);
}

#[test]
fn compare_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    let ns = lcsa("ns.lcsa");
    let solve = |space: &str, deg: &str, out: &PathBuf| {
        let (code, _, err) = cli(&["solve", &ns, "--algebra", "NS", "--space", space, "--deg", deg, "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
    };
    solve("cder", "2", &a);
    solve("ctder", "2", &b);
    solve("tc", "2", &c);
    let (code, out, _) = cli(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "equal: true (dimensions 2 and 2)\n"));
    let (code, _, _) = cli(&["compare", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(code, 1);
    let d = dir.path().join("d.json");
    solve("cder", "1", &d);
    let (code, _, err) = cli(&["compare", a.to_str().unwrap(), d.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: "), "{err}");
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.lcsa");
    std::fs::write(&path, "algebra A {\n    generator L even;\n    bracket [L, L] = (d + 2*q) L;\n}\n").unwrap();
    let (code, _, err) = cli(&["check", path.to_str().unwrap(), "--algebra", "A"]);
    assert_eq!(code, 2);
    assert!(err.contains("3:"), "{err}");
}

#[test]
fn unknown_names_are_usage_errors() {
    let (code, _, err) = cli(&["check", &lcsa("ns.lcsa"), "--algebra", "Nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("Nope"), "{err}");
    let (code, _, _) = cli(&["solve", &lcsa("ns.lcsa"), "--algebra", "NS", "--space", "bogus"]);
    assert_eq!(code, 2);
}

#[test]
fn map_checks() {
    let ns = lcsa("ns.lcsa");
    let run = |map: &str, kind: &str| cli(&["checkmap", &ns, "--map", map, "--kind", kind]).0;
    assert_eq!(run("adL", "cder"), 0);
    assert_eq!(run("adG", "cder"), 0);
    assert_eq!(run("adG", "ctder"), 0);
    assert_eq!(run("id", "cder"), 1);
    assert_eq!(run("id", "tc"), 1);
    assert_eq!(run("sign", "automorphism"), 0);
    assert_eq!(run("stretch", "automorphism"), 1);
    assert_eq!(run("sign", "hom"), 0);
    let (code, out, _) = cli(&["checkmap", &ns, "--map", "id", "--kind", "cder"]);
    assert_eq!(code, 1);
    assert!(out.contains("(L, L): residual (-∂ - 2λ - x)L"), "{out}");
}

#[test]
fn decomposition_json() {
    let (code, out, _) = cli(&["checkmap", &lcsa("ns_pair.lcsa"), "--map", "f", "--kind", "decompose", "--delta", "delta", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["certified"], true);
    assert_eq!(v["f_plus"], serde_json::json!(["L#1", "G#1"]));
    assert_eq!(v["f_minus"], serde_json::json!(["-L#2", "-G#2"]));
}

#[test]
fn center_and_selftest() {
    let (code, out, _) = cli(&["center", &lcsa("builtins.lcsa"), "--algebra", "NSc", "--deg", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("center of NSc up to ∂-degree 1: dimension 6\n"), "{out}");
    let (code, _, _) = cli(&["selftest", &lcsa("example22.lcsa"), "--algebra", "E"]);
    assert_eq!(code, 0);
}
