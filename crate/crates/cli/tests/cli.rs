use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

const M11: &str = r#"{"blocks":[{"kind":"matrix","k":1,"m":1}]}"#;
const M10: &str = r#"{"blocks":[{"kind":"matrix","k":1,"m":0}]}"#;
const QC: &str = r#"{"blocks":[{"kind":"group","k":1}]}"#;
const NILPOTENT: &str = r#"{"blocks":[],"radical":{"generators":[{"label":"r","parity":"even","from":1,"to":1}]}}"#;
const EVEN_COMMUTATOR: &str = "1 * x(1,0) x(2,0)\n-1 * x(2,0) x(1,0)\n";
const ODD_COMMUTATOR: &str = "1 * x(1,1) x(2,1)\n-1 * x(2,1) x(1,1)\n";

struct Fixtures {
    dir: PathBuf,
}

impl Fixtures {
    fn new(name: &str) -> Fixtures {
        let dir = std::env::temp_dir().join(format!("superpi-cli-{name}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Fixtures { dir }
    }

    fn file(&self, name: &str, content: &str) -> String {
        let p = self.dir.join(name);
        fs::write(&p, content).unwrap();
        p.display().to_string()
    }
}

impl Drop for Fixtures {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.dir);
    }
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superpi")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn even_commutator_is_an_identity_of_m11() {
    let fx = Fixtures::new("even");
    let (code, report, _) = run(&["identity", "check", &fx.file("a.json", M11), &fx.file("f.txt", EVEN_COMMUTATOR)]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["identity"], true);
    assert_eq!(report["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(report["inputs"][0]["content"], M11);
    assert_eq!(report["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn odd_commutator_fails_at_the_odd_units() {
    let fx = Fixtures::new("odd");
    let (code, report, _) = run(&["identity", "check", &fx.file("a.json", M11), &fx.file("f.txt", ODD_COMMUTATOR)]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["identity"], false);
    let cex = &report["verdict"]["counterexample"];
    assert_eq!(cex["assignment"][0][1], "E[1,1,2]");
    assert_eq!(cex["assignment"][1][1], "E[1,2,1]");
    assert_eq!(cex["value"]["E[1,1,1]"], "1");
    assert_eq!(cex["value"]["E[1,2,2]"], "-1");
}

#[test]
fn squares_are_checked_through_their_linearizations() {
    let fx = Fixtures::new("square");
    let (code, report, _) = run(&["identity", "check", &fx.file("a.json", M11), &fx.file("f.txt", "1 * x(1,1) x(1,1)\n")]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["identity"], false);
    assert_eq!(report["verdict"]["linearizations"], 1);
}

#[test]
fn malformed_input_exits_with_two() {
    let fx = Fixtures::new("malformed");
    let f = fx.file("f.txt", EVEN_COMMUTATOR);
    let (code, _, err) = run(&["identity", "check", &fx.file("a.json", r#"{"blocks":"#), &f]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");
    let (code, _, err) = run(&["identity", "check", &fx.file("b.json", M11), &fx.file("g.txt", "1 * x(1,0)\n2 * y\n")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let (code, _, _) = run(&["identity", "check", "/nonexistent/a.json", &f]);
    assert_eq!(code, 2);
}

#[test]
fn caps_and_usage_errors_have_their_own_codes() {
    let fx = Fixtures::new("codes");
    let a = fx.file("a.json", M11);
    let (code, _, _) = run(&["identity", "check", &a, &fx.file("f.txt", EVEN_COMMUTATOR), "--max-enum", "1"]);
    assert_eq!(code, 3);
    let (code, _, err) = run(&["params", "bound", &a, "--trials", "2"]);
    assert_eq!(code, 4);
    assert!(err.contains("--seed"));
    let (code, _, _) = run(&["no-such-verb"]);
    assert_eq!(code, 4);
}

#[test]
fn witnesses() {
    let fx = Fixtures::new("witness");
    let (code, report, _) = run(&["witness", "simple", &fx.file("a.json", M11), "--s-hat", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["expected"]["E[1,1,1]"], "1");
    assert!(report["verdict"]["witness"]["polynomial"].as_str().unwrap().contains("profile 2 2"));
    let (code, _, err) = run(&["witness", "reduced", &fx.file("n.json", NILPOTENT), "--s-hat", "2"]);
    assert_eq!(code, 5);
    assert!(err.contains("refused"), "{err}");
    let (code, report, _) = run(&["witness", "reduced", &fx.file("q.json", QC), "--s-hat", "2"]);
    assert_eq!(code, 0);
    assert!(report["verdict"]["witness"]["polynomial"].as_str().unwrap().contains("profile 1 1"));
}

#[test]
fn boundary_polynomial_for_the_triangular_algebra() {
    let fx = Fixtures::new("boundary");
    let alg = r#"{"blocks":[{"kind":"matrix","k":1,"m":0}],"radical":{"generators":[{"label":"r","parity":"odd","from":1,"to":2}]}}"#;
    let (code, report, _) =
        run(&["witness", "boundary", &fx.file("a.json", alg), &fx.file("h.txt", "1 * x(1,1)\n"), "--assign", "x(1,1)=r", "--mu", "1"]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["value"]["r"], "1");
    assert_eq!(report["verdict"]["trivial"], false);
}

#[test]
fn parameters_of_m11() {
    let fx = Fixtures::new("params");
    let a = fx.file("a.json", M11);
    let (code, report, _) = run(&["params", "certify", &a]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["par"], serde_json::json!([[2, 2], 1]));
    let (code, report, _) = run(&["params", "bound", &a, "--trials", "3", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(report["seed"], 7);
    assert_eq!(report["verdict"]["holds"], true);
}

#[test]
fn tideal_membership_comes_with_a_certificate() {
    let fx = Fixtures::new("tideal");
    let gens = fx.file("s.txt", EVEN_COMMUTATOR);
    let f = fx.file("f.txt", "1 * x(1,0) x(3,0) x(2,0)\n-1 * x(2,0) x(1,0) x(3,0)\n");
    let (code, report, _) = run(&["tideal", "member", &gens, &f]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["member"], true);
    assert!(!report["verdict"]["certificate"].as_array().unwrap().is_empty());
    let (code, report, _) = run(&["tideal", "member", &gens, &fx.file("g.txt", "1 * x(1,0) x(2,0)\n")]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["member"], false);
    let (code, report, _) = run(&["tideal", "span", &gens, "--slot", "x(1,0) x(2,0) x(3,0)"]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["rank"], 5);
}

#[test]
fn rqs_over_one_odd_letter_has_dimension_five() {
    let fx = Fixtures::new("rqs");
    let out = fx.dir.join("r.json");
    let b = fx.file("b.json", M10);
    let (code, report, _) = run(&["algebra", "build-rqs", &b, "--s", "2", "--odd", "1", "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["dim"], 5);
    let (code, report, _) = run(&["algebra", "validate", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["dim"], 5);
    assert_eq!(report["verdict"]["radical_dim"], 4);
    let (_, report, _) = run(&["algebra", "build-rqs", &b, "--s", "2", "--q", "1"]);
    assert_eq!(report["verdict"]["dim"], 9);
}

#[test]
fn envelopes() {
    let fx = Fixtures::new("envelope");
    let q = fx.file("q.json", QC);
    let triple = "1 * x(1,0) x(2,0) x(3,0)\n-1 * x(2,0) x(1,0) x(3,0)\n-1 * x(3,0) x(1,0) x(2,0)\n1 * x(3,0) x(2,0) x(1,0)\n";
    let (code, report, _) = run(&["envelope", "check", &q, &fx.file("t.txt", triple)]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["identity"], true);
    let (_, report, _) = run(&["envelope", "check", &q, &fx.file("c.txt", EVEN_COMMUTATOR)]);
    assert_eq!(report["verdict"]["identity"], false);
    let (code, report, _) = run(&["envelope", "twist", &fx.file("z.txt", ODD_COMMUTATOR)]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"]["polynomial"], "1 * x(1,1) x(2,1)\n1 * x(2,1) x(1,1)\n");
}

#[test]
fn reports_are_deterministic_and_text_is_available() {
    let fx = Fixtures::new("determinism");
    let a = fx.file("a.json", M11);
    let first = run(&["params", "bound", &a, "--trials", "3", "--seed", "11"]).1;
    let second = run(&["params", "bound", &a, "--trials", "3", "--seed", "11"]).1;
    assert_eq!(first, second);
    let out = Command::new(env!("CARGO_BIN_EXE_superpi"))
        .args(["identity", "check", &a, &fx.file("f.txt", EVEN_COMMUTATOR), "--format", "text", "--timing"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("identity: true"));
    assert!(text.contains("timing_ms:"));
}
