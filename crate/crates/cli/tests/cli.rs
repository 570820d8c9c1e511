use std::path::PathBuf;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn c(rel: &str) -> String {
    corpus().join(rel).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foamcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn last_line(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .last()
        .unwrap_or_default()
        .to_string()
}

fn value(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    last_line(&o)
}

#[test]
fn headline_values() {
    assert_eq!(value(&["web", "tait", &c("dodecahedron.json")]), "60");
    assert_eq!(value(&["web", "orbits", &c("dodecahedron.json")]), "10");
    assert_eq!(value(&["jflat", "eval", &c("theta_012.json")]), "1");
    assert_eq!(value(&["jflat", "eval", &c("theta_111.json")]), "0");
    assert_eq!(value(&["web", "reduce", &c("cube.json")]), "24");
    assert_eq!(value(&["planar", "reduce", &c("prism3.json")]), "6");
    assert_eq!(value(&["web", "bridges", &c("dumbbell.json")]), "1");
    assert_eq!(value(&["web", "o2", &c("petersen.json")]), "0");
    assert_eq!(value(&["web", "two-factors", &c("k4.json")]), "3");
    assert_eq!(value(&["foam", "euler", &c("suspension_k4_000.json")]), "4");
    assert_eq!(value(&["foam", "seams", &c("suspension_k4_000.json")]), "1");
}

#[test]
fn pairing_ranks_from_generator_directories() {
    let u = c("generators/unknot");
    let t = c("generators/theta");
    assert_eq!(value(&["jflat", "rank", "--gens", &u, "--cogens", &u]), "3");
    assert_eq!(value(&["jflat", "rank", "--gens", &t, "--cogens", &t]), "6");
}

#[test]
fn stuck_reduction_is_not_a_failure() {
    let o = run(&["planar", "conjecture", &c("dodecahedron.json")]);
    assert!(o.status.success());
    assert_eq!(last_line(&o), "n/a");
    let o = run(&["web", "reduce", &c("dodecahedron.json")]);
    assert_eq!(last_line(&o), "stuck");
}

#[test]
fn planar_commands_need_a_rotation() {
    let o = run(&["planar", "faces", &c("petersen.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rotation"));
}

#[test]
fn json_mode_carries_schema_and_hash() {
    let path = c("theta.json");
    let o = run(&["--json", "web", "tait", &path]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["result"]["tait_count"], "6");
    let want = format!("{:x}", Sha256::digest(std::fs::read(&path).unwrap()));
    assert_eq!(doc["inputs"][0]["sha256"], want);
}

#[test]
fn trace_and_all_choices() {
    let o = run(&[
        "jflat",
        "eval",
        "--trace",
        "--all-choices",
        &c("suspension_k4_012.json"),
    ]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.starts_with("cancel "), "{text}");
    assert!(text.contains("values {1}"));
    assert_eq!(last_line(&o), "1");
    let o = run(&["--json", "jflat", "eval", "--trace", &c("theta_012.json")]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["result"]["trace"]["steps"][0]["rule"], "cut_circles");
}

#[test]
fn parse_errors_name_the_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"vertices\": [\"a\",\n}").unwrap();
    let o = run(&["web", "tait", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.json:3:"), "{err}");
    let o = run(&["web", "tait", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_foam_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus().join("theta_000.json")).unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, text.replacen("\"f2\"", "\"f1\"", 1)).unwrap();
    let o = run(&["foam", "validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_ne!(last_line(&o), "0");
    assert_eq!(value(&["foam", "validate", &c("suspension_k4_012.json")]), "0");
    assert_eq!(value(&["foam", "validate", &c("generators/theta/half_012.json")]), "0");
}

#[test]
fn glue_then_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("theta.json");
    let o = run(&[
        "foam",
        "glue",
        &c("generators/theta/half_012.json"),
        &c("generators/theta/half_000.json"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(last_line(&o), "3");
    assert_eq!(value(&["jflat", "eval", out.to_str().unwrap()]), "1");
}

#[test]
fn index_values() {
    assert_eq!(value(&["index", "--kappa", "0", "--chi", "4", "--tau", "2"]), "0");
    assert_eq!(value(&["index", "--kappa", "0", "--b1", "1", "--chi", "0"]), "0");
    assert_eq!(value(&["index", "--kappa", "1/8", "--b1", "1", "--chi", "0"]), "1");
    let o = run(&["index", "--kappa", "1/64", "--chi", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cube_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.txt");
    let u = dir.path().join("u.txt");
    std::fs::write(&d, "2 2\n0 1\n").unwrap();
    std::fs::write(&u, "2 2\n0 0\n").unwrap();
    let maps = [format!("0={}", d.display()), format!("1={}", u.display())];
    let args = ["cube", "check", "--n", "1", "--map", &maps[0], "--map", &maps[1]];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("{1}"));
    let ok = ["cube", "homology", "--n", "1", "--map", &maps[0]];
    assert_eq!(value(&ok), "0");
    assert_eq!(value(&["cube", "e1", "--n", "2", "--dims", "1,1"]), "8");
}

#[test]
fn algebra_commands() {
    assert_eq!(value(&["algebra", "reduce", "--kind", "flag", "u1 + u2 + u3"]), "0");
    assert_eq!(value(&["algebra", "reduce", "--kind", "unknot", "u*u^2 + u"]), "u");
    assert_eq!(value(&["algebra", "pair", "--kind", "unknot"]), "3");
    assert_eq!(value(&["algebra", "pair", "--kind", "flag"]), "6");
    assert_eq!(value(&["algebra", "pair", "--kind", "flag", "u2", "u3^2"]), "1");
}

#[test]
fn suites_pass_on_the_corpus_directory() {
    let dir = corpus().display().to_string();
    for s in ["relations", "welldef", "conjecture", "algebra"] {
        let o = Command::new(env!("CARGO_BIN_EXE_foamcalc"))
            .args(["suite", s, "--corpus", &dir])
            .env("FOAMCALC_THREADS", "2")
            .output()
            .unwrap();
        assert!(o.status.success(), "{s}: {}", String::from_utf8_lossy(&o.stdout));
        assert_eq!(last_line(&o), "0");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_foamcalc"))
        .args(["suite", "welldef"])
        .env("FOAMCALC_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bundled_corpus_round_trips() {
    assert_eq!(value(&["corpus", "check", &corpus().display().to_string()]), "0");
    let dir = tempfile::tempdir().unwrap();
    let n = value(&["corpus", "write", dir.path().to_str().unwrap()]);
    assert_eq!(
        n.parse::<usize>().unwrap(),
        std::fs::read_dir(corpus()).unwrap().count() - 1 + 3 + 6
    );
    assert_eq!(value(&["corpus", "check", dir.path().to_str().unwrap()]), "0");
    std::fs::write(dir.path().join("theta.json"), "{\"vertices\":[],\"edges\":[]}").unwrap();
    assert_eq!(
        run(&["corpus", "check", dir.path().to_str().unwrap()]).status.code(),
        Some(1)
    );
}
