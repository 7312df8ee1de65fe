use std::path::PathBuf;
use std::process::{Command, Output};

use kmcrystal::verify::{mutate, Mutation};
use kmcrystal::CrystalGraph;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_kmcrystal"));
    c.env_remove("KMCRYSTAL_NODE_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn generate_example_graph_and_round_trip() {
    let path = tmp("a2_y1.json");
    let dot = tmp("a2_y1.dot");
    let o = run(&[
        "generate", "--cartan", "A2", "--rule", "original", "--seed-monomial", "Y1(0)",
        "--out", path.to_str().unwrap(), "--dot", dot.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("nodes: 3"), "{stderr}");
    assert!(stderr.contains("truncated: false"));
    let text = std::fs::read_to_string(&path).unwrap();
    let g = CrystalGraph::from_json(&text).unwrap();
    assert_eq!(g.len(), 3);
    assert_eq!(g.listing(), include_str!("../../core/tests/golden/a2_original_y1.listing"));
    assert_eq!(g.canonical_form(0).unwrap(), include_str!("../../core/tests/golden/a2_original_y1.cert"));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn generate_is_deterministic() {
    let args = ["generate", "--cartan", "B2", "--rule", "variant", "--hw", "1,1"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(CrystalGraph::from_json(&String::from_utf8(a.stdout).unwrap()).unwrap().len(), 16);
}

#[test]
fn generate_variant_adjoint() {
    let o = run(&["generate", "--cartan", "A2", "--rule", "variant", "--c", "1,2:0;2,1:1", "--hw", "1,1"]);
    assert_eq!(code(&o), 0);
    let g = CrystalGraph::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(g.len(), 8);
}

#[test]
fn generate_affine_is_truncated() {
    let o = run(&[
        "generate", "--cartan", "A1~", "--rule", "variant", "--c", "0,1:0;1,0:1", "--hw", "1,0", "--depth", "4",
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncated: true"));
}

#[test]
fn node_budget_from_environment() {
    let o = bin()
        .args(["generate", "--cartan", "A2", "--hw", "1,1"])
        .env("KMCRYSTAL_NODE_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("node budget exceeded"));
    let g = CrystalGraph::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(g.len(), 3);
}

#[test]
fn check_example_graph_passes() {
    let path = tmp("check_a2_y1.json");
    let o = run(&["generate", "--cartan", "A2", "--seed-monomial", "Y1(0)", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = run(&["check", "--graph", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "PASS");
}

#[test]
fn check_inverse_axiom_counterexample() {
    let o = run(&["check", "--cartan", "A1", "--seed-monomial", "Y1(1) Y1(2)^-1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdict"], "EXPECTED_FAIL");
    let axioms = &v["children"][0];
    assert_eq!(axioms["check"], "crystal_axioms");
    assert_eq!(axioms["witnesses"][0]["kind"], "inverse_f");
    assert_eq!(
        axioms["witnesses"][0]["labels"],
        serde_json::json!(["Y_1(1) Y_1(2)^-1", "Y_1(2)^-1 Y_1(3)^-1", "Y_1(0) Y_1(3)^-1"])
    );
}

#[test]
fn check_corrupted_graph_fails() {
    let o = run(&["generate", "--cartan", "A2", "--rule", "variant", "--hw", "1,1"]);
    let g = CrystalGraph::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    let (bad, _) = mutate(&g, Mutation::DeleteEdge).unwrap();
    let path = tmp("corrupted.json");
    std::fs::write(&path, bad.to_json()).unwrap();
    let o = run(&["check", "--graph", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"], "FAIL");
}

#[test]
fn check_affine_is_inconclusive() {
    let o = run(&["check", "--cartan", "A1~", "--rule", "variant", "--hw", "1,0", "--depth", "4"]);
    assert_eq!(code(&o), 2);
    let v = json(&o);
    assert_eq!(v["verdict"], "INCONCLUSIVE");
    assert_eq!(v["children"][0]["verdict"], "PASS");
}

#[test]
fn scan_writes_csv() {
    let out = tmp("scan.csv");
    let o = run(&["scan-conjecture", "--types", "A1,B2", "--max-pairing", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut rdr = csv::Reader::from_path(&out).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        ["type", "rule", "c", "lambda", "size", "oracle_size", "verdict", "structural", "good_violation", "cert_sha256"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2 + 4);
    assert!(rows.iter().all(|r| &r[6] == "PASS" && r[4] == r[5]));
}

#[test]
fn scan_variant_c_independence() {
    let o = run(&["scan-conjecture", "--types", "A2", "--rule", "variant", "--c-range", "-2,3", "--max-pairing", "1"]);
    assert_eq!(code(&o), 0);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let lam1: Vec<&str> = rows.iter().filter(|r| &r[3] == "(1, 0)").map(|r| r.get(9).unwrap()).collect();
    assert_eq!(lam1.len(), 6);
    assert!(lam1.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn lattice_examples() {
    let o = run(&["lattice", "--cartan", "A2~", "--preset", "cyclic", "--depth", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["notes"][1].as_str().unwrap().starts_with("pair condition holds"));
    let o = run(&["lattice", "--cartan", "A1~", "--L", r#"{"L": [[-1, 1], [1, -1]]}"#]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["notes"][1].as_str().unwrap().starts_with("pair condition fails"));
    let o = run(&["lattice", "--cartan", "A2", "--preset", "neg-gcm"]);
    assert!([0, 1].contains(&code(&o)));
    let o = run(&["lattice", "--cartan", "A2", "--L", "[[-1,0],[0,-1]]"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn random_tests_are_seeded() {
    for cmd in ["dual-psi-test", "shift-test", "semi-normal-test", "phi-test"] {
        let args = [cmd, "--cartan", "G2", "--count", "100", "--seed", "7"];
        let (a, b) = (run(&args), run(&args));
        assert_eq!(code(&a), 0, "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert_eq!(json(&a)["seed"], 7);
    }
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(code(&run(&["generate", "--cartan", "Q7", "--hw", "1"])), 3);
    assert_eq!(code(&run(&["generate", "--cartan", "A2", "--hw", "1,x"])), 3);
    assert_eq!(code(&run(&["generate", "--cartan", "A2"])), 3);
    assert_eq!(code(&run(&["generate", "--cartan", "A1~", "--hw", "1,0"])), 3);
    assert_eq!(code(&run(&["lattice", "--cartan", "A2", "--L", "[[0,0],[0,-1]]"])), 3);
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
}
