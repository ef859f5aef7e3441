use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use exactify_core::model::validate_instance;
use exactify_core::{brute_force_ranged, FamilyOracle, InstanceDoc, Natural, Subset};

fn exactify(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_exactify"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = exactify(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], stdin: &str) -> i32 {
    exactify(args, stdin).status.code().unwrap()
}

fn json_lines(text: &str) -> Vec<serde_json::Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn elements(v: &serde_json::Value) -> Subset {
    Subset::from_elements(v.as_array().unwrap().iter().map(|e| e.as_u64().unwrap() as usize))
}

#[test]
fn gen_shrink_solve_finds_a_true_witness() {
    for seed in 1..=5 {
        let seed = seed.to_string();
        let doc = ok(&["gen", "--kind", "ranged", "--n", "9", "--weight-bits", "30", "--seed", &seed], "");
        let pairs = ok(&["shrink"], &doc);
        let out = exactify(&["solve", "--solver", "brute"], &pairs);
        assert_eq!(out.status.code(), Some(0));
        let lines = json_lines(&String::from_utf8(out.stdout).unwrap());
        let witness = elements(&lines.last().unwrap()["witness"]["elements"]);

        let inst = validate_instance(&InstanceDoc::from_json(&doc).unwrap()).unwrap();
        let truth = brute_force_ranged(&FamilyOracle::AllSubsets { n: inst.n() }, inst.omega(), inst.l(), inst.u()).unwrap();
        assert!(truth.contains(&witness), "seed {seed}: {witness} not in the witness set");
    }
}

#[test]
fn empty_stream_is_no() {
    assert_eq!(code(&["solve"], ""), 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["solve", "--bogus"], ""), 2);
    assert_eq!(code(&["frobnicate"], ""), 2);
    // Randomized commands have no default seed.
    assert_eq!(code(&["compress", "--eps", "0.1"], r#"{"weights":["1"],"target":"1"}"#), 2);
    assert_eq!(code(&["gen", "--kind", "subsetsum", "--n", "4"], ""), 2);
    assert_eq!(code(&["compress", "--eps", "1.5", "--seed", "1"], r#"{"weights":["1"],"target":"1"}"#), 2);
}

#[test]
fn malformed_documents_name_the_field() {
    let out = exactify(&["shrink"], r#"{"kind":"ranged","n":2,"weights":["1","x"],"l":"0","u":"3"}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weights[1]"));
}

#[test]
fn version_flag() {
    let out = ok(&["--version"], "");
    assert!(out.starts_with("exactify "));
}

#[test]
fn guards_exit_3() {
    // DP refuses targets beyond 32 bits.
    let doc = r#"{"kind":"subsetsum","n":2,"weights":["1","8589934592"],"l":"8589934593","u":"8589934593"}"#;
    assert_eq!(code(&["solve", "--solver", "dp"], doc), 3);
    assert_eq!(code(&["solve", "--solver", "mitm"], doc), 0);
    // 51-bit weights on a 3-vertex graph exceed lg N ≤ 2^n.
    let vc = r#"{"kind":"vertexcover","n":3,"weights":["1125899906842625","1125899906842626","1125899906842627"],"l":"0","u":"2251799813685253","edges":[[0,1],[1,2],[0,2]]}"#;
    assert_eq!(code(&["kernelize", "--eps", "0.1", "--seed", "1"], vc), 3);
    assert_eq!(code(&["kernelize", "--eps", "0.1", "--seed", "1", "--allow-long-weights"], vc), 0);
}

#[test]
fn shrink_document_shape() {
    let out = ok(&["shrink", "--trace"], r#"{"kind":"ranged","n":3,"weights":["5","9","14"],"l":"2","u":"20"}"#);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["pairs"].as_array().unwrap().len(), 21);
    assert_eq!(doc["pairs"][0], serde_json::json!({"weights": ["5", "9", "14"], "target": "2"}));
    assert_eq!(doc["levels"][1]["weights"], serde_json::json!(["2", "4", "7"]));
    assert_eq!(doc["trace"][0]["case"], "halve");
    let plain: serde_json::Value =
        serde_json::from_str(&ok(&["shrink"], r#"{"kind":"ranged","n":1,"weights":["4"],"l":"3","u":"100"}"#)).unwrap();
    assert!(plain.get("trace").is_none());
    assert_eq!(plain["pairs"][0]["target"], "3");
}

#[test]
fn reduce_and_maximize_match_brute_force() {
    let knap = r#"{"kind":"knapsack","n":3,"weights":["3","4","5"],"values":["2","3","4"],"l":"8","u":"inf","b":"6"}"#;
    let stream = ok(&["reduce"], knap);
    assert!(json_lines(&stream).iter().all(|d| d["kind"] == "subsetsum" && d["l"] == d["u"]));
    let verdict = json_lines(&ok(&["solve", "--solver", "mitm"], &stream));
    // {0,2}: profit 8, cost 6.
    let w = elements(&verdict.last().unwrap()["witness"]["elements"]);
    assert_eq!(w.len(), 2);
    let best = json_lines(&ok(&["maximize", "--solver", "brute"], knap));
    assert_eq!(best[0]["optimum"], "8");

    let infeasible = knap.replace(r#""l":"8""#, r#""l":"9""#);
    assert_eq!(code(&["solve"], &ok(&["reduce"], &infeasible)), 1);
}

#[test]
fn parallel_solve_is_deterministic() {
    let knap = ok(&["gen", "--kind", "knapsack", "--n", "6", "--weight-bits", "12", "--seed", "4"], "");
    let stream = ok(&["reduce"], &knap);
    let one = ok(&["solve", "--jobs", "1"], &stream);
    for jobs in ["2", "4", "7"] {
        assert_eq!(ok(&["solve", "--jobs", jobs], &stream), one);
    }
}

#[test]
fn compress_example_document() {
    let out = json_lines(&ok(&["compress", "--eps", "0.05", "--seed", "42"], r#"{"weights":["10","25"],"target":"35"}"#));
    let doc = &out[0];
    let p: Natural = doc["prime"].as_str().unwrap().parse().unwrap();
    let bound: Natural = doc["prime_bound"].as_str().unwrap().parse().unwrap();
    assert!(p >= bound && p <= &bound * 2u32);
    assert_eq!(doc["targets"].as_array().unwrap().len(), 3);
    assert_eq!(doc["seed"], 42);
}

#[test]
fn kernel_round_trip_through_solve_and_decide() {
    let dir = tempfile::tempdir().unwrap();
    let file = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (kernel, answers) = (file("kernel.jsonl"), file("answers.json"));
    let doc = ok(&["gen", "--kind", "vertexcover", "--n", "6", "--weight-bits", "20", "--seed", "3"], "");
    ok(&["kernelize", "--eps", "0.1", "--seed", "7", "--out", &kernel], &doc);
    let out = exactify(&["solve", "--in", &kernel, "--answers", &answers], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(ok(&["kernel-decide", "--in", &kernel, "--answers", &answers], ""), "yes\n");

    let count = std::fs::read_to_string(&kernel).unwrap().lines().count() - 1;
    std::fs::write(&answers, serde_json::to_string(&vec![false; count]).unwrap()).unwrap();
    assert_eq!(code(&["kernel-decide", "--in", &kernel, "--answers", &answers], ""), 1);
    std::fs::write(&answers, "[true]").unwrap();
    assert_eq!(code(&["kernel-decide", "--in", &kernel, "--answers", &answers], ""), 2);
}

#[test]
fn verify_lists_witnesses() {
    let tri = r#"{"kind":"vertexcover","n":3,"weights":["1","1","1"],"l":"0","u":"2","edges":[[0,1],[1,2],[0,2]]}"#;
    let lines = json_lines(&ok(&["verify"], tri));
    let found: Vec<Subset> = lines.iter().map(elements).collect();
    assert_eq!(
        found,
        vec![Subset::from_elements([0, 1]), Subset::from_elements([0, 2]), Subset::from_elements([1, 2])]
    );
    assert_eq!(json_lines(&ok(&["verify", "--count", "--oracle", "subsets"], tri))[0]["count"], 7);
    assert_eq!(code(&["verify", "--u", "1"], tri), 1);
}

#[test]
fn files_and_stdin_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    let doc = ok(&["gen", "--kind", "subsetsum", "--n", "5", "--seed", "9", "--out", path.to_str().unwrap()], "");
    assert!(doc.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(ok(&["shrink", "--in", path.to_str().unwrap()], ""), ok(&["shrink"], &text));
    assert!(Path::new(&path).exists());
}
