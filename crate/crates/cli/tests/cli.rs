use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    run_with_input(args, None)
}

fn run_with_input(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_split-species"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn assert_valid(schema: &str, value: &Value) {
    let path = root().join("schemas").join(format!("{schema}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(value)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{}: {errors:?}\n{value}", path.display());
}

fn json(o: &Output) -> Value {
    assert_eq!(
        o.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(o)).unwrap()
}

const C4: &str = "4\n0 1\n1 2\n2 3\n3 0\n";
const K3: &str = "3\n0 1\n1 2\n0 2\n";

#[test]
fn count_bicolored_four() {
    let o = run(&["count", "--class", "bicolored", "--labeled", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "162\n");
}

#[test]
fn count_tables_validate() {
    let v = json(&run(&[
        "count",
        "--class",
        "split",
        "--labeled",
        "--n",
        "20",
        "--format",
        "json",
    ]));
    assert_valid("count-table", &v);
    assert_eq!(v["values"]["20"]["provenance"], "formula");

    let v = json(&run(&[
        "count",
        "--class",
        "split",
        "--unlabeled",
        "--max-n",
        "6",
        "--format",
        "json",
    ]));
    assert_valid("count-table", &v);
    let values: Vec<&str> = (0..=6)
        .map(|n| v["values"][n.to_string()]["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["1", "1", "2", "4", "9", "21", "56"]);

    let v = json(&run(&[
        "count",
        "--class",
        "ambiguous",
        "--max-n",
        "7",
        "--format",
        "json",
    ]));
    assert_valid("count-table", &v);
    assert_eq!(v["values"]["7"]["value"], "34860");
}

#[test]
fn enumerate_streams_one_structure_per_line() {
    let o = run(&[
        "enumerate",
        "--class",
        "balanced",
        "--n",
        "4",
        "--format",
        "jsonl",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 12);
    for line in text.lines() {
        assert_valid("structure", &serde_json::from_str(line).unwrap());
    }
    let o = run(&["enumerate", "--class", "bc-star", "--n", "3"]);
    let count = stdout(&o).lines().count();
    assert_eq!(count, 13);
    for line in stdout(&o).lines() {
        assert_valid("colored-graph", &serde_json::from_str(line).unwrap());
    }
}

#[test]
fn classify_reports_swings() {
    let v = json(&run_with_input(&["classify", "--graph", "-"], Some(K3)));
    assert_valid("classification", &v);
    assert_eq!(v["class"], "KCanonical");
    assert_eq!(v["swing"]["kind"], "clique");

    let json_input = r#"{"n":3,"edges":[[0,1],[1,2]]}"#;
    let v = json(&run_with_input(
        &["classify", "--graph", "-"],
        Some(json_input),
    ));
    assert_eq!(v["class"], "SCanonical");
}

#[test]
fn classify_rejects_non_split_graphs() {
    let o = run_with_input(&["classify", "--graph", "-"], Some(C4));
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a split graph"));
}

#[test]
fn input_errors_exit_three() {
    let o = run(&["count", "--class", "split", "--unlabeled", "--n", "9"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["classify", "--graph", "/nonexistent/graph.g"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run_with_input(&["classify", "--graph", "-"], Some("2\n0 7\n"));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["count", "--class", "split"],
        vec!["count", "--class", "nonsense", "--n", "3"],
        vec![
            "count",
            "--class",
            "split",
            "--labeled",
            "--unlabeled",
            "--n",
            "3",
        ],
        vec!["verify", "--suite", "everything"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_split-species"))
        .args(["count", "--class", "split", "--n", "3"])
        .env("SPLIT_SPECIES_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bijections_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("split-species-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let k3 = dir.join("k3.g");
    std::fs::write(&k3, K3).unwrap();
    let k3s = k3.to_str().unwrap();

    let v = json(&run(&["biject", "--map", "uk-decompose", "--graph", k3s]));
    assert_valid("decomposition", &v);
    let pair = dir.join("pair.json");
    std::fs::write(&pair, v.to_string()).unwrap();
    let g = json(&run(&[
        "biject",
        "--map",
        "uk-compose",
        "--input",
        pair.to_str().unwrap(),
    ]));
    assert_valid("graph", &g);
    assert_eq!(g["edges"], serde_json::json!([[0, 1], [0, 2], [1, 2]]));

    let colored = r#"{"n":4,"edges":[[0,1],[1,2],[2,3]],"green":[1,2],"red":[0,3]}"#;
    let b = json(&run_with_input(
        &["biject", "--map", "split-to-bicolored", "--input", "-"],
        Some(colored),
    ));
    assert_valid("colored-graph", &b);
    assert_eq!(b["edges"], serde_json::json!([[0, 1], [2, 3]]));
    let back = json(&run_with_input(
        &["biject", "--map", "bicolored-to-split", "--input", "-"],
        Some(&b.to_string()),
    ));
    assert_eq!(back, serde_json::from_str::<Value>(colored).unwrap());

    let colored_k2 = r#"{"n":2,"edges":[[0,1]],"green":[0],"red":[1]}"#;
    let v = json(&run_with_input(
        &["biject", "--map", "cuk-decompose", "--input", "-"],
        Some(colored_k2),
    ));
    assert_valid("decomposition", &v);
    assert_eq!(v["pointed"]["point"], 1);

    let o = run_with_input(
        &["biject", "--map", "amb-decompose", "--input", "-"],
        Some(K3),
    );
    assert_eq!(o.status.code(), Some(3));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_suites_validate() {
    let v = json(&run(&["verify", "--suite", "identities", "--max-n", "4"]));
    assert_valid("verify-report", &v);
    assert_eq!(v["passed"], true);

    let v = json(&run(&[
        "verify", "--suite", "random", "--max-n", "7", "--cases", "200", "--seed", "9",
    ]));
    assert_valid("verify-report", &v);
    let again = json(&run(&[
        "verify", "--suite", "random", "--max-n", "7", "--cases", "200", "--seed", "9",
    ]));
    assert_eq!(v, again);

    let v = json(&run(&["verify", "--suite", "formulas", "--max-n", "318"]));
    assert_valid("cross-check-report", &v);
    assert_eq!(v["checked_to"], 318);
    assert_eq!(v["discrepancies"], serde_json::json!([]));

    let o = run(&["verify", "--suite", "formulas", "--max-n", "501"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn formulas_cache_is_reused_and_checked() {
    let dir = std::env::temp_dir().join(format!("split-species-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.join("cache.json");
    let c = cache.to_str().unwrap();
    let v = json(&run(&[
        "verify", "--suite", "formulas", "--max-n", "30", "--cache", c,
    ]));
    assert_eq!(v["discrepancies"], serde_json::json!([]));
    let mut table: Value = serde_json::from_str(&std::fs::read_to_string(&cache).unwrap()).unwrap();
    assert_valid("count-table", &table);
    assert_eq!(table["values"]["4"]["value"], "58");

    table["values"]["4"]["value"] = "59".into();
    std::fs::write(&cache, table.to_string()).unwrap();
    let o = run(&[
        "verify", "--suite", "formulas", "--max-n", "30", "--cache", c,
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["discrepancies"][0]["n"], 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn asym_outputs() {
    let o = run(&["asym", "--max-n", "200", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,b_ratio,s_over_b,u_over_s,bound");
    assert_eq!(lines.len(), 201);
    assert!(lines[200].starts_with("200,9.92898"));

    let v = json(&run(&[
        "asym",
        "--max-n",
        "10",
        "--format",
        "json",
        "--unlabeled",
        "5",
    ]));
    assert_valid("ratio-report", &v);
    assert_eq!(v["unlabeled"][4]["b"], "38");

    let v = json(&run(&["asym", "--thresholds", "--max-n", "200"]));
    assert_valid("thresholds", &v);
    let pinned: Value = serde_json::from_str(
        &std::fs::read_to_string(root().join("testdata/thresholds.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(v, pinned);
}

#[test]
fn golden_census_files_validate() {
    for n in 0..=7 {
        let path = root().join(format!("testdata/census-n{n}.json"));
        let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_valid("census", &v);
    }
}
