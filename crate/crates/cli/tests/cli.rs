use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coincidence-lab"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run(args: &[&str], file: &Path) -> Output {
    bin().args(args).arg(file).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

const GOLDEN: &[(&str, &str)] = &[
    ("example-7.1-pair", "decide"),
    ("example-7.1-triple", "decide"),
    ("example-7.2-pair", "decide"),
    ("example-7.2-pair", "class"),
    ("example-7.2-triple", "decide"),
    ("example-7.3-pair", "decide"),
    ("example-7.3-tuple", "decide"),
    ("sphere-n2-k2", "class"),
    ("torus-diag-2-3", "class"),
    ("torus-diag-2-3", "solve"),
    ("torus-unimodular", "class"),
    ("torus-unimodular", "solve"),
    ("torus-det-minus-2", "class"),
    ("torus-det-minus-2", "solve"),
    ("torus-pair-decide", "class"),
    ("torus-pair-decide", "solve"),
    ("torus-pair-decide", "decide"),
];

#[test]
fn reports_match_golden_files() {
    for (name, cmd) in GOLDEN {
        let text = stdout(&run(&[cmd], &fixture(&format!("{name}.json"))));
        assert_eq!(text, golden(&format!("{name}.{cmd}.json")), "{name} {cmd}");
    }
}

#[test]
fn runs_are_byte_identical() {
    for (name, cmd) in GOLDEN {
        let file = fixture(&format!("{name}.json"));
        let a = run(&[cmd], &file);
        let b = run(&[cmd], &file);
        assert_eq!(a.stdout, b.stdout, "{name} {cmd}");
    }
}

#[test]
fn repeated_solves_agree() {
    // The report never depends on thread scheduling: points are sorted.
    let file = fixture("torus-diag-2-3.json");
    let outputs: Vec<_> = (0..5).map(|_| run(&["solve"], &file).stdout).collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn spec_example_values() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["class"], &fixture("torus-diag-2-3.json")))).unwrap();
    assert_eq!(v["class"]["value"], 6);
    assert_eq!(v["oracle_agrees"], true);

    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["class"], &fixture("sphere-n2-k2.json")))).unwrap();
    assert_eq!(v["class"]["kind"], "integer");
    assert_eq!(v["class"]["value"], 8);

    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["class"], &fixture("example-7.2-pair.json")))).unwrap();
    assert_eq!(v["class"]["kind"], "zero");
    assert_eq!(v["class"]["provenance"], "p^*([T^2])=0");

    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["solve"], &fixture("torus-diag-2-3.json")))).unwrap();
    let coords: Vec<Vec<String>> = v["coincidence_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            assert_eq!(p["local_index"], 1);
            p["coordinates"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect()
        })
        .collect();
    let expected: Vec<Vec<String>> = ["0", "1/2"]
        .iter()
        .flat_map(|a| ["0", "1/3", "2/3"].iter().map(move |b| vec![a.to_string(), b.to_string()]))
        .collect();
    assert_eq!(coords, expected);

    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["solve"], &fixture("torus-unimodular.json")))).unwrap();
    assert_eq!(v["coincidence_points"], serde_json::json!([{"coordinates": ["0", "0"], "local_index": 1}]));
}

#[test]
fn output_flag_writes_file_and_quiet_silences_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = bin()
        .args(["--output", target.to_str().unwrap(), "--quiet", "class"])
        .arg(fixture("sphere-n2-k2.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&target).unwrap(), golden("sphere-n2-k2.class.json"));

    let out = bin().args(["class", "--quiet"]).arg(fixture("sphere-n2-k2.json")).output().unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

fn exit_code(args: &[&str], body: &str) -> (i32, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "s.json", body);
    let out = run(args, &path);
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn schema_errors_exit_2_and_name_the_field() {
    let cases = [
        (r#"{"model": "torus-affine", "torus": {"maps": []}, "extra": 1}"#, "extra"),
        (r#"{"model": "sphere-degrees"}"#, "sphere"),
        (r#"{"model": "klein-bottle"}"#, "klein-bottle"),
        (r#"{"model": "sphere-degrees", "sphere": {"n": 2, "k": 2, "hat_degrees": [1, 2]}, "torus": {"maps": []}}"#, "torus"),
        (
            r#"{"model": "torus-affine", "torus": {"maps": [{"matrix": [[1]], "translation": ["1/x"]}, {"matrix": [[2]]}]}}"#,
            "torus.maps[0].translation[0]",
        ),
        (
            r#"{"model": "facts", "facts": {"source": "X", "target": "Y", "n": 2, "maps": [{"id": "f"}, {"id": "g"}], "statements": [{"kind": "pullback-vanishes", "justification": "j"}]}}"#,
            "facts.statements[0].map",
        ),
        (
            r#"{"model": "facts", "facts": {"source": "X", "target": "Y", "n": 2, "maps": [{"id": "f"}, {"id": "g"}], "statements": [{"kind": "pullback-vanishes", "map": "h", "justification": "j"}]}}"#,
            "\"h\"",
        ),
    ];
    for (body, field) in cases {
        let (code, err) = exit_code(&["class"], body);
        assert_eq!(code, 2, "{body}: {err}");
        assert!(err.contains(field), "{err} should mention {field}");
    }
    let (code, err) = exit_code(&["decide"], r#"{"model": "sphere-degrees", "sphere": {"n": 2, "k": 2, "hat_degrees": [1, 2]}}"#);
    assert_eq!(code, 2);
    assert!(err.contains("decider"), "{err}");
    let (code, _) = exit_code(&["solve"], r#"{"model": "sphere-degrees", "sphere": {"n": 2, "k": 2, "hat_degrees": [1, 2]}}"#);
    assert_eq!(code, 2);
}

#[test]
fn dimension_errors_exit_3() {
    let cases = [
        r#"{"model": "torus-affine", "torus": {"maps": [{"matrix": [[1, 0]]}, {"matrix": [[2, 0], [0, 1]]}]}}"#,
        r#"{"model": "torus-affine", "torus": {"maps": [{"matrix": [[1, 0], [0, 1]]}, {"matrix": [[2, 0], [0, 3]]}, {"matrix": [[0, 0], [0, 0]]}]}}"#,
        r#"{"model": "torus-affine", "torus": {"maps": [{"matrix": [[1]], "translation": [0, 0]}, {"matrix": [[2]]}]}}"#,
        r#"{"model": "sphere-degrees", "sphere": {"n": 2, "k": 3, "hat_degrees": [1, 2]}}"#,
    ];
    for body in cases {
        let (code, err) = exit_code(&["class"], body);
        assert_eq!(code, 3, "{body}: {err}");
    }
    let body = r#"{"model": "torus-affine", "torus": {"maps": [{"matrix": [[1]]}, {"matrix": [[3]]}]},
        "decider": {"n": 2, "source": {"closed": true, "connected": true, "oriented": true},
        "target": {"closed": true, "connected": true, "orientable": true, "simply_connected": false}}}"#;
    let (code, err) = exit_code(&["decide"], body);
    assert_eq!(code, 3);
    assert!(err.contains("decider.n"), "{err}");
}

#[test]
fn non_transverse_exits_4_with_determinant_evidence() {
    let body = r#"{"model": "torus-affine", "torus": {"maps": [{"matrix": [[1, 2]]}, {"matrix": [[2, 4]]}, {"matrix": [[3, 6]]}]}}"#;
    let (code, err) = exit_code(&["solve"], body);
    assert_eq!(code, 4, "{err}");
    assert!(err.contains("det = 0"), "{err}");

    // class still reports the (zero) class without a cross-check
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "s.json", body);
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["class"], &path))).unwrap();
    assert_eq!(v["class"]["value"], 0);
    assert_eq!(v["transverse"], false);
    assert_eq!(v["oracle_agrees"], serde_json::Value::Null);
}

#[test]
fn overflow_exits_5() {
    let body = r#"{"model": "torus-affine", "torus": {"maps": [{"matrix": [[-9223372036854775807]]}, {"matrix": [[9223372036854775807]]}]}}"#;
    let (code, err) = exit_code(&["class"], body);
    assert_eq!(code, 5, "{err}");
    assert!(err.contains("overflow"), "{err}");
}

#[test]
fn missing_file_exits_1() {
    let out = bin().args(["class", "/nonexistent/scenario.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

/// Reverses the key order of every object.
fn reverse_keys(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .rev()
                .map(|(k, v)| format!("{}: {}", serde_json::to_string(k).unwrap(), reverse_keys(v)))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
        serde_json::Value::Array(items) => {
            format!("[{}]", items.iter().map(reverse_keys).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

#[test]
fn key_order_never_changes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    for (name, cmd) in GOLDEN {
        let original = fs::read_to_string(fixture(&format!("{name}.json"))).unwrap();
        let value: serde_json::Value = serde_json::from_str(&original).unwrap();
        let permuted = reverse_keys(&value);
        assert_ne!(permuted.replace(char::is_whitespace, ""), original.replace(char::is_whitespace, ""));
        let path = write_temp(&dir, &format!("{name}.json"), &permuted);
        assert_eq!(stdout(&run(&[cmd], &path)), golden(&format!("{name}.{cmd}.json")), "{name} {cmd}");
    }
}
