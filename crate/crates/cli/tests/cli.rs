use std::process::{Command, Output};

fn fiblab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fiblab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const G2_UNDER: &str = r#"{"kind":"slice","space":"G(2)","vertex":"0","side":"under"}"#;
const WORKED: &str = r#"{"kind":"grothendieck","n":2,"sizes":[3,2,2],"maps":[[0,2],[1,0]]}"#;

#[test]
fn factorize_prints_both_factors() {
    let o = fiblab(&["factorize", "--map", r#"{"m":2,"n":3,"values":[0,0,2]}"#, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["p"]["values"], serde_json::json!([0, 0, 2]));
    assert_eq!(v["report"]["p"]["n"], 2);
    assert_eq!(v["report"]["i"]["values"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["report"]["i"]["n"], 3);
}

#[test]
fn spine_under_space_is_not_a_left_fibration() {
    let o = fiblab(&["check-fibration", "--side", "left", "--mode", "exact", "--input", G2_UNDER, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let level1 = &v["report"]["per_level"][0];
    assert_eq!((level1["level"].as_u64(), level1["lhs"].as_u64(), level1["rhs"].as_u64()), (Some(1), Some(3), Some(4)));
    assert_eq!(v["report"]["square"]["rhs"], serde_json::json!(["(00,00)", "(00,01)", "(01,11)", "(01,12)"]));
    assert_eq!(v["tier"], "exact");
    assert!(v["report"]["counterexample"].is_string());
}

#[test]
fn yoneda_on_a_point() {
    let o = fiblab(&["yoneda", "--mode", "tensor_fibered"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    for mode in ["hom_functor", "tensor_functor", "hom_fibered"] {
        let o = fiblab(&["yoneda", "--mode", mode, "--input", r#"{"category":"[2]"}"#]);
        assert_eq!(o.status.code(), Some(0), "{mode}");
    }
}

#[test]
fn malformed_input_exits_two_with_location() {
    let o = fiblab(&["factorize", "--map", r#"{"m":2,"n":3,"values":[0,0"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
    let o = fiblab(&["factorize", "--map", r#"{"m":2,"n":3,"values":[0,2,1]}"#]);
    assert_eq!(o.status.code(), Some(2));
    let o = fiblab(&["build", "--input", "F(x)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fiblab(&["segal", "--input", "missing/file.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["check-fibration", "--side", "right", "--input", G2_UNDER, "--json", "--seed", "7"];
    let a = fiblab(&args);
    let b = fiblab(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\"seed\": 7"));
}

#[test]
fn straighten_and_fibers_of_the_worked_example() {
    let o = fiblab(&["straighten", "--input", WORKED, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["chain"], serde_json::json!([3, 2, 2]));
    let o = fiblab(&["fibers", "--input", WORKED]);
    assert_eq!(o.status.code(), Some(0));
    let o = fiblab(&["straighten", "--input", G2_UNDER]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cofinality_of_the_two_endpoints() {
    let at = |v: &str| format!(r#"{{"kind":"simplex","space":"F(1)","simplex":"{v}"}}"#);
    assert_eq!(fiblab(&["theorem-a", "--input", &at("1")]).status.code(), Some(0));
    assert_eq!(fiblab(&["theorem-a", "--input", &at("0")]).status.code(), Some(1));
}

#[test]
fn bounded_reports_carry_a_warning() {
    let o = fiblab(&["segal", "--input", "F(1)", "--mode", "bounded", "--bound", "1", "--levels", "2"]);
    let out = stdout(&o);
    assert!(out.contains("warning:"), "{out}");
    assert!(out.contains("(bounded)"), "{out}");
}

#[test]
fn other_commands_run() {
    let cases: [(&[&str], i32); 7] = [
        (&["segal", "--input", "G(2)"], 1),
        (&["segal", "--input", "F(3)"], 0),
        (&["homology", "--input", "boundary(2)"], 0),
        (&["tensor", "--input", r#"{"category":"iso","s":3}"#], 0),
        (&["slice", "--input", "F(2)", "--vertex", "1", "--side", "over"], 0),
        (&["colimit", "--input", r#"{"kind":"simplex","space":"F(2)","simplex":"01"}"#], 0),
        (&["classify", "--map", r#"{"m":1,"n":3,"values":[0,1]}"#], 0),
    ];
    for (args, code) in cases {
        assert_eq!(fiblab(args).status.code(), Some(code), "{args:?}");
    }
    let pair = format!(r#"{{"r":{WORKED},"w":{WORKED}}}"#);
    assert_eq!(fiblab(&["decompose-map", "--input", &pair, "--l-max", "1"]).status.code(), Some(0));
}

#[test]
fn build_round_trips_through_files() {
    let o = fiblab(&["build", "--input", "G(2)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dir = std::env::temp_dir().join(format!("fiblab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g2.json");
    std::fs::write(&path, serde_json::to_string(&v["report"]).unwrap()).unwrap();
    let o = fiblab(&["segal", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn report_suite_rows() {
    let o = fiblab(&["report-suite", "--only", "1,9", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("seed: 3"));
    assert_eq!(out.lines().filter(|l| l.contains(" PASS ") && !l.starts_with("verdict")).count(), 2);
    assert_eq!(fiblab(&["report-suite", "--only", "12"]).status.code(), Some(2));
}
