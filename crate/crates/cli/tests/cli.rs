use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpschedule"))
        .args(args)
        .output()
        .expect("run tpschedule")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn field(report: &str, key: &str) -> String {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).filter(|r| r.starts_with(' ')))
        .map(|r| r.trim().to_string())
        .unwrap_or_else(|| panic!("no `{key}` in\n{report}"))
}

#[test]
fn solve_worked_example_from_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.json",
        r#"{"curve":{"family":"quadratic","p":100,"q":1000},"c_real":0.4,"vc_a":20,"currency_label":"£"}"#,
    );
    let o = run(&["solve", "--scenario", &s]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "t"), "£42.15");
    assert_eq!(field(&text, "c_effective"), "0.250");
    assert_eq!(field(&text, "x"), "0.903");
    assert_eq!(field(&text, "n_adjusted"), "0.011 (1.1%)");
}

#[test]
fn solve_zero_target_linear() {
    let o = run(&["solve", "--family", "linear", "--p", "1", "--q", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "x"), "1.000");
    assert_eq!(field(&text, "t"), "0.00");
    assert_eq!(field(&text, "n"), "0.000");
}

#[test]
fn solve_exponential_row() {
    let o = run(&[
        "solve",
        "--family",
        "exponential",
        "--p",
        "100",
        "--q",
        "500",
        "--c-real",
        "0.30",
    ]);
    let text = stdout(&o);
    assert_eq!(field(&text, "x"), "0.680");
    assert_eq!(field(&text, "f"), "339.79");
    // 100·0.30/x at the unrounded x = 0.67958.
    assert_eq!(field(&text, "t"), "44.15");
    assert_eq!(field(&text, "n"), "0.064");
}

#[test]
fn flags_override_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.json",
        r#"{"curve":{"family":"quadratic","p":100,"q":1000},"c_real":0.4,"vc_a":20}"#,
    );
    let text = stdout(&run(&[
        "solve",
        "--scenario",
        &s,
        "--vc-a",
        "0",
        "--c-real",
        "0.25",
    ]));
    assert_eq!(field(&text, "c_effective"), "0.250");
    assert_eq!(field(&text, "t"), "27.69");
    let text = stdout(&run(&["solve", "--scenario", &s, "--family", "linear"]));
    assert_eq!(field(&text, "family"), "linear");
    assert_eq!(field(&text, "q"), "1000.00");
}

#[test]
fn json_round_trip_reproduces_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.json",
        r#"{"curve":{"family":"points","points":[[0.0,1.5],[0.6,1.32],[1.0,1.0]]},"c_real":0.33,"vc_a":0.1}"#,
    );
    let first = run(&["solve", "--scenario", &s, "--format", "json"]);
    assert_eq!(first.status.code(), Some(0));
    let again = write(dir.path(), "again.json", &stdout(&first));
    let second = run(&["solve", "--scenario", &again, "--format", "json"]);
    let a: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&second.stdout).unwrap();
    for key in ["c_effective", "x", "f", "t", "n", "n_adjusted"] {
        let (u, v) = (
            a["schedule"][key].as_f64().unwrap(),
            b["schedule"][key].as_f64().unwrap(),
        );
        assert!((u - v).abs() <= 1e-12, "{key}: {u} vs {v}");
    }
}

#[test]
fn table_grid_and_infeasible_rows() {
    let o = run(&["table", "--family", "linear", "--grid", "0.5:0.0:-0.05"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "c,x,n");
    assert_eq!(lines.len(), 12);
    // Oracle: x = 0.5 + sqrt(0.25 - 0.5c), n = (1 - x)².
    for line in &lines[1..] {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let x = 0.5 + (0.25 - 0.5 * v[0]).sqrt();
        assert!((v[1] - x).abs() <= 5e-4 + 1e-12);
        assert!((v[2] - (1.0 - x) * (1.0 - x)).abs() <= 5e-4 + 1e-12);
    }

    let csv = stdout(&run(&["table", "--family", "quadratic", "--grid", "0.6"]));
    assert_eq!(csv, "c,x,n\n0.600,infeasible,infeasible\n");
}

#[test]
fn table_extended_with_scale_and_round() {
    let csv = stdout(&run(&[
        "table",
        "--family",
        "quadratic",
        "--p",
        "100",
        "--q",
        "1000",
        "--vc-a",
        "20",
        "--grid",
        "0.4",
        "--round",
        "4",
    ]));
    assert_eq!(
        csv,
        "c,x,t,f,n,n_adjusted\n0.4000,0.9030,42.15,903.01,0.0137,0.0109\n"
    );
}

#[test]
fn table_from_scenario_sweep_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.json",
        r#"{"curve":{"family":"exponential","a":2.718281828459045,"b":1.0},"sweep":{"start":0.0,"stop":0.4,"step":0.1}}"#,
    );
    let o = run(&["table", "--scenario", &s, "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# exponential\n"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn curve_export() {
    let csv = stdout(&run(&[
        "curve",
        "--family",
        "quadratic",
        "--c-real",
        "0.25",
        "--samples",
        "4",
    ]));
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|s| s.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    let last = rows.last().unwrap();
    assert_eq!(last[0], 1.0);
    assert!((last[1] - 1.0).abs() < 1e-9 && last[2].abs() < 1e-9);
    let sol = rows.iter().find(|r| r[4] == 1.0).unwrap();
    assert!((sol[0] - 0.903).abs() < 5e-4);
    assert!((sol[3] - 0.25 / sol[0]).abs() < 1e-12);
    assert!((sol[3] - sol[2]).abs() < 1e-3);

    let csv = stdout(&run(&[
        "curve",
        "--family",
        "exponential",
        "--samples",
        "2",
    ]));
    let first: Vec<f64> = csv
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(first[0], 0.5);
    assert!((first[1] - 0.5f64.exp()).abs() < 1e-12);
}

#[test]
fn curve_rejects_too_few_samples() {
    let o = run(&["curve", "--family", "linear", "--samples", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_reports_bounds_and_warnings() {
    let text = stdout(&run(&["validate", "--family", "quadratic"]));
    assert!(field(&text, "c_max").starts_with("0.577"));
    let text = stdout(&run(&["validate", "--family", "linear"]));
    assert!(field(&text, "c_max").starts_with("0.500"));

    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "rising.json",
        r#"{"curve":{"family":"points","points":[[0.0,1.0],[0.5,1.25],[1.2,0.76]]},"c_real":0.2}"#,
    );
    let o = run(&["validate", "--scenario", &s]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NOT_DECREASING"));

    let o = run(&["validate", "--family", "linear", "--c-real", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "validate", "--family", "linear", "--c-real", "0.7", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["feasible"], false);
}

#[test]
fn error_paths_exit_two_with_code_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(Vec<String>, &str)> = vec![
        (
            vec![
                "solve".into(),
                "--family".into(),
                "quadratic".into(),
                "--c-real".into(),
                "0.6".into(),
            ],
            "C_EXCEEDS_FEASIBLE",
        ),
        (
            vec![
                "solve".into(),
                "--family".into(),
                "linear".into(),
                "--p".into(),
                "10".into(),
                "--vc-a".into(),
                "10".into(),
            ],
            "VARIABLE_COST_TOO_HIGH",
        ),
        (
            vec![
                "solve".into(),
                "--family".into(),
                "linear".into(),
                "--p".into(),
                "10".into(),
                "--vc-a".into(),
                "5".into(),
                "--c-real".into(),
                "0.1".into(),
            ],
            "NEGATIVE_EFFECTIVE_CONTRIBUTION",
        ),
        (
            vec![
                "solve".into(),
                "--scenario".into(),
                write(dir.path(), "bad.json", "{\"curve\":"),
            ],
            "MALFORMED_SCENARIO",
        ),
        (
            vec![
                "solve".into(),
                "--scenario".into(),
                write(
                    dir.path(),
                    "dup.json",
                    r#"{"curve":{"family":"points","points":[[0,1],[0,2],[1,0.5]]}}"#,
                ),
            ],
            "DUPLICATE_ABSCISSA",
        ),
        (
            vec![
                "solve".into(),
                "--scenario".into(),
                write(
                    dir.path(),
                    "flat.json",
                    r#"{"curve":{"family":"points","points":[[0,1],[1,2],[2,3]]}}"#,
                ),
            ],
            "NO_OPTIMUM",
        ),
        (vec!["solve".into()], "USAGE"),
        (
            vec!["solve".into(), "--family".into(), "cubic".into()],
            "USAGE",
        ),
        (
            vec![
                "table".into(),
                "--family".into(),
                "linear".into(),
                "--grid".into(),
                "0:1:-1".into(),
            ],
            "USAGE",
        ),
        (
            vec!["table".into(), "--paper-table".into(), "2".into()],
            "USAGE",
        ),
        (
            vec!["table".into(), "--family".into(), "linear".into()],
            "USAGE",
        ),
        (
            vec![
                "solve".into(),
                "--scenario".into(),
                "/nonexistent/s.json".into(),
            ],
            "IO",
        ),
    ];
    for (args, code) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(
            err.starts_with(&format!("error[{code}]: ")),
            "{args:?}: {err}"
        );
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t3.csv");
    let o = run(&[
        "table",
        "--paper-table",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(path).unwrap();
    assert_eq!(body.lines().count(), 14);
}
