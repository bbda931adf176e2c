use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigid-covers"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn example1_invariants() {
    let o = run(&["cover", "invariants", "builtin:example1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("K^2          333"), "{text}");
    assert!(text.contains("e            111"), "{text}");

    let v = json(&["cover", "invariants", "builtin:example1"]);
    assert_eq!(v["invariants"]["k_squared"], 333);
    assert_eq!(v["invariants"]["euler"], 111);
    assert_eq!(v["invariants"]["chi"], 37);
}

#[test]
fn paper_verify_passes() {
    let o = run(&["paper", "verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(", 0 failed"));
}

#[test]
fn example3_has_two_real_classes() {
    let v = json(&["real", "classify", "builtin:example3"]);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    let lines: Vec<&serde_json::Value> = classes.iter().map(|c| &c["fingerprint"]["real_lines"]).collect();
    assert_eq!(*lines[0], serde_json::json!([1, 2, 3, 4, 5, 6]));
    assert_eq!(*lines[1], serde_json::json!([3, 6]));
}

#[test]
fn example2_symmetry_report() {
    let v = json(&["symmetry", "search", "builtin:example2"]);
    assert_eq!(v["automorphisms"], 432);
    assert_eq!(v["kl_order"], 50);
    assert_eq!(v["anti_involutions"], 25);
    let anti = &v["symmetries"][1];
    assert_eq!(anti["symmetry"]["perm"], "(2 3)(4 6)(7 8)");
    assert_eq!(anti["symmetry"]["anti"], true);
    assert_eq!(anti["deck_action"], serde_json::json!([[4, 0], [0, 4]]));
}

#[test]
fn arrangement_and_characters() {
    let v = json(&["arrangement", "info", "builtin:dual_hesse"]);
    assert_eq!(v["multiplicities"]["3"], 12);
    assert_eq!(v["automorphisms"], 432);
    assert_eq!(v["conjugation"], "(2 3)(4 6)(7 8)");

    let v = json(&["characters", "list", "builtin:example1"]);
    assert_eq!(v["elements"].as_array().unwrap().len(), 25);

    let v = json(&["cover", "smoothness", "builtin:example2"]);
    assert_eq!(v["certificate"]["smooth"], true);
}

#[test]
fn bounds_for_builtin_and_file() {
    let v = json(&["bounds", "check", "builtin:example2"]);
    let report = &v["datasets"][0]["report"];
    assert_eq!(report["smith_total"], 111);
    assert_eq!(report["real_total"], 7);
    assert_eq!(report["maximal"], false);
    assert_eq!(report["lefschetz_trace"], -4);
    assert_eq!(v["fake_plane"]["lefschetz_fixed_points"], 3);
    assert_eq!(v["fake_plane"]["holomorphic_sum"], "3/4");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hodge.json");
    fs::write(&path, r#"{"h10": 0, "h20": 36, "h11": 37, "p_minus": 36}"#).unwrap();
    let v = json(&["bounds", "check", path.to_str().unwrap(), "--k3", "2"]);
    let report = &v["datasets"][0];
    assert_eq!(report["maximal_h20_lower_bound"], 4);
    assert_eq!(report["component_bound"]["verdict"], "infeasible");
}

#[test]
fn inconsistent_real_part_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hodge.json");
    // trace from the component is -4, but p_plus - p_minus = 0.
    fs::write(
        &path,
        r#"{"h10": 0, "h20": 4, "h11": 5, "p_plus": 2, "p_minus": 2, "components": [[1, 5, 1]]}"#,
    )
    .unwrap();
    let o = run(&["bounds", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("INCONSISTENT"));
}

#[test]
fn cover_file_with_relative_arrangement() {
    let dir = tempfile::tempdir().unwrap();
    let arr = run(&[
        "arrangement",
        "info",
        "builtin:complete_quadrilateral",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&arr.stdout).unwrap();
    fs::write(
        dir.path().join("quad.json"),
        serde_json::json!({ "lines": v["lines"] }).to_string(),
    )
    .unwrap();
    let cover = dir.path().join("cover.json");
    fs::write(
        &cover,
        r#"{"arrangement": "quad.json", "m": 5, "k": 2, "phi": [[1,0],[1,0],[1,2],[0,1],[0,1],[2,1]]}"#,
    )
    .unwrap();
    let v = json(&["cover", "invariants", cover.to_str().unwrap()]);
    assert_eq!(v["invariants"]["k_squared"], 45);
    assert_eq!(v["invariants"]["euler"], 15);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["cover", "invariants"]).status.code(), Some(2));
    assert_eq!(run(&["cover", "invariants", "builtin:example9"]).status.code(), Some(2));
    assert_eq!(run(&["--format", "yaml", "paper", "verify"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"arrangement\": ").unwrap();
    let o = run(&["cover", "invariants", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
    assert_eq!(run(&["bounds", "check", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        run(&["arrangement", "info", dir.path().join("missing.json").to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&[
        "real",
        "classify",
        "builtin:example2",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);
    assert_eq!(v["classes"][0]["size"], 25);
}

#[test]
fn reports_are_byte_identical() {
    let commands: [&[&str]; 5] = [
        &["symmetry", "search", "builtin:example3", "--format", "json"],
        &["real", "classify", "builtin:example3"],
        &["arrangement", "info", "builtin:dual_hesse", "--format", "json"],
        &["characters", "list", "builtin:example2"],
        &["bounds", "check", "builtin:example3", "--format", "json"],
    ];
    for args in commands {
        let first = run(args).stdout;
        for _ in 0..3 {
            assert_eq!(run(args).stdout, first, "{args:?}");
        }
    }
}
