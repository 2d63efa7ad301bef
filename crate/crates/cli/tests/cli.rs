use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steklov-trees"))
        .args(args)
        .env_remove("STEKLOV_TREES_TOL")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn values(v: &serde_json::Value) -> Vec<f64> {
    v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

#[test]
fn star_spectrum() {
    let v = json(&[
        "spectrum",
        "--family",
        "star:5",
        "--operator",
        "steklov",
        "--format",
        "json",
    ]);
    let s = values(&v["steklov"]);
    assert_eq!(s.len(), 4);
    assert!(s[0].abs() < 1e-12);
    assert!(s[1..].iter().all(|x| (x - 1.0).abs() < 1e-12));
    assert!(v["laplacian"].is_null());
}

#[test]
fn crab_spectrum() {
    let v = json(&["spectrum", "--family", "crab:1,2,1", "--format", "json"]);
    let s = values(&v["steklov"]);
    for (got, want) in s.iter().zip([0.0, 0.6, 1.0]) {
        assert!((got - want).abs() < 1e-9);
    }
}

#[test]
fn extra_special_closed_form() {
    let v = json(&[
        "spectrum",
        "--family",
        "es:3,1",
        "--closed-form",
        "--format",
        "json",
    ]);
    let closed = &v["closed_form"];
    assert_eq!(closed["agrees"], true);
    let entries = closed["spectrum"]["entries"].as_array().unwrap();
    let root = 12f64.sqrt();
    let lo = entries[1]["value"]["value"].as_f64().unwrap();
    let hi = entries[2]["value"]["value"].as_f64().unwrap();
    assert!((lo - (12.0 - root) / 22.0).abs() < 1e-12);
    assert!((hi - (12.0 + root) / 22.0).abs() < 1e-12);
    let numeric = values(&v["steklov"]);
    assert!((numeric[1] - lo).abs() < 1e-9 && (numeric[2] - hi).abs() < 1e-9);
}

#[test]
fn both_operators_and_text() {
    let o = run(&["spectrum", "--family", "path:4", "--operator", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("steklov 0.000000000000 0.666666666667"));
    assert!(text.contains("laplacian 0.000000000000 0.585786437627"));
}

#[test]
fn tree_file_is_recognised() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    std::fs::write(&path, "# crab\n6\n0 1\n1 2\n2 3\n3 4\n2 5\n").unwrap();
    let v = json(&[
        "spectrum",
        "--tree",
        path.to_str().unwrap(),
        "--closed-form",
        "--format",
        "json",
    ]);
    assert_eq!(v["order"], 6);
    assert_eq!(v["closed_form"]["agrees"], true);
}

#[test]
fn random_tree_is_seeded() {
    let a = run(&[
        "spectrum",
        "--random",
        "12",
        "--seed",
        "7",
        "--operator",
        "both",
    ]);
    let b = run(&[
        "spectrum",
        "--random",
        "12",
        "--seed",
        "7",
        "--operator",
        "both",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "spectrum",
        "--random",
        "12",
        "--seed",
        "8",
        "--operator",
        "both",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn csv_spectrum() {
    let o = run(&[
        "spectrum",
        "--family",
        "crab:1,2,1",
        "--closed-form",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("operator,index,value,exact,multiplicity,label")
    );
    assert!(text.contains("closed_steklov,2,0.6,3/5,1,"));
}

#[test]
fn enumerate_examples() {
    assert_eq!(
        stdout(&run(&["enumerate", "--n", "7", "--count-only"])).trim(),
        "11"
    );
    assert_eq!(
        stdout(&run(&["enumerate", "--n", "10", "--count-only"])).trim(),
        "106"
    );
    let one = stdout(&run(&["enumerate", "--n", "1"]));
    assert_eq!(one.matches('#').count(), 1);
    let codes = stdout(&run(&["enumerate", "--class", "b=3,m=2", "--codes"]));
    assert_eq!(codes.lines().count(), 2);
    let v = json(&["enumerate", "--n", "5", "--format", "json"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn enumerated_blocks_parse_back() {
    let text = stdout(&run(&["enumerate", "--n", "6"]));
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 6);
    for block in blocks {
        let t: steklov_trees::TreeGraph = block.parse().unwrap();
        assert_eq!(t.order(), 6);
    }
}

#[test]
fn verify_passes_where_the_bounds_hold() {
    let o = run(&[
        "verify",
        "--theorem",
        "older",
        "--max-b",
        "5",
        "--max-m",
        "4",
        "--max-n",
        "9",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let reports: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for r in reports.as_array().unwrap() {
        assert!(r["observed_max"].as_f64().unwrap() <= 1.0 + 1e-8);
    }
}

#[test]
fn verify_reports_the_two_vertex_path() {
    // P_2 is in the m = 1 class and has sigma_2 = 2 > 1
    let o = run(&[
        "verify",
        "--theorem",
        "slope",
        "--max-n",
        "6",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let failing: Vec<&str> = text.lines().filter(|l| l.contains(",false,")).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("slope,\"n=2,m=1\""));
}

#[test]
fn verify_out_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = run(&[
            "verify",
            "--theorem",
            "unit",
            "--max-b",
            "4",
            "--max-m",
            "5",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(matches!(o.status.code(), Some(0 | 1)));
        assert!(stdout(&o).contains("reports"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn conjecture_reports_gap() {
    let v = json(&[
        "conjecture",
        "--b",
        "3",
        "--r",
        "1",
        "--operator",
        "steklov",
    ]);
    assert!(v["gap"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["agrees"], true);
    assert_eq!(v["conjectured_graph"], "es:3,2");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        run(&["spectrum", "--family", "bogus:1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["spectrum"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--class", "q=1"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--n", "30"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--theorem", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["conjecture", "--b", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["spectrum", "--tree", "/nonexistent/tree.txt"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["spectrum", "--family", "star:4", "--tol", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_steklov-trees"))
        .args(["conjecture", "--b", "3"])
        .env("STEKLOV_TREES_TOL", "1e-6")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tol"].as_f64(), Some(1e-6));
    let bad = Command::new(env!("CARGO_BIN_EXE_steklov-trees"))
        .args(["conjecture", "--b", "3"])
        .env("STEKLOV_TREES_TOL", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
