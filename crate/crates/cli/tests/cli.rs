use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lawson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lawson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn classify(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["classify"];
    full.extend_from_slice(args);
    let o = lawson(&full);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn classify_bipolar_klein_bottle() {
    let v = classify(&["1", "0", "2"]);
    assert_eq!(v["canonical"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["verdict"], "maximal");
    assert_eq!(v["topology"], "klein_bottle");
    assert_eq!(v["bipolar_pair"], serde_json::json!({"r": 3, "m": 1}));
    assert_eq!(v["index"], 1);
}

#[test]
fn classify_scales_and_signs() {
    for args in [["2", "4", "6"], ["-2", "4", "-6"]] {
        let v = classify(&args);
        assert_eq!(v["canonical"], serde_json::json!([1, 2, 3]));
        assert_eq!(v["topology"], "torus");
        assert_eq!(v["regime"], "interior");
        assert!(v.get("bipolar_pair").is_none());
    }
}

#[test]
fn classify_rejects_constraint_violation() {
    let o = lawson(&["classify", "1", "2", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
}

#[test]
fn catalog_small_has_two_maximal_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.csv");
    let o = lawson(&[
        "catalog",
        "--max-sum",
        "4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "a,b,c,topology,regime,index_j,lambda,lambda_over_bound,verdict,prop3_margin"
    );
    let maximal: Vec<&str> = lines
        .filter(|l| l.split(',').nth(8) == Some("maximal"))
        .map(|l| &l[..5])
        .collect();
    assert_eq!(maximal, ["0,1,2", "1,1,2"]);
}

#[test]
fn catalog_sixty_margins_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, parallel: bool, format: &str| {
        let path = dir.path().join(name);
        let mut args = vec![
            "catalog",
            "--max-sum",
            "60",
            "--format",
            format,
            "--out",
            path.to_str().unwrap(),
        ];
        if parallel {
            args.push("--parallel");
        }
        assert_eq!(lawson(&args).status.code(), Some(0));
        fs::read(path).unwrap()
    };
    let serial = run("a.csv", false, "csv");
    assert_eq!(serial, run("b.csv", true, "csv"));
    assert_eq!(run("a.json", false, "json"), run("b.json", true, "json"));

    let text = String::from_utf8(serial).unwrap();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[4] != "interior" {
            continue;
        }
        let margin: f64 = f[9].parse().unwrap();
        // S(0,0,1) = 2π² is the one interior case where the bound is attained.
        if f[..3] == ["0", "0", "1"] {
            assert!(margin.abs() < 1e-12);
        } else {
            assert!(margin > 0.0, "{line}");
        }
    }
}

#[test]
fn catalog_rejects_small_max_sum() {
    assert_eq!(
        lawson(&["catalog", "--max-sum", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn catalog_unwritable_path_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("cat.csv");
    let o = lawson(&["catalog", "--max-sum", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "isometry", "--params", "3", "1"][..],
        &["verify", "minimal", "--params", "T", "1", "0", "2"],
        &["verify", "area", "--params", "T", "0", "1", "3"],
        &["verify", "elliptic", "--params", "0.5", "-1"],
    ] {
        let o = lawson(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).lines().any(|l| l.starts_with("PASS")));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn verify_tolerance_override_can_fail() {
    let o = lawson(&[
        "verify", "minimal", "--params", "T", "1", "0", "2", "--tol", "1e-30",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_unknown_suite() {
    assert_eq!(lawson(&["verify", "spectrum"]).status.code(), Some(2));
}

#[test]
fn mesh_csv_points_on_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = lawson(&[
        "mesh",
        "T",
        "1",
        "0",
        "2",
        "--nx",
        "64",
        "--ny",
        "64",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "x_param,y_param,c1,c2,c3,c4,c5,c6"
    );
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 4096);
    for r in rows {
        let n: f64 = r[2..].iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((n - 1.0).abs() < 1e-12);
    }
}

#[test]
fn mesh_bipolar_in_hyperplane() {
    let o = lawson(&["mesh", "bipolar", "3", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 64 * 64);
    for r in rows {
        assert!((3.0 * r[2] + r[3]).abs() < 1e-13);
    }
}

fn count_prefix(path: &Path, prefix: &str) -> usize {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| l.starts_with(prefix))
        .count()
}

#[test]
fn mesh_obj_with_companion_csv() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("clifford.obj");
    let o = lawson(&[
        "mesh",
        "τ",
        "1",
        "1",
        "--nx",
        "4",
        "--ny",
        "4",
        "--format",
        "obj",
        "--out",
        obj.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(count_prefix(&obj, "v "), 16);
    assert_eq!(count_prefix(&obj, "f "), 32);
    let faces: Vec<usize> = fs::read_to_string(&obj)
        .unwrap()
        .lines()
        .filter(|l| l.starts_with("f "))
        .flat_map(|l| {
            l[2..]
                .split(' ')
                .map(|i| i.parse().unwrap())
                .collect::<Vec<usize>>()
        })
        .collect();
    assert!(faces.iter().all(|&i| (1..=16).contains(&i)));
    let companion = dir.path().join("clifford.csv");
    assert_eq!(csv_rows(&fs::read_to_string(companion).unwrap()).len(), 16);
}

#[test]
fn mesh_argument_errors() {
    assert_eq!(
        lawson(&["mesh", "tau", "1", "1", "--nx", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(lawson(&["mesh", "klein", "1", "1"]).status.code(), Some(2));
    assert_eq!(
        lawson(&["mesh", "bipolar", "2", "4"]).status.code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("no").join("m.csv");
    let o = lawson(&[
        "mesh",
        "tau",
        "2",
        "1",
        "--nx",
        "4",
        "--ny",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}
