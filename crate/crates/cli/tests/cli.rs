use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn orthodraw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthodraw"))
        .args(args)
        .env_remove("ORTHODRAW_SEED")
        .env_remove("ORTHODRAW_OUT")
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn square_edge_list_draws_a_unit_square() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c4.txt");
    fs::write(&input, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let out = orthodraw(&["draw", path(&input), "--format", "json"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let mut xs: Vec<i64> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["x"].as_i64().unwrap())
        .collect();
    let mut ys: Vec<i64> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["y"].as_i64().unwrap())
        .collect();
    xs.sort_unstable();
    ys.sort_unstable();
    assert_eq!((xs, ys), (vec![0, 0, 1, 1], vec![0, 0, 1, 1]));

    let out = orthodraw(&["draw", path(&input)]);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 4);
}

#[test]
fn draw_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let fx = dir.path().join("fx");
    assert!(orthodraw(&["fixtures", "--out", path(&fx)])
        .status
        .success());
    let out_dir = dir.path().join("drawn");
    let input = fx.join("k4.edges");
    let out = orthodraw(&["draw", path(&input), "--out", path(&out_dir)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for f in ["drawing.svg", "drawing.json", "metrics.json", "run.log"] {
        assert!(out_dir.join(f).exists(), "{f}");
    }
    let log = fs::read_to_string(out_dir.join("run.log")).unwrap();
    assert!(log.lines().last() == Some("SAT"));
    assert!(log
        .lines()
        .any(|l| l.starts_with("UNSAT split e=") || l.starts_with("ADD_CYCLE len=")));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.txt");
    fs::write(&input, "3 2\n0 1\n1 x\n").unwrap();
    let out = orthodraw(&["draw", path(&input)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = orthodraw(&["draw", path(&dir.path().join("missing.txt"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn iteration_cap_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("k3.txt");
    fs::write(&input, "3 3\n0 1\n1 2\n2 0\n").unwrap();
    let out = orthodraw(&["draw", path(&input), "--max-subdivisions", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gen_needs_a_seed_and_is_deterministic() {
    let out = orthodraw(&["gen", "--n", "20", "--density", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    let a = orthodraw(&["gen", "--n", "20", "--density", "1.5", "--seed", "9"]);
    let b = Command::new(env!("CARGO_BIN_EXE_orthodraw"))
        .args(["gen", "--n", "20", "--density", "1.5"])
        .env("ORTHODRAW_SEED", "9")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().starts_with("20 30\n"));
}

#[test]
fn bench_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out_dir = dir.path().join(name);
        let out = orthodraw(&[
            "bench",
            "--n",
            "10..12",
            "--density",
            "1.25..1.5",
            "--density-steps",
            "5",
            "--seed",
            "1",
            "--omit-timing",
            "--out",
            path(&out_dir),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        out_dir
    };
    let (a, b) = (run("a"), run("b"));
    for f in ["internals.csv", "metrics.csv"] {
        assert_eq!(
            fs::read(a.join(f)).unwrap(),
            fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
    let internals = fs::read_to_string(a.join("internals.csv")).unwrap();
    assert_eq!(internals.lines().count(), 16);
    assert!(a.join("cdf_dummies.svg").exists());
}

#[test]
fn metrics_of_gml_and_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let gml = dir.path().join("t.gml");
    fs::write(
        &gml,
        "graph [\n node [ id 1 graphics [ x 0 y 0 ] ]\n node [ id 2 graphics [ x 31 y 2 ] ]\n \
         node [ id 3 graphics [ x 30 y 30 ] ]\n edge [ source 1 target 2 ]\n edge [ source 2 target 3 ]\n]\n",
    )
    .unwrap();
    let out = orthodraw(&["metrics", path(&gml)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("t,0,0,0,0,4,2,1,0,0"));

    let csv = dir.path().join("m.csv");
    fs::write(&csv, &text).unwrap();
    let out_dir = dir.path().join("cmp");
    let out = orthodraw(&[
        "metrics",
        "--compare",
        path(&csv),
        path(&csv),
        "--out",
        path(&out_dir),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let table: serde_json::Value =
        serde_json::from_slice(&fs::read(out_dir.join("comparison.json")).unwrap()).unwrap();
    assert_eq!(table["metrics"][0]["ties"], 100.0);
    assert!(out_dir.join("scatter_bends.svg").exists());
}
