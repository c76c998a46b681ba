use std::path::Path;
use std::process::Command;

use hjpoly::io::{HypergraphFile, RealizationFile};
use hjpoly_cli::{
    cmd_build, cmd_certify, cmd_export, cmd_hj, cmd_report, cmd_solve, BuildOptions, CliError, ExportFormat,
    ReportOptions, SolveMode, Strategy,
};
use serde_json::Value;

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn hj_files() {
    let dir = tempfile::tempdir().unwrap();
    for (d, n, v, e) in [(3, 2, 9, 7), (2, 1, 2, 1), (5, 2, 25, 11)] {
        let out = dir.path().join(format!("hj{d}{n}.json"));
        cmd_hj(d, n, &out).unwrap();
        let h = HypergraphFile::from_json(&std::fs::read_to_string(&out).unwrap())
            .unwrap()
            .hypergraph()
            .unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (v, e));
    }
    assert!(matches!(cmd_hj(1, 2, &dir.path().join("x.json")), Err(CliError::Usage(_))));
}

#[test]
fn solve_files() {
    let dir = tempfile::tempdir().unwrap();
    let h32 = dir.path().join("h32.json");
    cmd_hj(3, 2, &h32).unwrap();
    let out = dir.path().join("s.json");
    cmd_solve(&h32, SolveMode::Tau, Strategy::Exact, &out, None).unwrap();
    let s = json(&out);
    assert_eq!(s["tau"], 3);
    assert_eq!(s["witness"].as_array().unwrap().len(), 3);
    assert_eq!(s["exact"], true);

    let h52 = dir.path().join("h52.json");
    cmd_hj(5, 2, &h52).unwrap();
    let a = cmd_solve(&h52, SolveMode::Tau, Strategy::Exact, &out, None).unwrap();
    let b = cmd_solve(&h52, SolveMode::Tau, Strategy::Bruteforce, &out, None).unwrap();
    let (a, b): (Value, Value) = (serde_json::from_str(&a).unwrap(), serde_json::from_str(&b).unwrap());
    assert_eq!(a["tau"], 5);
    assert_eq!(b["tau"], 5);

    let edgeless = dir.path().join("e.json");
    std::fs::write(&edgeless, r#"{"vertex_count":4,"edges":[]}"#).unwrap();
    cmd_solve(&edgeless, SolveMode::Tau, Strategy::Exact, &out, None).unwrap();
    assert_eq!(json(&out)["tau"], 0);

    cmd_solve(&h32, SolveMode::Chi, Strategy::Exact, &out, None).unwrap();
    assert_eq!(json(&out)["chi"], 2);

    let single = dir.path().join("one.json");
    std::fs::write(&single, r#"{"vertex_count":2,"edges":[[1]]}"#).unwrap();
    assert!(cmd_solve(&single, SolveMode::Chi, Strategy::Exact, &out, None).is_err());
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "not json").unwrap();
    assert!(matches!(
        cmd_solve(&broken, SolveMode::Tau, Strategy::Exact, &out, None),
        Err(CliError::Parse(_))
    ));
}

#[test]
fn build_certify_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let built = cmd_build(5, 2, 1, &BuildOptions::default(), &out).unwrap();
    assert_eq!(built.realization.points.len(), 25);
    assert!(cmd_certify(&out).unwrap().starts_with("11/11 line certificates"));

    let copy = dir.path().join("copy.json");
    cmd_export(&out, ExportFormat::Json, &copy, 0).unwrap();
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&copy).unwrap());

    let off = dir.path().join("r.off");
    cmd_export(&out, ExportFormat::Off, &off, 8).unwrap();
    let text = std::fs::read_to_string(&off).unwrap();
    assert!(text.starts_with("# LOSSY"));
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[..3], ["nOFF", "5", "25 11 0"]);
    for row in &body[3..28] {
        let cols: Vec<f64> = row.split(' ').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols.len(), 5);
    }
    assert!("xyz".parse::<ExportFormat>().is_err());

    // a tampered coordinate is caught and reported as a certified failure
    let mut file = RealizationFile::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let coords = file.points.get_mut("11").unwrap();
    coords[4] = format!("{}1", coords[4].split('/').next().unwrap());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, file.to_json()).unwrap();
    assert_eq!(cmd_certify(&bad).unwrap_err().exit_code(), 1);

    let six = dir.path().join("six.json");
    let built = cmd_build(6, 2, 1, &BuildOptions::default(), &six).unwrap();
    assert_eq!(built.realization.points.len(), 36);
    assert!(built.realization.points.iter().all(|p| p.len() == 6));
    assert_eq!(
        cmd_build(5, 1, 1, &BuildOptions::default(), &dir.path().join("x.json"))
            .unwrap_err()
            .exit_code(),
        2
    );
}

#[test]
fn report_contents() {
    let r = cmd_report(5, 2, 1, &ReportOptions::default()).unwrap();
    let text = r.summary();
    assert!(text.contains("ρ(HJ(5,2)) = 1/5"), "{text}");
    assert!(text.contains("11/11 lines certified as facets"), "{text}");
    assert!(r.all_passed());
    assert_eq!(r.coloring_check.as_ref().unwrap().chi, 2);
    assert!(matches!(
        cmd_report(3, 2, 1, &ReportOptions::default()),
        Err(CliError::Usage(_))
    ));
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hjpoly")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn binary_exit_codes_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.json");
    let hs = h.to_str().unwrap();
    let (code, _, err) = run(&["hj", "-d", "3", "-n", "2", "--out", hs]);
    assert_eq!(code, 0);
    let manifest: Value = serde_json::from_str(err.lines().last().unwrap()).unwrap();
    assert_eq!(manifest["command"], "hj");
    assert_eq!(manifest["outcome"], "9 vertices, 7 edges");

    let s = dir.path().join("s.json");
    let (code, _, _) = run(&["solve", hs, "--mode", "tau", "--strategy", "bruteforce", "--out", s.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["solve", hs, "--mode", "nope", "--out", s.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["bogus"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["report", "-d", "3", "-n", "2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["build", "-d", "5", "-n", "2", "--eps", "1/0", "--out", s.to_str().unwrap()]);
    assert_eq!(code, 2);

    let r = dir.path().join("r.json");
    let (code, _, _) = run(&["build", "-d", "5", "-n", "2", "--seed", "1", "--out", r.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["certify", r.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "11/11 line certificates and 25/25 vertex certificates verified\n"));
    let (code, _, _) = run(&["export", r.to_str().unwrap(), "--format", "ply", "--out", s.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["certify", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);

    // a huge ε breaks the surd stage: certified failure
    let (code, _, err) = run(&["build", "-d", "5", "-n", "2", "--eps", "1000", "--out", s.to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for t in ["1", "3"] {
        let r = dir.path().join(format!("r{t}.json"));
        let (code, _, _) = run(&["--threads", t, "report", "-d", "5", "-n", "2", "--out", r.to_str().unwrap()]);
        assert_eq!(code, 0);
        outputs.push(std::fs::read(&r).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}
