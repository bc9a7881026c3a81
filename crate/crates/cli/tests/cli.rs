use std::process::{Command, Output};

use serde_json::Value;

fn stbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stbc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write_spec(
    dir: &tempfile::TempDir,
    d: i64,
    p: [i64; 2],
    q: [i64; 2],
    gamma: [i64; 2],
) -> String {
    let path = dir.path().join(format!("spec{d}.json"));
    let text = serde_json::json!({"d": d, "p": p, "q": q, "gamma": gamma}).to_string();
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn table_csv_flags_first_row() {
    let out = stbc(&["table"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("field,extension,polynomial,algebra,rho"));
    assert!(lines[1].contains("true"));
    for (line, rho) in lines[2..]
        .iter()
        .zip(["0.0278", "0.0847", "0.0204", "0.0147"])
    {
        assert!(line.contains(rho), "{line}");
    }
}

#[test]
fn table_json() {
    let out = stbc(&["table", "--format", "json"]);
    let v = json(&out);
    let rows = v.as_array().unwrap();
    let ds: Vec<i64> = rows.iter().map(|r| r["d"].as_i64().unwrap()).collect();
    assert_eq!(ds, [1, 2, 3, 7, 11]);
    assert_eq!(rows[0]["flagged"], true);
    assert_eq!(rows[4]["rho"], "16/1089");
}

#[test]
fn searches() {
    for (d, target, poly) in [
        ("2", "3", "x^2 - x + 1"),
        ("7", "4", "x^2 + 1"),
        ("11", "3", "x^2 - x + 1"),
    ] {
        let out = stbc(&["search", "--d", d, "--target", target]);
        assert_eq!(out.status.code(), Some(0), "d={d}");
        let v = json(&out);
        assert_eq!(v["certified"], true);
        assert_eq!(v["best"]["polynomial"], poly);
        assert_eq!(v["best"]["gamma"], serde_json::json!([-1, 0]));
    }
    let v = json(&stbc(&[
        "search",
        "--d",
        "11",
        "--target",
        "3",
        "--open-disk",
    ]));
    assert_eq!(v["survivors"].as_array().unwrap().len(), 0);
}

#[test]
fn uncertified_search_exits_2() {
    // With no search radius, γ = -√-2 on x^2 + √-2x - 1 is not resolved.
    let out = stbc(&["search", "--d", "2", "--target", "3", "--effort", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["certified"], false);
}

#[test]
fn norm_check_and_code() {
    let out = stbc(&[
        "norm-check",
        "--d",
        "2",
        "--p",
        "-1,0",
        "--q",
        "1,0",
        "--gamma",
        "-1,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"]["verdict"], "NotNorm");
    assert_eq!(v["status"]["obstruction"]["prime"], 3);

    let out = stbc(&[
        "code", "--d", "7", "--p", "0,0", "--q", "1,0", "--gamma", "-1,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["rho"], "1/49");

    let out = stbc(&[
        "code", "--d", "3", "--p", "-1,-1", "--q", "-1,2", "--gamma", "0,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["verified"], false);

    let out = stbc(&[
        "code", "--d", "2", "--p", "1,0", "--q", "0,0", "--gamma", "-1,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(stbc(&["bogus"]).status.code(), Some(1));
    assert_eq!(
        stbc(&["search", "--d", "4", "--target", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        stbc(&["search", "--d", "2", "--target", "x"]).status.code(),
        Some(1)
    );
    assert_eq!(stbc(&["--help"]).status.code(), Some(0));
}

#[test]
fn encode_identity() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, 7, [0, 0], [1, 0], [-1, 0]);
    let out = stbc(&["encode", "--spec", &spec, "--symbols", "1,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["matrix"],
        serde_json::json!([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]])
    );
    assert_eq!(v["det_exact"], serde_json::json!([1, 0]));
    let out = stbc(&[
        "encode",
        "--spec",
        &spec,
        "--symbols",
        "0,0,0,0,1,0,0,0",
        "--balanced",
    ]);
    let m = &json(&out)["matrix"];
    assert!((m[0][1][1].as_f64().unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(
        stbc(&["encode", "--spec", &spec, "--symbols", "1,2,3"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn simulate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, 2, [-1, 0], [1, 0], [-1, 0]);
    let args = [
        "simulate", "--spec", &spec, "--snr", "0,10,inf", "--trials", "50", "--seed", "5", "--cap",
        "6561",
    ];
    let a = stbc(&args);
    let b = stbc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("snr_db,cer,halfwidth,trials\n"));
    assert!(text.lines().last().unwrap().starts_with("inf,0,"));
    let over = stbc(&["simulate", "--spec", &spec, "--trials", "5"]);
    assert_eq!(over.status.code(), Some(1));
}
