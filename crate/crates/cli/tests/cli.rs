use std::path::PathBuf;
use std::process::{Command, Output};

use abcu::{Provenance, SignificanceCurve, TailPolicy};
use serde_json::Value;

fn abcu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abcu"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.display().to_string()
}

fn json_out(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "status {:?}: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn pvalue_on_the_common_mean_samples() {
    let v = json_out(&abcu(&[
        "pvalue",
        &data("common_mean_objective.json"),
        "--null",
        "-1",
    ]));
    assert!((v["p_value"].as_f64().unwrap() - 0.104).abs() < 0.005);
    assert_eq!(v["null"].as_f64(), Some(-1.0));
    assert_eq!(v["alternative"], "greater");

    let less = json_out(&abcu(&[
        "pvalue",
        &data("common_mean_objective.json"),
        "--null",
        "-1",
        "--alternative",
        "less",
    ]));
    assert_eq!(
        less["p_value"].as_f64().unwrap() + v["p_value"].as_f64().unwrap(),
        1.0
    );
}

#[test]
fn combine_writes_a_round_trippable_dump() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("combined.csv");
    let csv_s = csv.display().to_string();
    let v = json_out(&abcu(&[
        "combine",
        &data("common_mean_objective.json"),
        "--output",
        &csv_s,
        "--null",
        "-1",
    ]));
    assert_eq!(v["source_count"], 2);
    assert!((v["p_value"].as_f64().unwrap() - 0.104).abs() < 0.005);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("theta,cdf\n"));
    let curve = SignificanceCurve::read_csv(
        text.as_bytes(),
        TailPolicy::Flat,
        Provenance::combined("dump"),
    )
    .unwrap();
    assert_eq!(curve.to_csv_string(), text);
}

#[test]
fn tree_changes_the_answer() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv").display().to_string();
    let flat = json_out(&abcu(&[
        "combine",
        &data("common_mean.json"),
        "-o",
        &out,
        "--null",
        "-1",
    ]));
    let by_id = json_out(&abcu(&[
        "combine",
        &data("common_mean.json"),
        "-o",
        &out,
        "--null",
        "-1",
        "--tree",
        "((y1,y2),(agent1,agent2))",
    ]));
    let by_index = json_out(&abcu(&[
        "pvalue",
        &data("common_mean.json"),
        "--null",
        "-1",
        "--tree",
        "((0,1),(2,3))",
    ]));
    let (f, t) = (
        flat["p_value"].as_f64().unwrap(),
        by_id["p_value"].as_f64().unwrap(),
    );
    assert!((f - t).abs() > 0.001);
    assert_eq!(by_index["p_value"].as_f64().unwrap(), t);
}

#[test]
fn intervals() {
    let file = data("torricelli.json");
    let c = json_out(&abcu(&["ci", &file, "--level", "0.95"]));
    let (lo, hi) = (c["lower"].as_f64().unwrap(), c["upper"].as_f64().unwrap());
    assert!(lo < 760.0 && 760.0 < hi);
    let l = json_out(&abcu(&["ci", &file, "--level", "0.95", "--tails", "lower"]));
    assert!(l["lower"].is_null() && l["upper"].as_f64().unwrap() < hi);
    let u = json_out(&abcu(&["ci", &file, "--level", "0.95", "--tails", "upper"]));
    assert!(u["upper"].is_null() && u["lower"].as_f64().unwrap() > lo);
}

#[test]
fn examples_report_and_dump() {
    let v = json_out(&abcu(&["example", "common-mean"]));
    let r = &v["report"];
    assert_eq!(r["objective"]["agrees"], true);
    assert!(r["flat_minus_tree"].as_f64().unwrap().abs() > 0.001);
    for key in ["all_sources", "tree"] {
        assert!(r[key]["computed"].is_f64() && r[key]["reference"].is_f64());
    }

    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().display().to_string();
    let v = json_out(&abcu(&["example", "torricelli", "--dump-dir", &dump]));
    assert_eq!(v["report"]["product_mode"]["agrees"], true);
    assert!((v["report"]["product_mode"]["computed"].as_f64().unwrap() - 759.968).abs() < 0.001);
    let dumps = v["dumps"].as_array().unwrap();
    assert_eq!(dumps.len(), 3);
    for d in dumps {
        let text = std::fs::read_to_string(d.as_str().unwrap()).unwrap();
        let c = SignificanceCurve::read_csv(
            text.as_bytes(),
            TailPolicy::Flat,
            Provenance::combined("x"),
        )
        .unwrap();
        assert_eq!(c.to_csv_string(), text);
    }
}

#[test]
fn game_is_deterministic_and_echoes_the_seed() {
    let args = |w: &'static str| {
        vec![
            "game",
            "--estimator",
            "shift:0.5",
            "--theta",
            "1",
            "--gamma",
            "1",
            "--n",
            "3",
            "--reps",
            "2000",
            "--seed",
            "42",
            "--workers",
            w,
        ]
    };
    let one = abcu(&args("1"));
    let three = abcu(&args("3"));
    assert!(one.status.success());
    assert_eq!(one.stdout, three.stdout);
    let v = json_out(&one);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["records"].as_array().unwrap().len(), 16);
}

#[test]
fn validation_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = write_temp(
        &dir,
        "bad.json",
        "{\n  \"sources\": [\n    { \"kind\": \"normal_sample\", \"data\": [1.0, }\n  ]\n}",
    );
    let out = abcu(&["pvalue", &bad_json, "--null", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let bad_points = write_temp(
        &dir,
        "points.json",
        r#"{ "sources": [ { "kind": "elicited_pvalues", "points": [[0, 0.6], [1, 0.5]] } ] }"#,
    );
    let out = abcu(&["pvalue", &bad_points, "--null", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let bad_sd = write_temp(
        &dir,
        "sd.json",
        r#"{ "sources": [ { "id": "a", "kind": "subjective_normal", "mean": 0, "sd": 0 } ] }"#,
    );
    let out = abcu(&["pvalue", &bad_sd, "--null", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sources[0] (a)"));

    let file = data("common_mean.json");
    for args in [
        vec![
            "pvalue",
            file.as_str(),
            "--null",
            "0",
            "--alternative",
            "sideways",
        ],
        vec!["pvalue", file.as_str(), "--null", "0", "--tree", "((0,1)"],
        vec!["pvalue", file.as_str(), "--null", "0", "--tree", "(0,7)"],
        vec!["ci", file.as_str(), "--level", "1.5"],
        vec!["pvalue", "/nonexistent/file.json", "--null", "0"],
        vec![
            "game", "--theta", "1", "--gamma", "1", "--n", "3", "--reps", "10",
        ],
        vec!["game", "--theta", "1", "--gamma", "-1", "--n", "3"],
        vec![
            "game",
            "--theta",
            "1",
            "--gamma",
            "1",
            "--n",
            "3",
            "--estimator",
            "wobble",
        ],
        vec![
            "game",
            "--theta",
            "1",
            "--gamma",
            "1",
            "--n",
            "3",
            "--workers",
            "0",
        ],
        vec!["example", "nowhere"],
    ] {
        let out = abcu(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unattainable_quantile_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_temp(
        &dir,
        "short.json",
        r#"{ "sources": [ { "kind": "elicited_pvalues", "tail": "none",
             "points": [[-3, 0.0005], [0, 0.5], [3, 0.9995]] } ] }"#,
    );
    let out = abcu(&["ci", &file, "--level", "0.9999"]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let ok = abcu(&["ci", &file, "--level", "0.9"]);
    assert!(ok.status.success());
}
