use std::process::Command;

use serde_json::Value;
use systolic_atlas_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("systolic-atlas").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn census_counts() {
    let v = json(&["census", "--v", "4"]);
    assert_eq!(v["V"], 4);
    assert_eq!(v["count"], 5);
    let listed = json(&["census", "--v", "2", "--list"]);
    assert_eq!(listed["codes"].as_array().unwrap().len(), 2);
    let (code, out, _) = call(&["census", "--v", "6", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "V,genus,count,count_simple\n6,4,17,2\n");
}

#[test]
fn pentagon_values() {
    let v = json(&["pentagon"]);
    assert!((v["s"].as_f64().unwrap() - 4.39).abs() < 0.01);
    assert!((v["b"].as_f64().unwrap() - 7.77).abs() < 0.01);
    assert!(v["defining_residual"].as_f64().unwrap() < 1e-10);
    let (code, _, err) = call(&["pentagon", "--tolerance", "-1"]);
    assert_eq!(code, 2);
    assert!(err.contains("tolerance"));
}

#[test]
fn mdp_ball_within_bound() {
    let v = json(&["mdp-ball", "--g", "3", "--r", "2"]);
    assert_eq!(v["bound"], 81);
    assert!(v["size"].as_u64().unwrap() <= 81);
    assert_eq!(v["within_bound"], true);
    let theta = json(&[
        "mdp-ball",
        "--g",
        "2",
        "--r",
        "1",
        "--center",
        "2|0-1;0-1;0-1",
    ]);
    assert_eq!(theta["size"], 2);
    let (code, _, _) = call(&[
        "mdp-ball",
        "--g",
        "2",
        "--r",
        "1",
        "--center",
        "2|0-1;0-1;1-0",
    ]);
    assert_eq!(code, 2);
    let (code, _, err) = call(&["mdp-ball", "--g", "7", "--r", "1"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn hairy_torus_and_errors() {
    let v = json(&["hairy-torus", "--m", "4", "--n", "4"]);
    assert_eq!(v["genus"], 9);
    assert_eq!(v["bers_exceeds_2sqrt_g"], true);
    assert_eq!(v["filling_certificate"]["passes"], true);
    assert_eq!(call(&["hairy-torus", "--m", "3", "--n", "3"]).0, 2);
}

#[test]
fn limits_and_usage() {
    assert_eq!(call(&["census", "--v", "14"]).0, 3);
    assert_eq!(call(&["census", "--v", "3"]).0, 2);
    assert_eq!(call(&["census", "--v", "4", "--frobnicate"]).0, 2);
    assert_eq!(call(&["teleport"]).0, 2);
    assert_eq!(call(&[]).0, 2);
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        "census",
        "pentagon",
        "hairy-torus",
        "y-surface",
        "girth-lift",
        "mdp-ball",
        "sparsity",
        "report",
    ] {
        let (code, out, _) = call(&[sub, "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"), "{sub}");
        assert!(out.contains("--seed"), "{sub}");
    }
}

#[test]
fn graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let petersen = dir.path().join("petersen.cmg");
    std::fs::write(
        &petersen,
        systolic_atlas::multigraph::named::petersen().to_cmg(),
    )
    .unwrap();
    let p = petersen.to_str().unwrap();

    let (code, _, err) = call(&["y-surface", "--input", p]);
    assert_eq!(code, 2);
    assert!(err.contains("girth"));

    let lifted = json(&["girth-lift", "--input", p]);
    assert!(lifted["girth"].as_u64().unwrap() >= 6);
    let out = dir.path().join("lifted.cmg");
    std::fs::write(&out, lifted["cmg"].as_str().unwrap()).unwrap();
    let y = json(&["y-surface", "--input", out.to_str().unwrap()]);
    assert_eq!(y["certificate"]["passed"], true);
    let y2 = json(&["y-surface", "--input", p, "--lift"]);
    assert_eq!(y, y2);

    let (code, csv, _) = call(&["y-surface", "--input", p, "--lift", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(csv.lines().count(), 7);

    std::fs::write(dir.path().join("bad.cmg"), "cmg1\nv 2\ne 0 1\n").unwrap();
    assert_eq!(
        call(&[
            "girth-lift",
            "--input",
            dir.path().join("bad.cmg").to_str().unwrap()
        ])
        .0,
        2
    );
    assert_eq!(
        call(&[
            "girth-lift",
            "--input",
            dir.path().join("missing.cmg").to_str().unwrap()
        ])
        .0,
        2
    );
}

#[test]
fn sparsity_is_reproducible_and_thread_independent() {
    let args = [
        "sparsity", "--g-min", "2", "--g-max", "4", "--trials", "30", "--seed", "5",
    ];
    let a = call(&args);
    let b = call(&args);
    assert_eq!(a, b);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "2"]);
    assert_eq!(call(&threaded).1, a.1);
    let (_, csv, _) = call(&[&args[..], &["--format", "csv"]].concat());
    assert!(csv.starts_with("g,badset_fraction,median_distance,diameter\n"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn out_file_and_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.json");
    let cache = dir.path().join("cache");
    std::fs::create_dir(&cache).unwrap();
    let (code, stdout, _) = call(&[
        "census",
        "--v",
        "6",
        "--out",
        out.to_str().unwrap(),
        "--cache-dir",
        cache.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["count"], 17);
    assert!(cache.join("census_V6.txt").exists());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_systolic-atlas");
    let ok = Command::new(bin)
        .args(["census", "--v", "2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stderr.is_empty());
    let limit = Command::new(bin)
        .args(["census", "--v", "16"])
        .output()
        .unwrap();
    assert_eq!(limit.status.code(), Some(3));
    assert!(limit.stdout.is_empty());
}
