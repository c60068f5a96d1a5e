use std::fs;
use std::path::Path;
use std::process::Command;

use netcoord::graph::{build_k_regular, write_edge_list};
use netcoord_cli::config::BetaGrid;
use netcoord_cli::output::{sidecar_path, Metadata};
use netcoord_cli::{parse_config, run, Experiment};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_netcoord"))
}

fn out_arg(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn flags_parse_into_config() {
    let c = parse_config(["netcoord", "--experiment", "beta-min", "--n", "14", "--theta", "0.3", "--delta", "0.1"])
        .unwrap();
    assert_eq!(c.experiment, Experiment::BetaMin);
    assert_eq!((c.n, c.theta, c.delta), (14, 0.3, 0.1));
}

#[test]
fn malformed_number_is_a_single_line_error() {
    let out = bin().args(["--experiment", "beta-min", "--theta", "x"]).output().unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.trim_end().lines().count(), 1, "{stderr}");
    assert!(stderr.contains("theta"));
}

#[test]
fn unknown_experiment_is_rejected() {
    assert!(parse_config(["netcoord", "--experiment", "fig9"]).is_err());
    let out = bin().args(["--experiment", "fig9"]).output().unwrap();
    assert!(!out.status.success());
    assert_eq!(String::from_utf8(out.stderr).unwrap().trim_end().lines().count(), 1);
}

#[test]
fn flags_override_file_values() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("c.json");
    fs::write(&json, r#"{"experiment": "beta-min", "n": 12, "theta": 0.2, "delta": 0.05}"#).unwrap();
    let c = parse_config(["netcoord", "--config", json.to_str().unwrap(), "--theta", "0.4"]).unwrap();
    assert_eq!((c.n, c.theta, c.delta), (12, 0.4, 0.05));

    let toml = dir.path().join("c.toml");
    fs::write(&toml, "experiment = \"monotonicity-beta-k\"\nk-list = [4, 6]\nbeta-points = 5\n").unwrap();
    let c = parse_config(["netcoord", "--config", toml.to_str().unwrap(), "--beta-end", "2"]).unwrap();
    assert_eq!(c.k_list, vec![4, 6]);
    assert_eq!(c.beta_grid, BetaGrid { start: 0.0, end: 2.0, points: 5 });
}

#[test]
fn unknown_file_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("c.json");
    fs::write(&json, r#"{"experiment": "beta-min", "temperature": 3}"#).unwrap();
    let err = parse_config(["netcoord", "--config", json.to_str().unwrap()]).unwrap_err();
    assert!(format!("{err:#}").contains("temperature"));
}

#[test]
fn enumeration_cap_is_checked_up_front() {
    let err = parse_config(["netcoord", "--experiment", "monotonicity-beta-k", "--n", "40", "--k-list", "4"])
        .unwrap_err();
    assert!(err.to_string().contains("cap"));
    let err = parse_config(["netcoord", "--experiment", "poi-scatter", "--n-list", "10,28"]).unwrap_err();
    assert!(err.to_string().contains("cap"));
}

#[test]
fn monotonicity_series_are_ordered() {
    let c = parse_config(["netcoord", "--experiment", "monotonicity-beta-k"]).unwrap();
    let out = run(&c).unwrap();
    let ks = [3, 5, 7, 9, 11, 13];
    let series: Vec<Vec<f64>> =
        ks.iter().map(|k| out.series(&format!("K={k}")).iter().map(|r| r.y).collect()).collect();
    assert_eq!(out.rows.len(), 6 * 61);
    for s in &series {
        assert_eq!(s.len(), 61);
        assert!(s.windows(2).all(|w| w[1] >= w[0]));
    }
    for t in 1..61 {
        for pair in series.windows(2) {
            assert!(pair[1][t] > pair[0][t]);
        }
    }
}

#[test]
fn beta_min_bound_dominates_exact() {
    let c = parse_config(["netcoord", "--experiment", "beta-min", "--n", "14", "--theta", "0.3", "--delta", "0.1"])
        .unwrap();
    let out = run(&c).unwrap();
    let exact = out.series("exact");
    let bound = out.series("bound");
    assert_eq!(exact.len(), 11);
    for (e, b) in exact.iter().zip(&bound) {
        assert_eq!(e.x, b.x);
        assert!(e.y <= b.y);
    }
}

#[test]
fn identical_config_gives_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let status = bin()
            .args(["--experiment", "edge-augmentation", "--seed", "7", "--output", &out_arg(dir.path(), name)])
            .output()
            .unwrap()
            .status;
        assert!(status.success());
    }
    let a = fs::read(dir.path().join("a.csv")).unwrap();
    let b = fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().starts_with("x,y,series\n"));
}

#[test]
fn sidecar_round_trips_config() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let c = parse_config(["netcoord", "--experiment", "clt-histogram", "--n-list", "64", "--samples", "2000"])
        .unwrap();
    let c = netcoord_cli::ExperimentConfig { output: csv.clone(), ..c };
    let out = run(&c).unwrap();
    out.write(&csv).unwrap();
    let meta: Metadata = serde_json::from_str(&fs::read_to_string(sidecar_path(&csv)).unwrap()).unwrap();
    assert_eq!(meta.config, c);
    assert_eq!(meta.seeds, vec![c.seed]);
    assert!(meta.summary.contains_key("ks n=64"));
    // histogram bins plus the reference density
    assert_eq!(out.rows.len(), 2 * c.bins);
}

#[test]
fn output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["--experiment", "beta-min", "--n", "8", "--k-list", "3,4"])
        .env(netcoord_cli::config::OUTPUT_DIR_ENV, dir.path())
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(dir.path().join("beta-min.csv").exists());
    assert!(dir.path().join("beta-min.json").exists());
}

#[test]
fn graph_file_replaces_generated_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let mut buf = Vec::new();
    write_edge_list(&build_k_regular(10, 4, Some(2)).unwrap(), &mut buf).unwrap();
    fs::write(&path, buf).unwrap();
    let c = parse_config([
        "netcoord",
        "--experiment",
        "monotonicity-beta-k",
        "--graph-file",
        path.to_str().unwrap(),
        "--beta-points",
        "11",
    ])
    .unwrap();
    let out = run(&c).unwrap();
    assert_eq!(out.series("file").len(), 11);
    assert_eq!(out.rows.len(), 11);

    let err = parse_config(["netcoord", "--experiment", "poi-scatter", "--graph-file", "x"]).unwrap_err();
    assert!(err.to_string().contains("graph-file"));
}

#[test]
fn verify_suite_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["--experiment", "verify-suite", "--output", &out_arg(dir.path(), "v.csv")])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{stdout}");
    let n = netcoord_cli::experiments::check_names().len();
    assert!(stdout.contains(&format!("verify-suite: {n} passed, 0 failed")), "{stdout}");
}

#[test]
fn help_exits_zero() {
    let out = bin().arg("--help").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("--experiment"));
}
