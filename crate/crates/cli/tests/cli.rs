use std::path::Path;
use std::process::{Command, Output};

fn walsh_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walsh-lab"))
        .args(args)
        .env_remove("WALSH_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV produced by a sweep, after checking the seed line and header.
fn rows(text: &str, seed: u64, header: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(format!("# seed={seed}").as_str()));
    assert_eq!(lines.next(), Some(header));
    let body: String = lines.map(|l| format!("{l}\n")).collect();
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(body.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn verify_core_passes_and_names_the_xor_rule() {
    let out = walsh_lab(&["verify", "core"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("XOR product rule: pass"));
}

#[test]
fn verify_metrics_reports_walsh_distance() {
    let out = walsh_lab(&["verify", "metrics", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# seed=5\n"));
    assert!(text.contains("walsh_distance = 2^(1-1/p) at p in {1,1.5,2,3,10,inf}: pass"));
}

#[test]
fn verify_spectral_reports_eigen_and_resolvent_checks() {
    let out = walsh_lab(&["verify", "spectral"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("eigen-identity: pass"));
    assert!(text.contains("resolvent-formula"));
}

#[test]
fn verify_unknown_suite_is_a_config_error() {
    assert_eq!(walsh_lab(&["verify", "everything"]).status.code(), Some(2));
}

#[test]
fn tail_decay_matches_reciprocal_table() {
    let out = walsh_lab(&["sweep", "tail-decay", "--symbol", "reciprocal", "--m", "6", "--cutoffs", "1,3,7,15,31"]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&stdout(&out), 42, "family,p_in,p_out,m,N,estimate,analytic_sup,verdict");
    assert_eq!(table.len(), 5);
    for (row, n) in table.iter().zip([1.0, 3.0, 7.0, 15.0, 31.0]) {
        let estimate: f64 = row[5].parse().unwrap();
        assert!((estimate - 1.0 / (n + 2.0)).abs() < 1e-12, "{row:?}");
        assert_eq!(row[7], "compact");
    }
}

#[test]
fn opnorm_sweep_schema() {
    let out = walsh_lab(&["sweep", "opnorm", "--symbol", r#"{"family":"geometric","r":[0.5,0.0]}"#, "--m", "3,5"]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&stdout(&out), 42, "family,m,p_in,p_out,N,estimate,kind,analytic_sup,iterations,seed");
    assert_eq!(table.len(), 2);
    assert_eq!(table[1][..5], ["geometric", "5", "2", "2", "32"]);
    assert_eq!(table[1][5], "1");
    assert_eq!(table[1][6], "exact");
}

#[test]
fn spectrum_grid_for_alternating() {
    let out = walsh_lab(&["sweep", "spectrum-grid", "--symbol", "alternating", "--grid=-2,2,-2,2,41", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&stdout(&out), 42, "re,im,p,m,verdict,delta,compose_residual,resolvent_bound");
    assert_eq!(table.len(), 41 * 41);
    for row in &table {
        let (re, im): (f64, f64) = (row[0].parse().unwrap(), row[1].parse().unwrap());
        let near = [-1.0, 1.0].iter().any(|&x| (re - x).hypot(im) <= 1e-9);
        assert_eq!(row[4], if near { "in_spectrum" } else { "in_resolvent" }, "{row:?}");
    }
    assert_eq!(table.iter().filter(|r| r[4] == "in_spectrum").count(), 2);
}

#[test]
fn spectrum_grid_json_report() {
    let out = walsh_lab(&["sweep", "spectrum-grid", "--symbol", "reciprocal", "--grid=0,1,0,0,3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["seed"], 42);
    let points = report["points"].as_array().unwrap();
    assert_eq!(points.len(), 3);
    assert_eq!(points[0]["lambda"], serde_json::json!([0.0, 0.0]));
    assert_eq!(points[0]["membership"]["verdict"], "in_spectrum");
    assert_eq!(points[2]["membership"]["verdict"], "in_spectrum");
}

#[test]
fn probe_sweep_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |path: &Path| {
        vec![
            "sweep".to_string(),
            "probe-constants".into(),
            "--inequality".into(),
            "hy".into(),
            "--p".into(),
            "1.5".into(),
            "--m".into(),
            "6".into(),
            "--trials".into(),
            "10000".into(),
            "--seed".into(),
            "42".into(),
            "--out".into(),
            path.display().to_string(),
        ]
    };
    let run = |extra: &[&str], path: &Path| {
        let mut all: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        all.extend(args(path));
        let refs: Vec<&str> = all.iter().map(String::as_str).collect();
        walsh_lab(&refs)
    };
    assert_eq!(run(&[], &a).status.code(), Some(0));
    assert_eq!(run(&["--threads", "2"], &b).status.code(), Some(0));
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let table = rows(&String::from_utf8(x).unwrap(), 42, "inequality,p,m,trials,seed,best_ratio,witness_hash");
    assert_eq!(table.len(), 1);
    let best: f64 = table[0][5].parse().unwrap();
    assert!(best <= 1.0 + 1e-9);
    assert_eq!(table[0][6].len(), 64);
    // only the two outputs remain: temp files were renamed away
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn threads_env_fallback_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_walsh-lab"))
        .args(["sweep", "opnorm", "--symbol", "reciprocal", "--m", "4"])
        .env("WALSH_LAB_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_violations_exit_2_and_leave_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.csv");
    let target_arg = target.display().to_string();
    let cases: [&[&str]; 6] = [
        &["sweep", "opnorm", "--symbol", r#"{"family":"geometric","r":[2,0]}"#],
        &["sweep", "opnorm", "--symbol", r#"{"family":"reciprocal","extra":1}"#],
        &["sweep", "opnorm"],
        &["sweep", "tail-decay", "--symbol", "reciprocal", "--cutoffs", "3,1"],
        &["sweep", "opnorm", "--symbol", "reciprocal", "--m", "25"],
        &["sweep", "probe-constants", "--p", "2.5"],
    ];
    for case in cases {
        let mut args = case.to_vec();
        args.extend(["--out", target_arg.as_str()]);
        let out = walsh_lab(&args);
        assert_eq!(out.status.code(), Some(2), "{case:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn symbol_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sym.json");
    std::fs::write(&path, r#"{"family":"explicit","prefix":[[0,0],[3,0]],"tail":{"kind":"zero"}}"#).unwrap();
    let out = walsh_lab(&["sweep", "opnorm", "--symbol", path.to_str().unwrap(), "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&stdout(&out), 42, "family,m,p_in,p_out,N,estimate,kind,analytic_sup,iterations,seed");
    assert_eq!(table[0][5], "3");
}

#[test]
fn bench_rejects_zero_reps_and_large_sizes() {
    assert_eq!(walsh_lab(&["bench", "--reps", "0"]).status.code(), Some(2));
    assert_eq!(walsh_lab(&["bench", "--n-max-log2", "25"]).status.code(), Some(2));
}

#[test]
fn bench_reports_each_size() {
    let out = walsh_lab(&["bench", "--n-min-log2", "4", "--n-max-log2", "8", "--reps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,N,fwht_median_s,naive_median_s,speedup,ratio_vs_previous"));
    assert_eq!(lines.count(), 5);
}
