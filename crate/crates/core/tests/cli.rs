use std::path::Path;
use std::process::Command;

fn sdc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sdc"))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn cluster_chain_writes_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("assign.tsv");
    let cuts = dir.path().join("cuts.tsv");
    let status = sdc()
        .args(["cluster", "--data", &fixture("chain.csv"), "--metric", "euclidean"])
        .args(["--labels", &fixture("chain_labels.csv"), "--no-timing"])
        .arg("--out")
        .arg(&out)
        .arg("--cut-log")
        .arg(&cuts)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let stdout = String::from_utf8(status.stdout).unwrap();
    assert!(stdout.contains("clusters=2"), "{stdout}");

    let a = sdc::io::read_assignment(&out).unwrap();
    assert_eq!(a.category, ["A", "A", "B", "B", "B"]);
    assert_eq!(a.n_clusters, 2);
    let log = std::fs::read_to_string(&cuts).unwrap();
    assert_eq!(log.lines().filter(|l| l.contains("\tcut\t")).count(), 1, "{log}");
}

#[test]
fn missing_data_file_fails() {
    let out = sdc()
        .args(["cluster", "--data", "/nonexistent/points.csv", "--metric", "euclidean"])
        .args(["--labels", &fixture("chain_labels.csv")])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/points.csv"));
}

#[test]
fn out_of_range_label_fails() {
    let dir = tempfile::tempdir().unwrap();
    let labels = dir.path().join("labels.csv");
    std::fs::write(&labels, "0,A\n9,B\n").unwrap();
    let out = sdc()
        .args(["cluster", "--data", &fixture("chain.csv"), "--metric", "euclidean"])
        .arg("--labels")
        .arg(&labels)
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn wrong_metric_for_numeric_data_fails() {
    let out = sdc()
        .args(["cluster", "--data", &fixture("chain.csv"), "--metric", "mismatch", "--format", "numeric"])
        .args(["--labels", &fixture("chain_labels.csv")])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn sweep_prints_report() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    let mut text = String::new();
    for i in 0..20 {
        let (x, t) = if i < 10 { (i as f64, "L") } else { (100.0 + i as f64, "R") };
        text.push_str(&format!("{x},{t}\n"));
    }
    std::fs::write(&data, text).unwrap();
    let out = sdc()
        .args(["sweep", "--metric", "euclidean", "--truth-col", "1", "--budgets", "1,2", "--trials", "4"])
        .args(["--seed", "5", "--no-timing", "--data"])
        .arg(&data)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = sdc::SweepReport::from_tsv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report.levels.len(), 2);
    assert_eq!(report.seed, 5);
    assert!(report.levels.iter().all(|l| l.mean_error == 0.0 && l.mean_clusters == 2.0));
}

#[test]
fn selfcheck_passes() {
    let out = sdc().args(["selfcheck", "--seed", "11"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("[PASS]")).count(), 5, "{stdout}");
}
