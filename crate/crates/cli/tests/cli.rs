use std::path::Path;
use std::process::{Command, Output};

fn flowpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowpat"))
        .args(args)
        .env_remove("FLOWPAT_KB")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn shipped_kb() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/default_kb.json").to_string()
}

#[test]
fn classify_prints_prediction_and_all_phi() {
    let o = flowpat(&[
        "classify",
        "--angle",
        "45",
        "--flow",
        "350",
        "--watercut",
        "0.5",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("predicted: W/O\n"), "{out}");
    for label in ["W/O", "ST", "DO/W&W", "DW/O&O/W"] {
        assert!(out.contains(&format!("phi[{label}")), "{out}");
    }
}

#[test]
fn classify_trace_lists_fired_rules() {
    let o = flowpat(&[
        "classify",
        "--angle",
        "60",
        "--flow",
        "300",
        "--watercut",
        "0.2",
        "--trace",
    ]);
    let out = stdout(&o);
    assert!(
        out.contains("R9   if angle is P and flow is H then W/O is IN"),
        "{out}"
    );
}

#[test]
fn out_of_range_input_is_clamped_with_a_warning() {
    let o = flowpat(&[
        "classify",
        "--angle",
        "200",
        "--flow",
        "300",
        "--watercut",
        "0.2",
    ]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("angle = 200"), "{}", stderr(&o));
    assert!(stderr(&o).contains("clamped to 90"));
}

#[test]
fn non_finite_input_is_a_data_error() {
    let o = flowpat(&[
        "classify",
        "--angle",
        "NaN",
        "--flow",
        "300",
        "--watercut",
        "0.2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(
        flowpat(&["classify", "--angle", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(flowpat(&["nonsense"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = flowpat(&["train-bp", "--epochs", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
    assert_eq!(flowpat(&["--help"]).status.code(), Some(0));
}

#[test]
fn validate_kb_accepts_shipped_file() {
    let o = flowpat(&["validate-kb", &shipped_kb()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "OK\n");
}

#[test]
fn validate_kb_reports_dangling_term() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(shipped_kb()).unwrap();
    let text = text.replacen("\"term\": \"VH\"", "\"term\": \"XL\"", 1);
    std::fs::write(&bad, text).unwrap();
    let o = flowpat(&["validate-kb", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("rules[2]"), "{out}");
    assert!(out.contains("`XL`") && out.contains("`flow`"), "{out}");
}

#[test]
fn malformed_kb_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("broken.json");
    std::fs::write(&bad, "{ \"version\": ").unwrap();
    let o = flowpat(&["validate-kb", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn kb_environment_variable_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let kb = dir.path().join("kb.json");
    // Point every rule at stratified flow.
    let text = std::fs::read_to_string(shipped_kb()).unwrap();
    let text = ["W/O", "DO/W&W", "DW/O&O/W"].iter().fold(text, |t, l| {
        t.replace(&format!("\"class\": \"{l}\""), "\"class\": \"ST\"")
    });
    std::fs::write(&kb, text).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_flowpat"))
        .args([
            "classify",
            "--angle",
            "45",
            "--flow",
            "350",
            "--watercut",
            "0.5",
        ])
        .env("FLOWPAT_KB", &kb)
        .output()
        .unwrap();
    // Classes with no rules are a validation error.
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("has no rules"), "{}", stderr(&o));
}

#[test]
fn export_data_round_trips_through_train() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("data.csv");
    let model = dir.path().join("model.json");
    assert!(flowpat(&["export-data", "--out", csv.to_str().unwrap()])
        .status
        .success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 61);
    let o = flowpat(&[
        "train-bp",
        "--data",
        csv.to_str().unwrap(),
        "--epochs",
        "50",
        "--out",
        model.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("trained on 42 records"));
    assert!(model.exists());
}

#[test]
fn bad_csv_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("data.csv");
    std::fs::write(
        &csv,
        "angle_deg,flow_m3d,watercut_frac,pattern\n0,100,0.2,W/O\n0,abc,0.2,W/O\n",
    )
    .unwrap();
    let o = flowpat(&[
        "evaluate",
        "--data",
        csv.to_str().unwrap(),
        "--split",
        "none",
        "--fis-only",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn evaluate_with_saved_model_matches_inline_training() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("model.json");
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    assert!(
        flowpat(&["train-bp", "--seed", "3", "--out", model.to_str().unwrap()])
            .status
            .success()
    );
    assert!(
        flowpat(&["evaluate", "--seed", "3", "--report", r1.to_str().unwrap()])
            .status
            .success()
    );
    let o = flowpat(&[
        "evaluate",
        "--bp-model",
        model.to_str().unwrap(),
        "--report",
        r2.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
}

#[test]
fn evaluate_fis_only_on_random_split() {
    let o = flowpat(&[
        "evaluate",
        "--fis-only",
        "--split",
        "random",
        "--test-fraction",
        "0.25",
        "--split-seed",
        "9",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("15/15"), "{out}");
}

fn sweep_to(dir: &Path, format: &str) -> String {
    let path = dir.join(format!("sweep.{format}"));
    let o = flowpat(&[
        "sweep",
        "--angle",
        "90",
        "--steps",
        "10",
        "--format",
        format,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn sweep_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = sweep_to(dir.path(), "csv");
    assert_eq!(csv.lines().count(), 101);
    assert!(csv
        .lines()
        .any(|l| l.starts_with("100,") && l.ends_with(",ST")));
    let svg = sweep_to(dir.path(), "svg");
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches("data-pattern=").count(), 100);
}

#[test]
fn sweep_rejects_empty_axis() {
    let o = flowpat(&["sweep", "--angle", "0", "--flow-steps", "0"]);
    assert_eq!(o.status.code(), Some(1));
}
