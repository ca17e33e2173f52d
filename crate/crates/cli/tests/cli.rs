use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const DEFAULTS: &str = "\
qubit1.frequency_ghz = 5.0
qubit1.temperature_mk = 150
qubit2.frequency_ghz = 5.0
qubit2.temperature_mk = 150
memory.temperature_mk = 80
";

fn qdemon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdemon"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field(report: &str, label: &str) -> f64 {
    report
        .lines()
        .find(|l| l.split_whitespace().next() == Some(label))
        .and_then(|l| l.split_whitespace().nth(1))
        .unwrap_or_else(|| panic!("no {label} in\n{report}"))
        .parse()
        .unwrap()
}

#[test]
fn cycle_reports_every_quantity() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "e.conf", DEFAULTS);
    let out = qdemon(&[
        "cycle",
        "--config",
        config.to_str().unwrap(),
        "--scenario",
        "e-fine",
        "--t1",
        "300",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    for label in [
        "delta_E1",
        "delta_E2",
        "Q1",
        "Q2",
        "h",
        "Q0_landauer",
        "W_fc",
        "W_m_landauer",
        "W_out",
        "Q_in",
        "delta_vn",
        "eta_L",
        "eta_C",
        "regime",
    ] {
        assert!(
            text.lines().any(|l| l.starts_with(label)),
            "{label} missing:\n{text}"
        );
    }
    assert!(field(&text, "Q1") >= 0.0 && field(&text, "Q2") >= 0.0);
    assert!(text.contains("ueV") && text.contains("nats"));
    let residual = field(&text, "W_out")
        - (field(&text, "Q0_landauer") + field(&text, "Q1") + field(&text, "Q2"));
    assert!(residual.abs() < 1e-8);
    assert!(text.contains("regime") && text.contains("engine"));
}

#[test]
fn hot_memory_is_not_an_engine() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "hot.conf",
        &DEFAULTS.replace("memory.temperature_mk = 80", "memory.temperature_mk = 1e6"),
    );
    let out = qdemon(&[
        "cycle",
        "--config",
        config.to_str().unwrap(),
        "--scenario",
        "bell-coarse",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let regime = stdout(&out)
        .lines()
        .find(|l| l.starts_with("regime"))
        .unwrap()
        .to_string();
    assert!(regime.ends_with("non-engine"), "{regime}");
}

#[test]
fn missing_key_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "m.conf",
        &DEFAULTS.replace("qubit2.frequency_ghz = 5.0\n", ""),
    );
    let out = qdemon(&[
        "cycle",
        "--config",
        config.to_str().unwrap(),
        "--scenario",
        "e-fine",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("qubit2.frequency_ghz"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn malformed_line_is_reported_with_its_number() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "bad.conf",
        &format!("{DEFAULTS}# trailing\nqubit3.frequency_ghz = 1\n"),
    );
    let out = qdemon(&[
        "cycle",
        "--config",
        config.to_str().unwrap(),
        "--scenario",
        "e-fine",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bad.conf:7:"), "{}", stderr(&out));
}

#[test]
fn unreadable_config_and_bad_arguments() {
    let out = qdemon(&[
        "cycle",
        "--config",
        "/nonexistent/engine.conf",
        "--scenario",
        "e-fine",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = qdemon(&["cycle", "--config", "x.conf", "--scenario", "x-fine"]);
    assert_eq!(out.status.code(), Some(1));
    let out = qdemon(&["verify", "--dims", "4x5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("16"), "{}", stderr(&out));
    let out = qdemon(&["verify", "--trials", "0", "--dims", "2x2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(qdemon(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_writes_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "s.conf", DEFAULTS);
    let csv = dir.path().join("out.csv");
    let out = qdemon(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--scenarios",
        "e-fine,extra-coarse",
        "--t1-min",
        "10",
        "--t1-max",
        "500",
        "--steps",
        "200",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "scenario,T1_mK,W_out_ueV,Q0L_ueV,Q1_ueV,Q2_ueV,h_nats,eta_LW,eta_C"
    );
    assert_eq!(lines.len(), 401);
    assert!(lines[1].starts_with("e-fine,1.00000000000e1,"));
    assert!(lines[200].starts_with("e-fine,5.00000000000e2,"));
    assert!(lines[201].starts_with("extra-coarse,1.00000000000e1,"));
}

#[test]
fn sweep_to_unwritable_path_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "s.conf", DEFAULTS);
    let out = qdemon(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--t1-min",
        "10",
        "--t1-max",
        "20",
        "--steps",
        "2",
        "--out",
        "/nonexistent/dir/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn sweep_rejects_inverted_range() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "s.conf", DEFAULTS);
    let out = qdemon(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--t1-min",
        "300",
        "--t1-max",
        "20",
        "--steps",
        "5",
        "--out",
        dir.path().join("x.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_single_trial_passes() {
    let out = qdemon(&["verify", "--seed", "42", "--trials", "1", "--dims", "2x2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(
        text.contains("clausius-type") && text.contains("PASS: 0 failures"),
        "{text}"
    );
}
