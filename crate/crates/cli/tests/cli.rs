use std::process::{Command, Output};

fn qmodulus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmodulus")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn blowup_omega_example_passes() {
    let o = qmodulus(&["verify", "blowup-omega", "--a", "3/2", "--b", "1/2", "--q", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let reports: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 1);
    assert_eq!(reports[0]["pass"], true);
    assert_eq!(reports[0]["params"]["seed"], "0");
    assert_eq!(reports[0]["lhs"]["h0_region"], serde_json::json!(["m1 >= -1", "m2 >= 0"]));
}

#[test]
fn construction_m_sampled_run_passes() {
    let o = qmodulus(&["verify", "construction-m", "--samples", "500", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("500/500 passed (seed 7)"));
}

#[test]
fn a_zero_is_a_precondition_error() {
    let o = qmodulus(&["verify", "blowup-omega", "--a", "0", "--b", "1", "--q", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("precondition a ≠ 0"), "{}", stderr(&o));
}

#[test]
fn config_errors_exit_with_two() {
    assert_eq!(qmodulus(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(qmodulus(&["verify", "blowup-witt", "--n", "9"]).status.code(), Some(2));
    assert_eq!(qmodulus(&["verify", "blowup-omega", "--grid", "/nonexistent.toml"]).status.code(), Some(2));
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "suite = \"traces-witt\"\nseed = 3\nsamples = 20\n[grid]\ntrace_p = [3]\ne = [2]\n").unwrap();
    let mut texts = Vec::new();
    for name in ["one.json", "two.json"] {
        let out = dir.path().join(name);
        let o = qmodulus(&["verify", "--grid", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
        texts.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn markdown_table() {
    let o = qmodulus(&["verify", "blowup-omega", "--a", "1,2", "--b", "0", "--q", "1", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("| params | h0 region | h1 | h2 | pass |"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn list_names_every_suite() {
    let o = qmodulus(&["list"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l == "oracle-cohomology"));
    assert_eq!(text.lines().count(), 13);
}
