use std::process::{Command, Output};

fn njc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_njc")).args(args).output().expect("spawn njc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn critical_detuning_values() {
    let o = njc(&["critical-detuning", "--k", "1e-4"]);
    assert!(o.status.success());
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.016061).abs() < 5e-7);

    let o = njc(&["critical-detuning", "--k", "1e-3", "--mean", "30"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.061061).abs() < 5e-7);

    let o = njc(&["critical-detuning", "--model", "two", "--k", "2e-3", "--mean", "3"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.0161).abs() < 1e-4);
}

#[test]
fn zero_deformation_has_no_critical_detuning() {
    let o = njc(&["critical-detuning", "--k", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn describe_lists_and_resolves() {
    let o = njc(&["describe"]);
    let names = stdout(&o);
    assert!(names.lines().any(|l| l == "fig1a"));
    assert!(names.lines().any(|l| l == "fig9f"));

    let o = njc(&["describe", "--preset", "fig6a"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("model=two"));
    assert!(text.contains("# resolved:"));
}

#[test]
fn model_switch_by_flags_picks_two_mode_frequencies() {
    let o = njc(&[
        "timeseries",
        "--model",
        "two",
        "--state",
        "tsv",
        "--amp",
        "1.032",
        "--k",
        "2e-3",
        "--delta",
        "critical",
        "--tmax",
        "0.01",
        "--dt",
        "0.005",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("lambda_t,W_T,"));
    let o = njc(&["describe", "--model", "two", "--state", "tsv", "--amp", "1.032"]);
    assert!(stdout(&o).contains("omega1=auto\nomega2=auto\n"));
}

#[test]
fn bad_input_is_reported() {
    let o = njc(&["timeseries", "--state", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    let o = njc(&["timeseries", "--dt", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn timeseries_is_byte_identical_across_runs() {
    let args = ["timeseries", "--preset", "fig8b", "--tmax", "2"];
    let a = njc(&args);
    let b = njc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 2 + 400);
}

#[test]
fn pair_coherent_recovers_excited_state_at_pi() {
    let pi = std::f64::consts::PI.to_string();
    let o = njc(&["timeseries", "--preset", "fig6a", "--tmax", &pi, "--dt", &pi]);
    assert!(o.status.success());
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    let w: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert!((w - 1.0).abs() < 1e-8, "W_T(pi) = {w}");
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("njc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig1a.csv");
    let o = njc(&["timeseries", "--preset", "fig1a", "--tmax", "1", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    let piped = njc(&["timeseries", "--preset", "fig1a", "--tmax", "1"]).stdout;
    assert_eq!(written, piped);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validate_passes_and_mutation_fails() {
    let o = njc(&["validate"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("status=pass"));

    let o = njc(&["validate", "--mutate-eta-sign"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("status=fail"));
}
