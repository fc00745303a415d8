use qseries::series::JsonSeries;
use qseries::QSeries;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qseries")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_matches_closed_form() {
    let a = run(&["eval", "f(1,2,1; q,q; 1)", "--order", "8"]);
    assert!(a.status.success());
    let text = stdout(&a);
    assert!(text.starts_with("1 - 2*q - q^2 + 2*q^3"), "{text}");
    assert!(text.trim_end().ends_with("+ O(q^8)"), "{text}");
    assert_eq!(text, stdout(&run(&["eval", "J[1]^2", "--order", "8"])));
}

#[test]
fn eval_appell_zero() {
    let o = run(&["eval", "m(-1, q^2, q)", "--order", "40"]);
    assert_eq!(stdout(&o).trim(), "0 + O(q^40)");
}

#[test]
fn parse_error_exits_2_with_caret() {
    let o = run(&["eval", "J[1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("at byte 5"), "{err}");
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines[1], "  J[1,2");
    assert_eq!(lines[2], "       ^");
}

#[test]
fn evaluation_error_exits_3() {
    let o = run(&["eval", "1 / (q - q)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cannot invert"));
    assert_eq!(run(&["eval", "m(q, q^2, q^2)"]).status.code(), Some(3));
}

#[test]
fn parity_violation_exits_4() {
    let o = run(&["string", "--N", "2", "--ell", "1", "--m", "2"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("parity"));
}

#[test]
fn string_functions() {
    let o = run(&["string", "--N", "2", "--ell", "1", "--m", "1", "--order", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let want = stdout(&run(&["eval", "J[1]*J[2]/J[1]^3", "--order", "10"]));
    assert!(text.contains(&format!("C^2_{{1,1}} = q^(0) * ({})", want.trim())), "{text}");

    let o = run(&["string", "--N", "4", "--ell", "2", "--m", "2", "--normalized", "--order", "12"]);
    let want = stdout(&run(&["eval", "J[1,4]*J[6,12]/J[1]^3", "--order", "12"]));
    assert!(stdout(&o).contains(&format!("CC^4_{{2,2}} = {}", want.trim())));
}

#[test]
fn out_of_range_label_is_reduced_with_note() {
    let o = run(&["string", "--N", "3", "--ell", "1", "--m", "-1", "--order", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("note: C^3_{-1,1} = C^3_{1,1} by symmetry"), "{text}");
    let direct = stdout(&run(&["string", "--N", "3", "--ell", "1", "--m", "1", "--order", "6"]));
    assert_eq!(text.lines().last().unwrap().replace("{-1,1}", "{1,1}"), direct.lines().last().unwrap());
}

#[test]
fn json_series_round_trips() {
    for src in ["J[1,2]*Jbar[3,8]", "eta(1)^(-2) * eta(1/2)", "j(i*q^(1/2); q) / 3", "m(q, q^2, -1)"] {
        let text = stdout(&run(&["eval", src, "--order", "6"]));
        let json = stdout(&run(&["eval", src, "--order", "6", "--format", "json"]));
        let parsed: JsonSeries = serde_json::from_str(&json).unwrap();
        let s = QSeries::try_from(&parsed).unwrap();
        assert_eq!(format!("{s}\n"), text, "{src}");
    }
}

#[test]
fn verify_kp_json_has_five_rows() {
    let o = run(&["verify", "--suite", "kp_examples", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn verify_output_is_deterministic() {
    let a = run(&["verify", "--suite", "theta", "--format", "json"]);
    let b = run(&["verify", "--suite", "theta", "--format", "json", "--jobs", "1"]);
    let c = run(&["verify", "--suite", "theta", "--format", "json", "--jobs", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn verify_order_override_and_timings() {
    let o = run(&["verify", "--suite", "notation", "--order", "12", "--timings"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().contains("O(q^12)"));
    assert!(text.contains(" ms"));
    assert!(stderr(&o).contains("0 failed"));
}

#[test]
fn bad_arguments_are_rejected() {
    assert_eq!(run(&["verify", "--suite", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "q", "--order", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn list_filters_cases() {
    let o = run(&["list", "--filter", "f131"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    assert!(stdout(&run(&["list", "--filter", "nonexistent"])).is_empty());
    assert!(stdout(&run(&["list"])).lines().count() >= 60);
}
