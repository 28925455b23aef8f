use std::process::{Command, Output};

use hsph::json::from_json;
use hsph::spherical::{omega_explicit, SphericalInput};

fn hsph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsph"))
        .args(args)
        .env_remove("HS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn verify_cocycle_rank3_passes() {
    let o = hsph(&["verify", "cocycle", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("A1 cocycle PASS"));
}

#[test]
fn spherical_json_round_trips() {
    let o = hsph(&[
        "spherical",
        "--n",
        "2",
        "--lambda",
        "1,0",
        "--e0",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["nvars"], 2);
    let omega = from_json(&v).unwrap();
    let expected = omega_explicit(&SphericalInput::new(vec![1, 0], 0).unwrap()).unwrap();
    assert!(omega.equals(&expected.value));
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        &["spherical", "--n", "2", "--lambda", "0,1"][..],
        &["spherical", "--n", "3", "--lambda", "1,0"],
        &["spherical", "--lambda", "0", "--e0", "1"],
        &["gamma", "--n", "2", "--sigma", "s2"],
        &["gamma", "--n", "2", "--bogus"],
        &["verify", "nonsense"],
        &[
            "oracle", "omega1", "--p", "4", "--N", "2", "--lambda", "0", "--e", "0",
        ],
    ] {
        assert_eq!(hsph(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn gamma_latex_template() {
    let o = hsph(&["gamma", "--n", "2", "--sigma", "s1", "--format", "latex"]);
    assert_eq!(
        stdout(&o).trim(),
        "\\frac{1 - q^{z_1-z_2-1}}{q^{z_1-z_2} - q^{-1}}"
    );
    let id = hsph(&["gamma", "--n", "2", "--format", "latex"]);
    assert_eq!(stdout(&id).trim(), "1");
}

#[test]
fn budget_exceeded_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_hsph"))
        .args([
            "oracle", "omega1", "--p", "3", "--N", "4", "--lambda", "2", "--e", "0",
        ])
        .env("HS_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn oracle_checks_against_closed_form() {
    let o = hsph(&[
        "oracle", "omega1", "--p", "3", "--N", "4", "--lambda", "2", "--e", "0", "--check",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = hsph(&[
        "oracle", "siegel1", "--p", "3", "--lambda", "2", "--check", "--format", "json",
    ]);
    assert_eq!(s.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&s).trim()).unwrap();
    assert_eq!(v["nvars"], 1);
}

#[test]
fn siegel_commands() {
    assert_eq!(
        hsph(&["siegel", "chain", "--n", "2"]).status.code(),
        Some(0)
    );
    assert_eq!(
        hsph(&["siegel", "fe", "--lambda", "2,1", "--e0", "1"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        hsph(&["siegel", "fe", "--lambda", "2", "--e0", "0"])
            .status
            .code(),
        Some(0)
    );
    // the rank-one functional equation does not absorb |2| at e0 = 1
    assert_eq!(
        hsph(&["siegel", "fe", "--lambda", "2", "--e0", "1"])
            .status
            .code(),
        Some(1)
    );
    let b = hsph(&["siegel", "b1", "--lambda", "1", "--format", "latex"]);
    assert_eq!(
        stdout(&b).trim(),
        "1 + \\left(q - 1\\right) q^{-s} - q^{-2s+1}"
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "spherical",
        "--lambda",
        "2,1,1",
        "--e0",
        "1",
        "--format",
        "json",
    ];
    assert_eq!(hsph(&args).stdout, hsph(&args).stdout);
    let v = ["verify", "siegel-chain", "--n", "2", "--format", "json"];
    assert_eq!(hsph(&v).stdout, hsph(&v).stdout);
}
