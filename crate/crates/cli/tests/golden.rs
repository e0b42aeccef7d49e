//! Golden-file tests: every corpus model is rendered and compared
//! byte-for-byte against its frozen expected output.
//!
//! Regenerate after an intentional format change with
//! `UPDATE_GOLDEN=1 cargo test -p dimrep-cli --test golden`.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_dimrep"))
        .args(args)
        .output()
        .expect("failed to spawn dimrep")
}

fn check_golden(input: &str, extra_args: &[&str], golden: &str) {
    let input_path = corpus_dir().join(input);
    let mut args = vec!["analyze", input_path.to_str().unwrap()];
    args.extend_from_slice(extra_args);
    let output = run_cli(&args);
    assert!(
        output.status.success(),
        "dimrep analyze {input} {extra_args:?} failed:\n{}",
        String::from_utf8_lossy(&output.stderr)
    );

    let golden_path = corpus_dir().join("golden").join(golden);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&golden_path, &output.stdout).expect("write golden");
        return;
    }
    let expected = fs::read(&golden_path)
        .unwrap_or_else(|_| panic!("missing golden file {}", golden_path.display()));
    assert_eq!(
        output.stdout,
        expected,
        "output for {input} {extra_args:?} diverged from {golden};\ngot:\n{}",
        String::from_utf8_lossy(&output.stdout)
    );
}

#[test]
fn constant_function() {
    check_golden("example1_constant.dim", &[], "example1_constant.text");
    check_golden(
        "example1_constant.dim",
        &["--format", "structured"],
        "example1_constant.json",
    );
}

#[test]
fn pendulum() {
    check_golden("example2_pendulum.dim", &[], "example2_pendulum.text");
    check_golden(
        "example2_pendulum.dim",
        &["--format", "structured"],
        "example2_pendulum.json",
    );
}

#[test]
fn capacitor_both_bases() {
    check_golden("example3_capacitor.dim", &[], "example3_capacitor.text");
    check_golden(
        "example3_capacitor.dim",
        &["--format", "structured"],
        "example3_capacitor.json",
    );
    check_golden(
        "example3_capacitor_lfqx.dim",
        &[],
        "example3_capacitor_lfqx.text",
    );
    check_golden(
        "example3_capacitor_lfqx.dim",
        &["--format", "structured"],
        "example3_capacitor_lfqx.json",
    );
}

#[test]
fn masses() {
    check_golden("example4_masses.dim", &[], "example4_masses.text");
    check_golden(
        "example4_masses.dim",
        &["--format", "structured"],
        "example4_masses.json",
    );
    check_golden(
        "example4_masses.dim",
        &["--reduce"],
        "example4_masses.reduced.text",
    );
}

#[test]
fn field_energy() {
    check_golden(
        "example5_field_energy.dim",
        &[],
        "example5_field_energy.text",
    );
    check_golden(
        "example5_field_energy.dim",
        &["--format", "structured"],
        "example5_field_energy.json",
    );
    check_golden(
        "example5_field_energy_sub.dim",
        &[],
        "example5_field_energy_sub.text",
    );
    check_golden(
        "example5_field_energy_sub.dim",
        &["--format", "structured"],
        "example5_field_energy_sub.json",
    );
    check_golden(
        "example5_field_energy_sub.dim",
        &["--reduce"],
        "example5_field_energy_sub.reduced.text",
    );
    check_golden(
        "example5_field_energy_sub.dim",
        &["--reduce", "--format", "latex"],
        "example5_field_energy_sub.reduced.tex",
    );
}

#[test]
fn two_body() {
    check_golden("example6_two_body.dim", &[], "example6_two_body.text");
    check_golden(
        "example6_two_body.dim",
        &["--format", "structured"],
        "example6_two_body.json",
    );
    check_golden(
        "example6_two_body.dim",
        &["--reduce"],
        "example6_two_body.reduced.text",
    );
    check_golden(
        "example6_two_body.dim",
        &["--reduce", "--format", "latex"],
        "example6_two_body.reduced.tex",
    );
    check_golden(
        "example6_two_body_no_g.dim",
        &[],
        "example6_two_body_no_g.text",
    );
    check_golden(
        "example6_two_body_no_g.dim",
        &["--format", "structured"],
        "example6_two_body_no_g.json",
    );
}

#[test]
fn normalized_golden() {
    // all left-hand exponents already agree here, so lambda is 1 everywhere
    check_golden(
        "example6_two_body.dim",
        &["--normalize"],
        "example6_two_body.normalized.text",
    );
}

#[test]
fn rendering_is_deterministic() {
    let input = corpus_dir().join("example5_field_energy.dim");
    let args = ["analyze", input.to_str().unwrap(), "--format", "structured"];
    let first = run_cli(&args);
    let second = run_cli(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}
