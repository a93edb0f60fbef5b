//! End-to-end tests for the `qbext` binary: worked examples, output
//! formats, and the exit-code contract (0 ok, 1 failure, 2 usage,
//! 3 guardrail).

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbext"))
        .args(args)
        .env_remove("QBEXT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn nf_applies_the_exchange_relation() {
    let out = run(&["nf", "f[1,0] f[1,1]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "(1 - v^4) + v^4 f[1,1] f[1,0]");
}

#[test]
fn pair_of_a_generator_with_itself() {
    let out = run(&["pair", "f[1,0]", "f[1,0]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "v^-2 - v^2");
}

#[test]
fn act_t1_on_f2() {
    let out = run(&["act", "--word", "1", "--on", "f[2,0]"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("f[1,0] f[2,0]") && text.contains("f[2,0] f[1,0]"), "{text}");
}

#[test]
fn pbw_vectors_locally_reduced_a2() {
    let out = run(&["pbw", "vectors", "--seq", "1,2,1,2,1,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().count() == 6, "{text}");
    assert!(text.contains("F1 = f[1,0]"), "{text}");
    assert!(text.contains("F3 = f[2,0]"), "{text}");
    assert!(text.contains("F4 = f[1,1]"), "{text}");
    assert!(text.contains("F6 = f[2,1]"), "{text}");
}

#[test]
fn pbw_straighten_commutator_example() {
    let out = run(&["pbw", "straighten", "--seq", "1,2,2,1", "--k", "1", "--t", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[0, 1, 1, 0] -> v^2 - v^6"), "{text}");
    assert!(text.contains("[0, 0, 0, 0] -> -v^2 + v^6"), "{text}");
}

#[test]
fn json_lines_output() {
    let out = run(&["--format", "json-lines", "nf", "f[1,0] f[1,1]"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"{"element":"(1 - v^4) + v^4 f[1,1] f[1,0]"}"#
    );
}

#[test]
fn verify_suite_passes() {
    let out = run(&["verify", "example-a2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["nf", "f[3,0]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["--type", "Z9", "nf", "f[1,0]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guardrail_exits_3() {
    let out = run(&["--max-ht", "2", "nf", "f[1,0] f[1,0] f[1,0]"]);
    assert_eq!(out.status.code(), Some(3));
}
