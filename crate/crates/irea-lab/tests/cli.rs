//! End-to-end tests of the `irea` binary: flag handling, file formats,
//! output shapes and the exit-code discipline (0 = ok, 1 = operational
//! error, 2 = falsification found).

use std::process::{Command, Output};

use tempfile::tempdir;

const BIN: &str = env!("CARGO_BIN_EXE_irea");

fn irea(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("run irea")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn keygen_writes_table1_key_files() {
    let dir = tempdir().unwrap();
    let pub_path = dir.path().join("t1.pub");
    let priv_path = dir.path().join("t1.priv");
    let output = irea(&[
        "keygen", "--scheme", "irea-published", "--b", "5", "--v", "11", "--e", "13",
        "--pub-out", pub_path.to_str().unwrap(),
        "--priv-out", priv_path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    assert_eq!(
        std::fs::read_to_string(&pub_path).unwrap(),
        "scheme=irea-published\nexp=27\na=54\n"
    );
    assert_eq!(
        std::fs::read_to_string(&priv_path).unwrap(),
        "scheme=irea-published\nd=17\na=54\n"
    );
    assert_eq!(
        stdout(&output),
        "scheme=irea-published b=5 v=11 j=55 phi=40 a=54 e=13 p=27 d=17\n"
    );
}

#[test]
fn keygen_corrected_yields_d23() {
    let dir = tempdir().unwrap();
    let priv_path = dir.path().join("t3.priv");
    let output = irea(&[
        "keygen", "--scheme", "irea-corrected", "--b", "5", "--v", "11", "--e", "7",
        "--pub-out", dir.path().join("t3.pub").to_str().unwrap(),
        "--priv-out", priv_path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(std::fs::read_to_string(&priv_path).unwrap().contains("d=23\n"));
}

#[test]
fn keygen_rejects_out_of_range_exponent() {
    let dir = tempdir().unwrap();
    let output = irea(&[
        "keygen", "--scheme", "irea-published", "--b", "5", "--v", "11", "--e", "41",
        "--pub-out", dir.path().join("x.pub").to_str().unwrap(),
        "--priv-out", dir.path().join("x.priv").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("out of range"), "stderr: {}", stderr(&output));
}

#[test]
fn encrypt_and_decrypt_reproduce_the_tables() {
    let dir = tempdir().unwrap();
    let pub1 = dir.path().join("t1.pub");
    let priv2 = dir.path().join("t2.priv");
    let priv3 = dir.path().join("t3.priv");

    irea(&[
        "keygen", "--scheme", "irea-published", "--b", "5", "--v", "11", "--e", "13",
        "--pub-out", pub1.to_str().unwrap(),
        "--priv-out", dir.path().join("t1.priv").to_str().unwrap(),
    ]);
    irea(&[
        "keygen", "--scheme", "irea-published", "--b", "5", "--v", "11", "--e", "7",
        "--pub-out", dir.path().join("t2.pub").to_str().unwrap(),
        "--priv-out", priv2.to_str().unwrap(),
    ]);
    irea(&[
        "keygen", "--scheme", "irea-corrected", "--b", "5", "--v", "11", "--e", "7",
        "--pub-out", dir.path().join("t3.pub").to_str().unwrap(),
        "--priv-out", priv3.to_str().unwrap(),
    ]);

    let output = irea(&["encrypt", "--key", pub1.to_str().unwrap(), "--value", "4"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "9\n");

    let output = irea(&["decrypt", "--key", priv2.to_str().unwrap(), "--value", "49"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "26\n");

    let output = irea(&["decrypt", "--key", priv3.to_str().unwrap(), "--value", "49"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "4\n");

    // Out-of-range message is an operational error, not a falsification.
    let output = irea(&["encrypt", "--key", pub1.to_str().unwrap(), "--value", "55"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn encrypt_rejects_malformed_key_file() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("bad.pub");
    std::fs::write(&path, "scheme=irea-published\nexp=27\nexp=27\na=54\n").unwrap();
    let output = irea(&["encrypt", "--key", path.to_str().unwrap(), "--value", "4"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("duplicate key"));

    let output = irea(&["encrypt", "--key", "/nonexistent.pub", "--value", "4"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn roundtrip_single_message_exit_codes() {
    let output = irea(&[
        "roundtrip", "--scheme", "irea-published", "--b", "5", "--v", "11", "--e", "7",
        "--message", "4",
    ]);
    assert_eq!(output.status.code(), Some(2), "falsified => exit 2");
    assert_eq!(stdout(&output), "4 49 26 FAIL\n");

    let output = irea(&[
        "roundtrip", "--scheme", "irea-published", "--b", "5", "--v", "11", "--e", "13",
        "--message", "4",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "4 9 4 OK\n");

    // Invalid parameters exit 1, never 2.
    let output = irea(&[
        "roundtrip", "--scheme", "irea-published", "--b", "4", "--v", "11", "--e", "7",
        "--message", "4",
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn roundtrip_all_exit_codes() {
    let output = irea(&[
        "roundtrip", "--scheme", "irea-corrected", "--b", "5", "--v", "11", "--e", "7", "--all",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "0 failures / 55\n");

    let output = irea(&[
        "roundtrip", "--scheme", "irea-published", "--b", "5", "--v", "11", "--e", "13", "--all",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "0 failures / 55\n");

    let output = irea(&[
        "roundtrip", "--scheme", "irea-published", "--b", "5", "--v", "11", "--e", "7", "--all",
    ]);
    assert_eq!(output.status.code(), Some(2));
    let text = stdout(&output);
    assert!(text.contains("failures / 55"), "got: {text}");
    assert!(text.contains("smallest witnesses:"), "got: {text}");
}

#[test]
fn survey_csv_output() {
    let output = irea(&["survey", "--min", "5", "--max", "11", "--scheme", "irea-published"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.starts_with("b,v,e,scheme,j,failure_count\n"));
    let row = text
        .lines()
        .find(|l| l.starts_with("5,11,7,irea-published,55,"))
        .expect("row (5,11,7) present");
    let count: u64 = row.rsplit(',').next().unwrap().parse().unwrap();
    assert!(count >= 1);

    let output = irea(&["survey", "--min", "5", "--max", "11", "--scheme", "irea-corrected"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output)
        .lines()
        .skip(1)
        .all(|l| l.ends_with(",0")));

    // Writing to a file leaves stdout empty.
    let dir = tempdir().unwrap();
    let csv_path = dir.path().join("report.csv");
    let output = irea(&[
        "survey", "--min", "5", "--max", "11", "--scheme", "textbook",
        "--out", csv_path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).is_empty());
    assert!(std::fs::read_to_string(&csv_path)
        .unwrap()
        .starts_with("b,v,e,scheme,j,failure_count\n"));
}

#[test]
fn survey_rejects_infeasible_range() {
    let output = irea(&["survey", "--min", "14", "--max", "16", "--scheme", "textbook"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn tables_transcript_is_stable_and_matches_the_reference_values() {
    let first = irea(&["tables"]);
    let second = irea(&["tables"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let text = stdout(&first);
    assert!(text.contains("p=27 d=17 E=9 D=4 MATCH"), "got: {text}");
    assert!(text.contains("p=15 d=8 E=49 D=26 MISMATCH(D≠M)"), "got: {text}");
    assert!(text.contains("p=15 d=23 E=49 D=4 MATCH"), "got: {text}");
    assert_eq!(text.matches("j=55 phi=40 a=54").count(), 3);
}
