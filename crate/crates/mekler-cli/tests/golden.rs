//! Golden-file tests: every CLI command runs over the fixture corpus and its
//! byte-exact output is pinned under `tests/golden/`. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test -p mekler-cli`.

use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"))
}

fn run_mekler(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_mekler"))
        .args(args)
        .env_remove("MEKLER_CAP")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().unwrap_or(-1),
    )
}

fn check_golden(name: &str, args: &[&str], expected_exit: i32) {
    let (stdout, stderr, code) = run_mekler(args);
    assert_eq!(
        code, expected_exit,
        "exit code for {name} (stderr: {stderr})"
    );
    let path = golden_path(name);
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {name}; rerun with UPDATE_GOLDEN=1"));
    assert_eq!(stdout, want, "golden mismatch for {name}");
}

#[test]
fn check_nice_goldens() {
    check_golden("check_nice_c5", &["check-nice", &fixture("c5.edges")], 0);
    check_golden("check_nice_k3", &["check-nice", &fixture("k3.edges")], 2);
    check_golden("check_nice_p5", &["check-nice", &fixture("p5.edges")], 2);
    check_golden(
        "check_nice_petersen",
        &["check-nice", &fixture("petersen.dot")],
        0,
    );
    check_golden("check_nice_c8", &["check-nice", &fixture("c8.edges")], 0);
}

#[test]
fn check_nice_missing_file_is_io_error() {
    let (_, stderr, code) = run_mekler(&["check-nice", &fixture("missing.edges")]);
    assert_eq!(code, 1);
    assert!(stderr.contains("cannot read"));
}

#[test]
fn build_goldens() {
    check_golden("build_c5", &["build", &fixture("c5.edges"), "--p", "3"], 0);
    check_golden("build_c6", &["build", &fixture("c6.edges"), "--p", "3"], 0);
    check_golden(
        "build_petersen",
        &["build", &fixture("petersen.dot"), "--p", "3"],
        0,
    );
}

#[test]
fn build_rejects_non_nice_graph() {
    let (_, stderr, code) = run_mekler(&["build", &fixture("k3.edges"), "--p", "3"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not nice"));
}

#[test]
fn build_rejects_even_prime() {
    let (_, stderr, code) = run_mekler(&["build", &fixture("c5.edges"), "--p", "2"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("odd prime"));
}

#[test]
fn census_goldens() {
    check_golden(
        "census_c5",
        &["census", &fixture("c5.edges"), "--p", "3"],
        0,
    );
    check_golden(
        "census_c6",
        &["census", &fixture("c6.edges"), "--p", "3"],
        0,
    );
    check_golden(
        "census_c5_json",
        &[
            "census",
            &fixture("c5.edges"),
            "--p",
            "3",
            "--format",
            "json",
        ],
        0,
    );
    check_golden(
        "census_petersen",
        &["census", &fixture("petersen.dot"), "--p", "3"],
        0,
    );
}

#[test]
fn recover_goldens() {
    check_golden(
        "recover_c5",
        &["recover", &fixture("c5.edges"), "--p", "3"],
        0,
    );
    check_golden(
        "recover_c6",
        &["recover", &fixture("c6.edges"), "--p", "3"],
        0,
    );
    check_golden(
        "recover_petersen",
        &["recover", &fixture("petersen.dot"), "--p", "3"],
        0,
    );
}

#[test]
fn separated_goldens() {
    check_golden(
        "separated_c5",
        &["separated", &fixture("c5.edges"), "--p", "3"],
        0,
    );
    check_golden(
        "separated_c8",
        &["separated", &fixture("c8.edges"), "--p", "3"],
        0,
    );
    check_golden(
        "separated_wedge",
        &["separated", "--wedge-quotient", "--p", "3"],
        0,
    );
    check_golden(
        "separated_wedge_json",
        &[
            "separated",
            "--wedge-quotient",
            "--p",
            "3",
            "--format",
            "json",
        ],
        0,
    );
}

#[test]
fn inp_goldens() {
    check_golden(
        "inp_c5_m2",
        &["inp", &fixture("c5.edges"), "--p", "3", "--m", "2"],
        0,
    );
    check_golden(
        "inp_c6_m3",
        &["inp", &fixture("c6.edges"), "--p", "3", "--m", "3"],
        0,
    );
}

#[test]
fn classify_goldens() {
    check_golden(
        "classify_type_p",
        &[
            "classify",
            &fixture("c5.edges"),
            "gen=[1,0,1,0,0];com=[0,0,0,0,0]",
            "--p",
            "3",
        ],
        0,
    );
    check_golden(
        "classify_type_p_json",
        &[
            "classify",
            &fixture("c5.edges"),
            "gen=[1,0,1,0,0];com=[0,0,0,0,0]",
            "--p",
            "3",
            "--format",
            "json",
        ],
        0,
    );
    check_golden(
        "classify_central",
        &[
            "classify",
            &fixture("c5.edges"),
            "gen=[0,0,0,0,0];com=[1,2,0,0,0]",
            "--p",
            "3",
        ],
        0,
    );
    check_golden(
        "classify_one_nu",
        &[
            "classify",
            &fixture("c5.edges"),
            "gen=[0,2,0,0,0];com=[0,0,0,0,1]",
            "--p",
            "3",
        ],
        0,
    );
    check_golden(
        "classify_p_minus_one",
        &[
            "classify",
            &fixture("c5.edges"),
            "gen=[1,2,0,0,0];com=[0,0,0,0,0]",
            "--p",
            "3",
        ],
        0,
    );
    check_golden(
        "classify_one_iota",
        &[
            "classify",
            &fixture("c5.edges"),
            "gen=[1,1,0,1,0];com=[0,0,0,0,0]",
            "--p",
            "3",
        ],
        0,
    );
}

#[test]
fn classify_rejects_bad_literal() {
    let (_, stderr, code) = run_mekler(&[
        "classify",
        &fixture("c5.edges"),
        "gen=[1,0];com=[0]",
        "--p",
        "3",
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("error"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = [
        "census",
        &fixture("c5.edges"),
        "--p",
        "3",
        "--format",
        "json",
    ];
    let (a, _, _) = run_mekler(&args);
    let (b, _, _) = run_mekler(&args);
    assert_eq!(a, b);
}

#[test]
fn cap_flag_and_env_are_honored() {
    // a tiny cap forces the census image scan into the partial path
    let (stdout, _, code) =
        run_mekler(&["census", &fixture("c5.edges"), "--p", "3", "--cap", "10"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("skipped (image space above cap)"));

    let out = Command::new(env!("CARGO_BIN_EXE_mekler"))
        .args(["census", &fixture("c5.edges"), "--p", "3"])
        .env("MEKLER_CAP", "10")
        .output()
        .expect("binary runs");
    assert!(String::from_utf8_lossy(&out.stdout).contains("skipped"));
}

#[test]
fn usage_error_exits_one() {
    let (_, _, code) = run_mekler(&["no-such-command"]);
    assert_eq!(code, 1);
}

#[test]
fn resource_cap_exits_three() {
    // the inp scan needs the image space, which a tiny cap forbids
    let (_, stderr, code) = run_mekler(&[
        "inp",
        &fixture("petersen.dot"),
        "--p",
        "3",
        "--m",
        "2",
        "--cap",
        "100",
    ]);
    assert_eq!(code, 3, "stderr: {stderr}");
    assert!(stderr.contains("cap"));
}

#[test]
fn gen_girth5_is_seeded_and_square_free() {
    check_golden(
        "gen_girth5_n12_seed7",
        &[
            "gen-girth5",
            "--n",
            "12",
            "--degree-bound",
            "3",
            "--seed",
            "7",
        ],
        0,
    );
    // the emitted graph parses and has no triangles or squares
    let (stdout, _, _) = run_mekler(&[
        "gen-girth5",
        "--n",
        "12",
        "--degree-bound",
        "3",
        "--seed",
        "7",
    ]);
    let tmp = std::env::temp_dir().join("mekler_gen_girth5_test.edges");
    std::fs::write(&tmp, &stdout).unwrap();
    let (report, _, _) = run_mekler(&["check-nice", tmp.to_str().unwrap()]);
    assert!(!report.contains("triangle") && !report.contains("square"));
    let _ = std::fs::remove_file(&tmp);
}
