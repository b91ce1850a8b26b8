use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infdilog"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn pattern_file(tag: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("infdilog-cli-{}-{tag}.toml", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn named_four_term_passes_exhaustively() {
    let o = run(&["check", "named", "four_term", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.contains("[PASS]") && out.contains("exhaustive=true"),
        "{out}"
    );
}

#[test]
fn theta_of_b2() {
    let o = run(&["theta", "--pattern", "B2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(1, 2)");
}

#[test]
fn invalid_weight_is_a_config_error() {
    let o = run(&[
        "check",
        "cluster",
        "--pattern",
        "A2",
        "--m",
        "2",
        "--w",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m < w < 2m"));
}

#[test]
fn unknown_pattern_and_identity() {
    assert_eq!(run(&["theta", "--pattern", "G7"]).status.code(), Some(2));
    assert_eq!(run(&["check", "named", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["check", "named", "elementary", "--p", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn malformed_pattern_files() {
    let f = pattern_file(
        "sym",
        "name = \"bad\"\nB = [[0, 1], [1, 0]]\nsequence = [0]\nnu = [0, 1]\n",
    );
    let o = run(&["theta", "--pattern-file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("sign-skew-symmetry violated"),
        "{}",
        stderr(&o)
    );

    let f = pattern_file(
        "perm",
        "name = \"bad\"\nB = [[0, -1], [1, 0]]\nsequence = [0]\nnu = [0, 0]\n",
    );
    let o = run(&["theta", "--pattern-file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a permutation"), "{}", stderr(&o));

    let f = pattern_file(
        "g2",
        "name = \"G2\"\nB = [[0, -1], [3, 0]]\nsequence = [0, 1, 0, 1, 0, 1, 0, 1]\nnu = [0, 1]\n",
    );
    let o = run(&["theta", "--pattern-file", f.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "(1, 3)");
}

#[test]
fn failing_check_exits_one() {
    // A2 truncated to three steps is not periodic
    let f = pattern_file(
        "short",
        "name = \"A2short\"\nB = [[0, -1], [1, 0]]\nsequence = [0, 1, 0]\nnu = [1, 0]\n",
    );
    let o = run(&[
        "periodicity",
        "--pattern-file",
        f.to_str().unwrap(),
        "--trials",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let o = run(&[
        "check",
        "lemma",
        "--pattern-file",
        f.to_str().unwrap(),
        "--precision",
        "4",
        "--trials",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn mutate_prints_one_indexed_trajectory() {
    let o = run(&["mutate", "--pattern", "A2", "--y", "2", "--y", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("mutate at 1") && out.contains("mutate at 2"));
    assert!(out.contains("y_2[1] = 9"), "{out}");
    assert_eq!(
        run(&["mutate", "--pattern", "A2", "--y", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_commands_pass() {
    for args in [
        &[
            "check", "pentagon", "--m", "3", "--w", "5", "--trials", "20",
        ][..],
        &[
            "check", "pentagon", "--field", "fp", "--p", "5", "--trials", "20",
        ],
        &[
            "check",
            "cluster",
            "--pattern",
            "B2",
            "--m",
            "3",
            "--w",
            "4",
            "--trials",
            "20",
        ],
        &["check", "cluster-p", "--pattern", "A2", "--p", "5"],
        &["check", "lemma", "--pattern", "B2", "--trials", "5"],
        &[
            "check",
            "lemma",
            "--pattern",
            "A2",
            "--field",
            "fp",
            "--p",
            "7",
            "--trials",
            "5",
        ],
        &["check", "welldef", "--m", "2", "--w", "3", "--trials", "10"],
        &["periodicity", "--pattern", "A2"],
    ] {
        let o = run(args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}{}",
            stdout(&o),
            stderr(&o)
        );
    }
}

#[test]
fn json_report_is_deterministic_and_replayable() {
    let args = [
        "check",
        "cluster",
        "--pattern",
        "A2",
        "--trials",
        "10",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["config"]["seed"], 7);
    assert_eq!(doc["passed"], true);
    let c = stdout(&run(&[
        "check",
        "cluster",
        "--pattern",
        "A2",
        "--trials",
        "10",
        "--seed",
        "8",
        "--format",
        "json",
    ]));
    assert_ne!(a, c);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("infdilog-cli-{}-out.json", std::process::id()));
    let o = run(&[
        "theta",
        "--pattern",
        "A2",
        "--format",
        "json-like",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["result"]["theta"], serde_json::json!([1, 1]));
}
