use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parahiggs"))
        .args(args)
        .env_remove("HIGGS_Z1")
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_parahiggs"))
        .args(args)
        .env_remove("HIGGS_Z1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classify_examples() {
    let o = run(&[
        "classify",
        "--beta",
        "1/10,2/10,3/10,5/10",
        "--parity",
        "even",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "int:even:{1234,12,13,23} (type B)");
    let o = run(&[
        "classify",
        "--beta",
        "9/10,1/20,1/20,1/20",
        "--parity",
        "even",
    ]);
    assert!(stdout(&o).starts_with("ext:even:{234}"));
    let o = run(&[
        "classify",
        "--beta",
        "1/2,1/2,1/2,1/2",
        "--parity",
        "odd",
        "--format",
        "json",
    ]);
    let v = json(&o);
    assert_eq!(v["result"], "walls");
    assert_eq!(v["walls"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["classify", "--beta", "0.1,0.2,0.3,0.4", "--parity", "even"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["classify", "--beta", "0,1/2,1/2,1/2", "--parity", "even"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--z1", "0", "walls", "--parity", "odd"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["kit", "--chamber", "int:even:{12,34}"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    let far = run(&["cross", "--from", "ext:even:{1}", "--to", "ext:even:{2}"]);
    assert_eq!(far.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&far.stderr).contains("not adjacent"));
}

#[test]
fn z1_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_parahiggs"))
        .args(["representative", "--label", "N_gen", "--splitting", "0,0"])
        .env("HIGGS_Z1", "-3/2")
        .output()
        .unwrap();
    assert_eq!(json(&o)["z1"], "-3/2");
}

#[test]
fn graph_and_kit_emitters() {
    let dot = stdout(&run(&["graph", "--parity", "even", "--format", "dot"]));
    assert_eq!(dot.matches("fillcolor").count(), 24);
    assert_eq!(dot.matches(" -- ").count(), 40);
    let kit = stdout(&run(&[
        "kit",
        "--chamber",
        "int:even:{1234,12,13,23}",
        "--format",
        "dot",
    ]));
    assert_eq!(kit.matches("central -- t").count(), 4);
    let v = json(&run(&[
        "kit",
        "--chamber",
        "ext:odd:{}",
        "--format",
        "json",
    ]));
    assert_eq!(v["configuration"]["euler"], 6);
    assert_eq!(v["hn_strata"][1]["nonempty"], true);
}

#[test]
fn cross_example() {
    let v = json(&run(&[
        "cross",
        "--from",
        "int:even:{1234,12,13,23}",
        "--to",
        "int:even:{1234,34,13,23}",
        "--format",
        "json",
    ]));
    let ex: Vec<(String, String)> = v["exchanged"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_str().unwrap().into(), p[1].as_str().unwrap().into()))
        .collect();
    assert!(ex.contains(&("[L{1,2}]".into(), "[L{3,4}]".into())));
    assert!(ex.contains(&("N{1,2}".into(), "N{3,4}".into())));
}

#[test]
fn stability_examples() {
    let rep = stdout(&run(&[
        "representative",
        "--label",
        "L{1,2}",
        "--splitting",
        "0,0",
    ]));
    let v = json(&run_stdin(
        &[
            "stability",
            "--input",
            "-",
            "--beta",
            "1/10,2/10,3/10,5/10",
            "--format",
            "json",
        ],
        &rep,
    ));
    assert_eq!(v["verdict"]["verdict"], "stable");
    assert_eq!(v["agree"], true);

    let h = stdout(&run(&[
        "representative",
        "--partition",
        "{1,2}|{3,4}",
        "--q",
        "1",
        "--splitting",
        "0,0",
    ]));
    let v = json(&run_stdin(
        &[
            "stability",
            "--input",
            "-",
            "--beta",
            "1/10,2/10,3/10,5/10",
            "--format",
            "json",
        ],
        &h,
    ));
    assert_eq!(v["verdict"]["verdict"], "stable");
    assert_eq!(v["component"], "H{1,2}|{3,4}");

    // F1 = F2 and F3 = F4 on (0,0): a covering pair, unstable everywhere.
    let covering = r#"{"m1":0,"m2":0,"flags":[["1","0"],["1","0"],["0","1"],["0","1"]],
        "u":{"deg":2,"coeffs":["0","0","0"]},"v":{"deg":2,"coeffs":["0","0","0"]},"w":{"deg":2,"coeffs":["0","0","0"]}}"#;
    for beta in [
        "1/10,2/10,3/10,5/10",
        "9/10,1/20,1/20,1/20",
        "1/3,1/3,1/3,1/5",
    ] {
        let v = json(&run_stdin(
            &[
                "stability",
                "--input",
                "-",
                "--beta",
                beta,
                "--format",
                "json",
            ],
            covering,
        ));
        assert_eq!(v["verdict"]["verdict"], "unstable", "{beta}");
    }

    let bad = r#"{"m1":0,"m2":0,"flags":[["0","1"],["1","0"],["1","0"],["1","0"]],
        "u":{"deg":2,"coeffs":["0","0","0"]},"v":{"deg":2,"coeffs":["0","1","-1"]},"w":{"deg":2,"coeffs":["0","0","0"]}}"#;
    let o = run_stdin(
        &["stability", "--input", "-", "--beta", "1/10,2/10,3/10,5/10"],
        bad,
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mark 1"));
}

#[test]
fn verify_is_clean_and_deterministic() {
    let a = run(&[
        "verify",
        "--samples",
        "60",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert!(a.status.success());
    assert_eq!(json(&a)["failures"], 0);
    let b = run(&[
        "verify",
        "--samples",
        "60",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let deep = run(&[
        "verify",
        "--samples",
        "10",
        "--parity",
        "odd",
        "--deep",
        "--format",
        "json",
    ]);
    assert!(deep.status.success());
    assert!(!json(&deep)["table"].as_array().unwrap().is_empty());
}
