use std::process::Command;

use fillin_cli::{run, EXIT_NO, EXIT_USAGE, EXIT_YES};
use serde_json::Value;

const C4: &str = "4 4\n0 1\n1 2\n2 3\n3 0\n";
const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

fn call(args: &[&str], input: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fillin").chain(args.iter().copied());
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(s: &str) -> Value {
    assert!(s.ends_with('\n'));
    serde_json::from_str(s).unwrap()
}

#[test]
fn solve_c4() {
    let (code, out, _) = call(&["solve", "--k", "1"], C4);
    assert_eq!(code, EXIT_YES);
    let v = json(&out);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["answer", "fill", "k", "stats"]);
    assert_eq!(v["answer"], "YES");
    assert_eq!(v["k"], 1);
    assert_eq!(v["fill"], serde_json::json!([[0, 2]]));

    let (code, out, _) = call(&["solve", "--k", "0"], C4);
    assert_eq!(code, EXIT_NO);
    assert_eq!(json(&out)["answer"], "NO");
}

#[test]
fn text_output_and_dimacs_labels() {
    let dimacs = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
    let (code, out, _) = call(&["solve", "--k", "2", "--emit", "text"], dimacs);
    assert_eq!(code, EXIT_YES);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "YES");
    assert_eq!(lines.len(), 3);
    for l in &lines[1..] {
        for id in l.split(' ') {
            let id: usize = id.parse().unwrap();
            assert!((1..=5).contains(&id));
        }
    }
}

#[test]
fn chordality_and_triangulation() {
    assert_eq!(call(&["check-chordal"], K4).0, EXIT_YES);
    let (code, out, _) = call(&["check-chordal"], C4);
    assert_eq!(code, EXIT_NO);
    assert_eq!(json(&out)["cycle"].as_array().unwrap().len(), 4);
    let (code, out, _) = call(&["triangulate"], C4);
    assert_eq!(code, EXIT_YES);
    assert_eq!(json(&out)["size"], 1);
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(call(&["solve"], C4).0, EXIT_USAGE);
    assert_eq!(call(&["solve", "--k", "x"], C4).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"], C4).0, EXIT_USAGE);
    let (code, _, err) = call(&["solve", "--k", "1"], "2 1\n0 2\n");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 2"));
    assert_eq!(call(&["sandwich", "--k", "1"], C4).0, EXIT_USAGE);
    assert_eq!(
        call(&["solve", "--k", "1", "--input", "/nonexistent/file"], "").0,
        EXIT_USAGE
    );
}

#[test]
fn sandwich_colored_chain() {
    let input = format!("{C4}---\n1 3\n");
    let (code, out, _) = call(&["sandwich", "--k", "1"], &input);
    assert_eq!(code, EXIT_YES);
    assert_eq!(json(&out)["fill"], serde_json::json!([[1, 3]]));
    assert_eq!(
        call(&["sandwich", "--k", "3"], &format!("{C4}---\n")).0,
        EXIT_NO
    );

    let two_colors = format!("{C4}---\nc 0 0\nc 1 1\nc 2 0\nc 3 1\n");
    assert_eq!(call(&["colored", "--k", "2"], &two_colors).0, EXIT_NO);
    let distinct = format!("{C4}---\nc 0 0\nc 1 1\nc 2 2\nc 3 3\n");
    assert_eq!(call(&["colored", "--k", "1"], &distinct).0, EXIT_YES);

    let two_k2 = "4 2\n0 2\n1 3\n---\nleft 0 1\n";
    let (code, out, _) = call(&["chain", "--k", "1"], two_k2);
    assert_eq!(code, EXIT_YES);
    assert_eq!(json(&out)["fill"].as_array().unwrap().len(), 1);
    assert_eq!(call(&["chain", "--k", "0"], two_k2).0, EXIT_NO);
}

#[test]
fn kernel_pmcs_oracle() {
    let (code, out, _) = call(&["kernelize", "--k", "1"], C4);
    assert_eq!(code, EXIT_YES);
    let v = json(&out);
    assert_eq!(v["status"], "REDUCED");
    assert_eq!(v["vertices"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(call(&["kernelize", "--k", "0"], C4).0, EXIT_NO);
    let (_, out, _) = call(&["kernelize", "--k", "0"], K4);
    assert_eq!(json(&out)["status"], "TRIVIAL_YES");

    let (code, out, _) = call(&["pmcs", "--k", "1"], C4);
    assert_eq!(code, EXIT_YES);
    assert_eq!(json(&out)["pmcs"].as_array().unwrap().len(), 4);

    let c5 = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
    let (code, out, _) = call(&["oracle"], c5);
    assert_eq!(code, EXIT_YES);
    assert_eq!(json(&out)["mfi"], 2);
    assert_eq!(call(&["oracle", "--k", "1"], c5).0, EXIT_NO);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = call(&["selftest", "--count", "40", "--seed", "7"], "");
    assert_eq!(code, EXIT_YES, "{out}");
    assert!(out.ends_with("40 of 40 agree\n"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fillin");
    let dir = std::env::temp_dir().join(format!("fillin-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c4.txt");
    std::fs::write(&path, C4).unwrap();
    let path = path.to_str().unwrap();
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["solve", "--k", "1", "--input", path]), Some(0));
    assert_eq!(status(&["solve", "--k", "0", "--input", path]), Some(1));
    assert_eq!(status(&["solve", "--input", path]), Some(2));
    assert_eq!(status(&["--version"]), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}
