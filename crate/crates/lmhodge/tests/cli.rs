use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lmhodge::corpus::sample_documents;
use lmhodge::document::Kind;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lmhodge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("lmhodge-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn subcommand(kind: Kind) -> Vec<&'static str> {
    match kind {
        Kind::Rmf => vec!["rmf"],
        Kind::Admissible => vec!["admissible"],
        Kind::Orbit => vec!["orbit-check"],
        Kind::Fan => vec!["fan-check"],
        Kind::Weakfan => vec!["weakfan-falsify"],
        Kind::NeronSigmaUpsilon => vec!["neron", "sigma-upsilon"],
        Kind::NeronKummer => vec!["neron", "kummer"],
        Kind::NeronB1 => vec!["neron", "b1"],
        Kind::NeronBuildFan => vec!["neron", "build-fan"],
        Kind::NeronProbe => vec!["neron", "probe"],
        Kind::Corpus => vec![],
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn sample_documents_are_reproducible_across_thread_counts() {
    let dir = scratch("samples");
    for (name, doc) in sample_documents() {
        let sub = subcommand(doc.kind);
        if sub.is_empty() {
            continue;
        }
        let path = write(&dir, &format!("{name}.json"), &doc.to_json());
        let go = |threads: &str| {
            let mut args = vec!["--threads", threads];
            args.extend(&sub);
            args.push(&path);
            run(&args)
        };
        let (a, b, c) = (go("1"), go("1"), go("4"));
        assert_eq!(a.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert_eq!(a.stdout, c.stdout, "{name}");
    }
}

#[test]
fn corpus_run_is_reproducible_and_writes_the_report() {
    let dir = scratch("corpus");
    let out = dir.join("report.json");
    let out = out.to_string_lossy();
    let a = run(&["--threads", "1", "corpus", "run", "7.2.1"]);
    let b = run(&["--threads", "4", "corpus", "run", "7.2.1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["--window", "-2:2", "--out", &out, "corpus", "run", "7.3.6"]);
    assert_eq!(c.status.code(), Some(0));
    let text = std::fs::read_to_string(&*out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn stdin_input_is_accepted() {
    use std::io::Write;
    let doc = sample_documents().into_iter().find(|(n, _)| *n == "neron-b1").unwrap().1;
    let mut child = bin().args(["neron", "b1", "-"]).stdin(std::process::Stdio::piped()).stdout(std::process::Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(doc.to_json().as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let dir = scratch("codes");
    assert_eq!(run(&["corpus", "run", "9.9.9"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let bad = write(&dir, "bad.json", "{\"kind\": \"rmf\"");
    assert_eq!(run(&["rmf", &bad]).status.code(), Some(3));
    let empty = write(&dir, "empty.json", r#"{"kind": "fan", "payload": {"flavor": "absolute", "cones": []}}"#);
    assert_eq!(run(&["fan-check", &empty]).status.code(), Some(3));
    assert_eq!(run(&["rmf", "/nonexistent/doc.json"]).status.code(), Some(3));
    assert_eq!(run(&["--window", "3:1", "corpus", "run", "7.2.1"]).status.code(), Some(3));
}
