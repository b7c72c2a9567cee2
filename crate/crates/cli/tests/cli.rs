use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn aqarith(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqarith")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_aqarith"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    for (args, code) in [
        (&["eq", "1+2", "1+(2)"][..], 0),
        (&["eq", "1+2", "2+1"], 1),
        (&["prove", "1+1", "2"], 0),
        (&["prove", "1", "2"], 1),
        (&["parse", "1+"], 1),
        (&["eval", "--backend", "peano", "-1"], 1),
        (&["summand", "1+2", "5"], 1),
        (&["paradox", "--policy", "naive"], 0),
        (&["eq", "--level", "bogus", "1", "1"], 2),
        (&["paradox", "--level", "value"], 2),
        (&["iso", "--backend", "decimal"], 2),
        (&["frobnicate"], 2),
    ] {
        let o = aqarith(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn errors_are_structured() {
    let o = aqarith(&["summand", "1+2", "5"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error: AqError::IndexOutOfRange: "), "{err}");

    let o = aqarith(&["--format", "json", "parse", "1+"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "AqError::Parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("offset 2"));
}

#[test]
fn json_output_is_canonical() {
    let cases: &[&[&str]] = &[
        &["parse", "((1)+2)+ -3"],
        &["eq", "--level", "aq-bp", "0", "(0)"],
        &["eval", "--backend", "eqc", "3+(-5)"],
        &["normalize", "9+9+9"],
        &["normalize", "--trace", "12+(-30)"],
        &["prove", "--trace", "2+3", "5"],
        &["prove", "1", "2"],
        &["split", "1+2"],
        &["summand", "1+2+5", "2"],
        &["subst", "1+2", "X", "3+X"],
        &["let", "x", "1+2", "(3+x)"],
        &["tuple", "(1,2;3)"],
        &["iso", "--backend", "decimal", "--backend", "ordinal", "--bound", "5"],
        &["paradox", "--policy", "sumterm", "--script", "spaces"],
        &["regress"],
        &["summand", "1+2", "5"],
    ];
    for args in cases {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let out = stdout(&aqarith(&full));
        assert!(out.ends_with('\n'), "{args:?}");
        let text = out.trim_end_matches('\n');
        let v: serde_json::Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
        assert_eq!(serde_json::to_string(&v).unwrap(), text, "{args:?}");
    }
}

#[test]
fn traces_pipe_into_check() {
    for args in [&["normalize", "--trace", "(17+(-1))+5"][..], &["prove", "--trace", "12+(-30)", "-18"]] {
        let trace = stdout(&aqarith(args));
        for line in trace.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&v).unwrap(), line);
        }
        let o = with_stdin(&["check", "-"], &trace);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(" valid: "), "{}", stdout(&o));
    }
}

#[test]
fn tampered_derivations_are_rejected() {
    let trace = stdout(&aqarith(&["prove", "--trace", "2+3", "5"]));
    let bad = trace.replacen("\"result\":\"3+2\"", "\"result\":\"2+3\"", 1);
    assert_ne!(bad, trace);
    let o = with_stdin(&["check", "-"], &bad);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("invalid at step 1"), "{}", stdout(&o));
}

#[test]
fn terms_can_come_from_stdin() {
    let o = with_stdin(&["normalize", "-"], "40+2\n");
    assert_eq!(stdout(&o), "42\n");
    let o = with_stdin(&["paradox", "--policy", "sumterm", "--script", "-"], "1+2 =_AQ 1+(2) BY aq-eq\n");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("=> admitted"));
}

#[test]
fn config_file_is_honoured() {
    let dir = std::env::temp_dir().join(format!("aqarith-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.txt");
    std::fs::write(&path, "# tiny\nordinal_bound = 3\n").unwrap();
    let run = |term: &str| {
        Command::new(env!("CARGO_BIN_EXE_aqarith"))
            .args(["eval", "--backend", "ordinal", term])
            .env("AQARITH_CONFIG", &path)
            .output()
            .unwrap()
    };
    assert_eq!(run("3").status.code(), Some(0));
    assert_eq!(run("4").status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "paradox", "--policy", "pragmatic", "--script", "arithmetic"];
    assert_eq!(stdout(&aqarith(&args)), stdout(&aqarith(&args)));
}

/// Every `console` block of the README: `$ aqarith ...` lines followed by
/// their expected standard output.
#[test]
fn readme_examples() {
    let readme = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../README.md")).unwrap();
    let mut blocks = Vec::new();
    let mut current: Option<Vec<&str>> = None;
    for line in readme.lines() {
        match (&mut current, line) {
            (None, "```console") => current = Some(Vec::new()),
            (Some(_), "```") => blocks.push(current.take().unwrap()),
            (Some(b), l) => b.push(l),
            _ => {}
        }
    }
    assert!(!blocks.is_empty());
    let mut commands = 0;
    for block in blocks {
        let mut i = 0;
        while i < block.len() {
            let cmd = block[i].strip_prefix("$ aqarith ").unwrap_or_else(|| panic!("not a command: {}", block[i]));
            let mut expected = String::new();
            i += 1;
            while i < block.len() && !block[i].starts_with("$ ") {
                expected.push_str(block[i]);
                expected.push('\n');
                i += 1;
            }
            let args = shlex::split(cmd).unwrap();
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let o = aqarith(&args);
            assert!(matches!(o.status.code(), Some(0 | 1)), "{cmd}");
            assert_eq!(stdout(&o), expected, "$ aqarith {cmd}");
            commands += 1;
        }
    }
    assert!(commands >= 20, "{commands}");
}
