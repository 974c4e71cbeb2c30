use std::path::PathBuf;
use std::process::{Command, Output};

fn intprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intprop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("intprop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn cubes_row() {
    let o = intprop(&["--bench", "cubes", "--approach", "1a", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("x1=1 x2=2 x3=3 x4=4 n=100"), "{text}");
    let row = text.lines().find(|l| l.starts_with("cubes ")).unwrap();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(&cols[..5], ["cubes", "1a", "5", "14", "167"]);
}

#[test]
fn model_file_with_json_stats() {
    let model = scratch_file(
        "m.csp",
        "var x in [0..5];\nvar y in [0..5];\nx*y = 4;\nx != y;\n",
    );
    let json = model.with_file_name("out.json");
    let o = intprop(&[
        "--model",
        model.to_str().unwrap(),
        "--approach",
        "3c,1b",
        "--all",
        "--stats-json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(&json).unwrap();
    for field in [
        "\"nvar\"",
        "\"ndrf\"",
        "\"nodes\"",
        "\"activated\"",
        "\"percent_effective\"",
        "\"mult_i\"",
        "\"div_q\"",
    ] {
        assert!(text.contains(field), "{field} missing in {text}");
    }
    assert!(text.contains("\"approach\": \"3c\"") && text.contains("\"approach\": \"1b\""));
    assert!(text.contains("\"solutions\": 2"));
}

#[test]
fn maximize_model() {
    let model = scratch_file(
        "opt.csp",
        "var x in [1..10];\nvar y in [1..10];\nx + y <= 12;\nmaximize x*y;\n",
    );
    let o = intprop(&[
        "--model",
        model.to_str().unwrap(),
        "--maximize",
        "--approach",
        "2a",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("maximum: 36 at x=6 y=6"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        intprop(&["--bench", "cubes", "--approach", "4z"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(intprop(&["--bench", "nope"]).status.code(), Some(1));
    assert_eq!(intprop(&["--all"]).status.code(), Some(1));
    assert_eq!(
        intprop(&["--bench", "cubes", "--all", "--maximize"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        intprop(&["--bench", "cubes", "--schedule", "fifo"])
            .status
            .code(),
        Some(1)
    );

    let bad = scratch_file("bad.csp", "var x in [0..5];\nx + = 3;\n");
    let o = intprop(&["--model", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.csp:2"));

    let unbounded = scratch_file("unb.csp", "var x in Z;\nvar y in [0..3];\nx + y >= 2;\n");
    let o = intprop(&["--model", unbounded.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`x`"));

    let empty = scratch_file(
        "none.csp",
        "var x in [1..9];\nvar y in [1..9];\nvar z in [1..9];\n100*x*y - 10*y*z = 212;\n",
    );
    let o = intprop(&["--model", empty.to_str().unwrap(), "--approach", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("solutions: 0"));
}

#[test]
fn node_limit_and_schedule() {
    let o = intprop(&[
        "--bench",
        "kyoto",
        "--approach",
        "3c",
        "--node-limit",
        "50",
        "--schedule",
        "cycling",
        "--quiet",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("kyoto ")).unwrap();
    assert_eq!(row.split_whitespace().nth(4), Some("50"));
}

#[test]
fn lists_benchmarks() {
    let o = intprop(&["--list"]);
    assert_eq!(
        stdout(&o).split_whitespace().collect::<Vec<_>>(),
        ["cubes", "opt", "fractions1", "fractions2", "kyoto"]
    );
}
