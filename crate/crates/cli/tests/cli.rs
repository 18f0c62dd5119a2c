use std::fs;
use std::process::{Command, Output};

fn permalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permalg"))
        .args(args)
        .env_remove("PERMALG_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lyndon_count() {
    let o = permalg(&["lyndon", "--alphabet", "1,1", "--weight", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "count 5\n");
    let o = permalg(&["lyndon", "--alphabet", "1,1", "--weight", "5", "--list"]);
    assert_eq!(stdout(&o), "b1.1-b1.1-b1.1-b2.1\nb1.1-b2.1-b2.1\ncount 2\n");
}

#[test]
fn product_example() {
    let o = permalg(&["product", "--model", "sk-wr-a:2", "b1.1", "b1.1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2 b1.1-b1.1\n2 b2.1\n");
}

#[test]
fn product_from_element_files() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x");
    fs::write(&x, "1/2 b1.1\n").unwrap();
    let arg = format!("@{}", x.display());
    let o = permalg(&["product", "--model", "sk-wr-a:2", &arg, "b1.1"]);
    assert_eq!(stdout(&o), "1 b1.1-b1.1\n1 b2.1\n");
}

#[test]
fn custom_table() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("flat.table");
    fs::write(&t, "kind = wreath_A\nweight 1 = 2\nb1.1 : b1.1 | e\nb1.1 : e | b1.1\nb1.2 : b1.2 | e\nb1.2 : e | b1.2\n").unwrap();
    let o = permalg(&[
        "product",
        "--table",
        t.to_str().unwrap(),
        "b1.1-b1.2",
        "b1.1-b1.3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = permalg(&["product", "--table", t.to_str().unwrap(), "b1.1", "b1.2"]);
    assert_eq!(stdout(&o), "1 b1.2-b1.1\n1 b1.1-b1.2\n");
}

#[test]
fn transform_lucas() {
    let dir = tempfile::tempdir().unwrap();
    let fib = dir.path().join("fib.a");
    fs::write(&fib, "1\n1\n").unwrap();
    let o = permalg(&[
        "transform",
        "a2c",
        "--in",
        fib.to_str().unwrap(),
        "--order",
        "6",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\n3\n4\n7\n11\n18\n");
    let o = permalg(&["transform", "a2l", "--ones", "2", "--order", "8", "--csv"]);
    assert_eq!(stdout(&o), "1,1,1,1,2,2,4,5\n");
    let o = permalg(&["transform", "euler", "--ones", "1", "--order", "4", "--csv"]);
    assert_eq!(stdout(&o), "1,1,1,1\n");
}

#[test]
fn realizability_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("b");
    fs::write(&b, "2\n1\n").unwrap();
    let o = permalg(&[
        "transform",
        "realizable",
        "--in",
        b.to_str().unwrap(),
        "--order",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not realizable at 2: -1/2"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(permalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(permalg(&["product", "b1.1"]).status.code(), Some(2));
    assert_eq!(
        permalg(&["product", "--model", "nope:1", "b1.1", "b1.1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        permalg(&["kantor", "--d", "4", "--e", "2", "--f", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn kantor_and_ramsey() {
    let o = permalg(&[
        "kantor",
        "--d",
        "7",
        "--e",
        "2",
        "--f",
        "3",
        "--weighted",
        "--trials",
        "5",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS\td=7 e=2 f=3\texpected rank 21"));
    let o = permalg(&["kantor", "--d", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 22);
    let o = permalg(&["ramsey", "--model", "sk-wr-s:2", "--weight", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("PASS\n"));
    let o = permalg(&["verify", "--model", "sk-wr-a:2", "--m", "2", "--n", "1"]);
    assert!(o.status.success());
}

#[test]
fn deterministic_output_and_output_file() {
    let args = [
        "kantor",
        "--d",
        "6",
        "--weighted",
        "--trials",
        "3",
        "--seed",
        "9",
    ];
    let a = permalg(&args);
    let b = permalg(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report");
    let o = permalg(&[&args[..], &["--output", out.to_str().unwrap()]].concat());
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn verify_all_quick_tsv() {
    let o = permalg(&["verify-all", "--quick", "--format", "tsv"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines[1..]
        .iter()
        .all(|l| l.split('\t').nth(2) == Some("PASS")));
}
