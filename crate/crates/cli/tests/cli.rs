use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lucas-hill"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn keygen(dir: &TempDir, extra: &[&str]) -> Output {
    let (pk, sk) = (path(dir, "pk"), path(dir, "sk"));
    let mut args = vec!["keygen", "--out-pub", &pk, "--out-sec", &sk];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn keygen_writes_key_files() {
    let dir = TempDir::new().unwrap();
    let out = keygen(&dir, &["--p", "37", "--alpha", "17", "--d", "10"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "pk=(37,17,28)\n");
    assert_eq!(fs::read_to_string(dir.path().join("pk")).unwrap(), "p=37\ne1=17\ne2=28\n");
    assert_eq!(fs::read_to_string(dir.path().join("sk")).unwrap(), "p=37\nd=10\n");
}

#[test]
fn keygen_defaults_to_smallest_root() {
    let dir = TempDir::new().unwrap();
    let out = keygen(&dir, &["--p", "37"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("pk=(37,2,"));
}

#[test]
fn keygen_rejects_composite() {
    let dir = TempDir::new().unwrap();
    let out = keygen(&dir, &["--p", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
    assert!(!Path::new(&path(&dir, "pk")).exists());
}

fn example_keys() -> TempDir {
    let dir = TempDir::new().unwrap();
    assert!(keygen(&dir, &["--p", "37", "--alpha", "17", "--d", "10"]).status.success());
    dir
}

#[test]
fn encrypt_then_decrypt() {
    let dir = example_keys();
    let (pk, sk, env) = (path(&dir, "pk"), path(&dir, "sk"), path(&dir, "env"));
    let out = run(&["encrypt", "--pub", &pk, "--e", "23", "--msg", "NOBLE2022", "--out", &env]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "s=18\nE65BY OZS\n");
    assert_eq!(
        fs::read_to_string(&env).unwrap(),
        "s=18\nc=4,32,31,1,24,36,14,25,18\n"
    );

    let out = run(&["decrypt", "--sec", &sk, "--env", &env]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "NOBLE2022\n");
}

#[test]
fn lowercase_and_padding() {
    let dir = example_keys();
    let (pk, sk, env) = (path(&dir, "pk"), path(&dir, "sk"), path(&dir, "env"));
    let upper = run(&["encrypt", "--pub", &pk, "--e", "23", "--msg", "HELLO", "--out", &env]);
    let lower = run(&["encrypt", "--pub", &pk, "--e", "23", "--msg", "hello", "--out", &env]);
    assert_eq!(stdout(&upper), stdout(&lower));
    let out = run(&["decrypt", "--sec", &sk, "--env", &env]);
    // five symbols pad to two blocks of three
    assert_eq!(stdout(&out), "HELLO \n");
}

#[test]
fn empty_message() {
    let dir = example_keys();
    let (pk, sk, env) = (path(&dir, "pk"), path(&dir, "sk"), path(&dir, "env"));
    let out = run(&["encrypt", "--pub", &pk, "--e", "23", "--msg", "", "--out", &env]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&env).unwrap(), "s=18\nc=\n");
    assert_eq!(stdout(&run(&["decrypt", "--sec", &sk, "--env", &env])), "\n");
}

#[test]
fn symbols_for_other_moduli() {
    let dir = TempDir::new().unwrap();
    assert!(keygen(&dir, &["--p", "101", "--d", "7"]).status.success());
    let (pk, sk, env) = (path(&dir, "pk"), path(&dir, "sk"), path(&dir, "env"));
    let refused = run(&["encrypt", "--pub", &pk, "--e", "3", "--msg", "HI", "--out", &env]);
    assert_eq!(refused.status.code(), Some(2));

    let mut e = 2;
    let out = loop {
        let es = e.to_string();
        let out = run(&["encrypt", "--pub", &pk, "--e", &es, "--symbols", "1,2,100", "--out", &env]);
        if out.status.success() {
            break out;
        }
        assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
        e += 1;
    };
    assert!(stdout(&out).starts_with("s="));
    let plain = stdout(&run(&["decrypt", "--sec", &sk, "--env", &env]));
    assert!(plain.starts_with("1,2,100"), "{plain}");
}

#[test]
fn degenerate_lambda_is_protocol_error() {
    let dir = example_keys();
    let (pk, env) = (path(&dir, "pk"), path(&dir, "env"));
    let out = run(&["encrypt", "--pub", &pk, "--e", "18", "--msg", "A", "--out", &env]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("choose a different e"));
}

#[test]
fn decrypt_errors() {
    let dir = example_keys();
    let (sk, env) = (path(&dir, "sk"), path(&dir, "env"));
    let missing = run(&["decrypt", "--sec", &path(&dir, "nope"), "--env", &env]);
    assert_eq!(missing.status.code(), Some(4));

    fs::write(&env, "s=18\nc=4,32,37\n").unwrap();
    let out = run(&["decrypt", "--sec", &sk, "--env", &env]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside the alphabet"));

    fs::write(&env, "garbage").unwrap();
    assert_eq!(run(&["decrypt", "--sec", &sk, "--env", &env]).status.code(), Some(2));
}

#[test]
fn corrupted_signature_garbles() {
    let dir = example_keys();
    let (sk, env) = (path(&dir, "sk"), path(&dir, "env"));
    // s=19 also gives lambda = 19^10 mod 37 = 3, so the blocks still align
    fs::write(&env, "s=19\nc=4,32,31,1,24,36,14,25,18\n").unwrap();
    let out = run(&["decrypt", "--sec", &sk, "--env", &env]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "BMN2UN29A\n");
}

#[test]
fn seq_prints_tab_separated_terms() {
    let out = run(&["seq", "--k", "3", "--from", "-1", "--to", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "-1\t-1\n0\t3\n1\t1\n2\t3\n3\t7\n4\t11\n5\t21\n6\t39\n");
    let fib = run(&["seq", "--k", "2", "--from", "0", "--to", "4", "--family", "fibonacci"]);
    assert_eq!(stdout(&fib), "0\t0\n1\t1\n2\t1\n3\t2\n4\t3\n");
    assert_eq!(run(&["seq", "--k", "1", "--from", "0", "--to", "3"]).status.code(), Some(2));
}

#[test]
fn matrix_prints_rows() {
    let out = run(&["matrix", "--k", "3", "--n", "18", "--p", "37"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "9 17 35\n35 11 19\n19 16 29\n");
    assert_eq!(run(&["matrix", "--k", "65", "--n", "1", "--p", "37"]).status.code(), Some(2));
    assert_eq!(run(&["matrix", "--k", "3", "--n", "1", "--p", "38"]).status.code(), Some(2));
}

#[test]
fn analyze_reports_keyspace() {
    let out = run(&["analyze", "--lambda", "2", "--p", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("lambda=2 p=2 gl_order=6 magnitude=10^0"));
    assert!(text.contains("remark:"));
}

#[test]
fn exchange_demo_default_and_wrong_key() {
    let out = run(&["exchange-demo"]);
    assert!(out.status.success());
    assert!(stdout(&out).trim_end().ends_with("MATCH: NOBLE2022"));

    let out = run(&["exchange-demo", "--wrong-d", "11"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("MISMATCH"));
}

#[test]
fn exchange_demo_random_trials() {
    let out = run(&["exchange-demo", "--trials", "5", "--seed", "9"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("\nMATCH: ").count(), 5);
}
