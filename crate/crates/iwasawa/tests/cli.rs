//! The installed binary, end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn iwasawa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwasawa")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const ALL: [&str; 5] = [
    "--assume-rank0",
    "--assume-mu0",
    "--assume-lambda0",
    "--assume-sha-finite",
    "--assume-torsion-trivial",
];

#[test]
fn lkr_worked_example() {
    let mut args = vec!["criterion", "lkr", "--curve", "0 0 0 0 42", "--p", "5", "--q", "31"];
    args.extend(ALL);
    let o = iwasawa(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("31 = 1 (mod 5)"));
    assert!(text.contains("good reduction at 31, #E(F_31) = 25, divisible by 5"));
    assert!(text.contains("verdict: SelmerBecomesNonzero"));
    assert!(text.contains("Sel_{5^inf}(E/Q) = Sha(E/Q)[5^inf] = 0"));
}

#[test]
fn lkr_without_assumptions_is_input_error() {
    let o = iwasawa(&["criterion", "lkr", "--curve", "0 0 0 0 42", "--p", "5", "--q", "31"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank"));
}

#[test]
fn lkr_no_such_extension() {
    let mut args = vec!["criterion", "lkr", "--curve", "0 0 0 0 42", "--p", "5", "--q", "7"];
    args.extend(ALL);
    assert_eq!(iwasawa(&args).status.code(), Some(1));
}

#[test]
fn lambda_stable_cm_example() {
    let mut args = vec!["criterion", "lambda-stable", "--curve", "0 0 0 -1 0", "--p", "5", "--conductor", "11"];
    args.extend(ALL);
    let o = iwasawa(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: Stable"));
}

#[test]
fn lambda_jump_exits_not_met_and_writes_csv() {
    // 11 is split multiplicative on 11a3 and 11 = 1 mod 5
    let out = scratch("jump.csv");
    let o = iwasawa(&[
        "criterion", "lambda-stable", "--curve", "0 -1 1 0 0 11a3 rank=0 mu=0 lambda=0",
        "--p", "5", "--q", "11", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv, "curve,p,conductor,verdict,reasons\n11a3,5,11,Jump,enemy:11\n");
}

#[test]
fn record_contradicting_a_flag_is_rejected() {
    let mut args = vec!["criterion", "lkr", "--curve", "0 0 1 -1 0 37a1 rank=1", "--p", "5", "--q", "11"];
    args.extend(ALL);
    assert_eq!(iwasawa(&args).status.code(), Some(1));
}

#[test]
fn scan_csv_and_errors() {
    let o = iwasawa(&["scan", "--curve", "0 0 0 -1 0", "--p", "5", "--xbound", "100000", "--workers", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,X,enemy_split,enemy_ord,friendly_ord,friendly_ss,neutral,pi_X"));
    let row: Vec<u64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row[7], 9592);
    assert!(row[5] > 0, "friendly supersingular count {row:?}");
    assert_eq!(iwasawa(&["scan", "--curve", "0 0 0 0 0", "--p", "5", "--xbound", "100"]).status.code(), Some(1));
    assert_eq!(
        iwasawa(&["scan", "--curve", "0 0 0 -1 0", "--p", "5", "--xbound", "100000000000"]).status.code(),
        Some(2)
    );
}

#[test]
fn curve_file_input() {
    let path = scratch("curves.txt");
    std::fs::write(&path, "# two curves\n0 -1 1 0 0 11a3\n0 0 1 -1 0 37a1\n").unwrap();
    let o = iwasawa(&["tate", "--curve-file", path.to_str().unwrap(), "--q", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("11a3: prime=11 reduction=split multiplicative kodaira=I1"));
    assert!(text.contains("37a1: prime=11 reduction=good"));
    // scan wants a single curve
    let o = iwasawa(&["scan", "--curve-file", path.to_str().unwrap(), "--p", "5", "--xbound", "100"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn small_commands() {
    assert_eq!(stdout(&iwasawa(&["gl2-count", "--p", "5", "--mode", "bruteforce"])), "25\n");
    assert_eq!(stdout(&iwasawa(&["kida", "--lambda", "0", "--p", "5", "--profile", "P2:31:e=5"])), "8\n");
    let o = iwasawa(&["matsuno", "--curve", "0 0 0 -1 0", "--n", "2"]);
    assert!(stdout(&o).contains("primes = 3 5 7 11 13 17 19 23\n"));
    let o = iwasawa(&["table-expression", "--pmin", "4", "--pmax", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(iwasawa(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(iwasawa(&["--help"]).status.code(), Some(0));
}

#[test]
fn table_expression_to_file() {
    let out = scratch("table.csv");
    let o = iwasawa(&[
        "table-expression", "--pmin", "3", "--pmax", "7", "--xbound", "1000", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",1000")));
}
