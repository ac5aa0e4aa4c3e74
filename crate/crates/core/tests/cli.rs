use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

fn tautrec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautrec"))
        .args(args)
        .env_remove("TAUTREC_CACHE")
        .output()
        .expect("binary runs")
}

fn with_env_cache(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautrec"))
        .args(args)
        .env("TAUTREC_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let o = tautrec(&["eval", "--i-points", "3", "--c-tilde", "5", "--psi", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"m\":3,\"ctilde\":5,\"exps\":[0,0],\"num\":\"3\",\"den\":\"4\"}\n"
    );

    let o = tautrec(&["eval", "--i-points", "0", "--c-tilde", "0", "--psi", "1"]);
    assert_eq!(
        stdout(&o),
        "{\"m\":0,\"ctilde\":0,\"exps\":[1],\"num\":\"1\",\"den\":\"24\"}\n"
    );

    let o = tautrec(&["eval", "--i-points", "2", "--c-tilde", "2", "--psi", "1"]);
    assert!(stdout(&o).ends_with("\"num\":\"1\",\"den\":\"12\"}\n"));
}

#[test]
fn undefined_space_exits_3() {
    let o = tautrec(&["eval", "--i-points", "0", "--c-tilde", "0", "--psi"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(
        tautrec(&["eval", "--i-points", "0", "--c-tilde", "0"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "--c-tilde", "1"][..],
        &["eval", "--i-points", "-1", "--c-tilde", "1"],
        &["eval", "--i-points", "1", "--c-tilde", "1", "--psi", "1,,2"],
        &["table", "--max-dim", "x"],
        &["verify", "nothing"],
        &["verify", "corollary", "--max-i", "0"],
    ] {
        assert_eq!(tautrec(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn table_examples() {
    let o = tautrec(&["table", "--max-dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("m,ctilde,exps,num,den\n"));
    assert!(text.lines().any(|l| l == "1,1,,1,24"));
    assert!(text.lines().any(|l| l == "0,0,\"1,1\",1,24"));
    assert!(stdout(&tautrec(&["table", "--max-dim", "1"]))
        .lines()
        .any(|l| l == "0,0,1,1,24"));
}

/// Distinct (m, c~, sorted exponents) with 1 <= m + n <= d and the degree
/// equal to the dimension, found by trying every tuple.
fn brute_force_key_count(d: u32) -> usize {
    let mut keys = BTreeSet::new();
    for m in 0..=d {
        for n in 0..=d - m {
            let dim = m + n;
            if dim == 0 {
                continue;
            }
            let total = (dim + 1).pow(n);
            for code in 0..total {
                let mut exps: Vec<u32> = (0..n)
                    .map(|k| code / (dim + 1).pow(k) % (dim + 1))
                    .collect();
                let s: u32 = exps.iter().sum();
                if s > dim {
                    continue;
                }
                exps.sort_unstable();
                keys.insert((m, dim - s, exps));
            }
        }
    }
    keys.len()
}

#[test]
fn table_row_count_matches_brute_force() {
    for d in 1..=4 {
        let rows = stdout(&tautrec(&["table", "--max-dim", &d.to_string()]))
            .lines()
            .count()
            - 1;
        assert_eq!(rows, brute_force_key_count(d), "max-dim {d}");
    }
}

#[test]
fn verify_examples() {
    for args in [
        &["verify", "corollary", "--max-i", "6", "--max-j", "6"][..],
        &["verify", "strata", "--max-size", "5"],
        &[
            "verify",
            "confluence",
            "--samples",
            "200",
            "--seed",
            "42",
            "--max-dim",
            "10",
        ],
        &["verify", "bases", "--limit", "7"],
    ] {
        let o = tautrec(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["failures"], serde_json::json!([]));
        assert!(report["cases"].as_u64().unwrap() > 0);
    }
}

#[test]
fn cache_flag_and_env_agree() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let args = ["eval", "--i-points", "2", "--c-tilde", "3", "--psi", "1,0"];
    let mut with_flag = args.to_vec();
    with_flag.extend(["--cache", a.to_str().unwrap()]);
    let o1 = tautrec(&with_flag);
    let o2 = with_env_cache(&args, &b);
    assert_eq!(o1.stdout, o2.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!std::fs::read(&a).unwrap().is_empty());
}

#[test]
fn empty_cache_file_is_fine() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.jsonl");
    std::fs::write(&path, "").unwrap();
    let o = tautrec(&["table", "--max-dim", "2", "--cache", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn corrupt_cache_exits_4_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(
        &path,
        "{\"m\":1,\"ct\":1,\"exps\":[],\"num\":\"1\",\"den\":\"24\"}\n{\"m\":2,\"ct\":2,\"exps\":[1],\"num\":\"1\",\"den\":\"0\"}\n",
    )
    .unwrap();
    let o = tautrec(&[
        "eval",
        "--i-points",
        "1",
        "--c-tilde",
        "1",
        "--cache",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn unwritable_cache_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("cache.jsonl");
    let o = tautrec(&["table", "--max-dim", "2", "--cache", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!o.stderr.is_empty());
}
