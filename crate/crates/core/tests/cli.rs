use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use idq::io::DictionaryFile;
use idq::{QueryEngine, QueryKind};

fn idq(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idq")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const DICT: &str = "11 4\nabracadabra\n1 4\n8 11\n4 4\n2 3\n";

#[test]
fn build_then_query_reproduces_the_engine() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("dict.txt"), DICT).unwrap();
    let built = idq(&["build", "dict.txt", "abra.idx"], dir.path());
    assert!(built.status.success(), "{}", String::from_utf8_lossy(&built.stderr));
    let stats = stdout(&built);
    assert!(stats.contains("n=11\n") && stats.contains("fragments=4\n") && stats.contains("patterns_distinct=3\n"));

    let dict = DictionaryFile::parse(DICT.as_bytes()).unwrap();
    let engine = QueryEngine::build(dict.text, &dict.fragments).unwrap();
    let mut queries = String::new();
    let mut want = String::new();
    for kind in QueryKind::ALL {
        for (i, j) in [(1, 11), (1, 4), (2, 9), (5, 5), (6, 11)] {
            queries += &format!("{} {i} {j}\n", kind.keyword());
            want += &format!("{}\n", engine.query(kind, i, j).unwrap());
        }
    }
    fs::write(dir.path().join("q.txt"), queries).unwrap();
    let answered = idq(&["query", "abra.idx", "q.txt"], dir.path());
    assert!(answered.status.success());
    assert_eq!(stdout(&answered), want);
    assert!(want.starts_with("1\n"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("dict.txt"), DICT).unwrap();
    fs::write(dir.path().join("short.txt"), "11 1\nabra\n1 2\n").unwrap();
    fs::write(dir.path().join("q.txt"), "COUNT 3 2\n").unwrap();
    assert!(idq(&["build", "dict.txt", "a.idx"], dir.path()).status.success());

    for args in [
        vec!["build", "missing.txt", "b.idx"],
        vec!["build", "short.txt", "b.idx"],
        vec!["query", "a.idx", "q.txt"],
        vec!["query", "dict.txt", "q.txt"],
        vec!["bench", "--sizes", "0"],
        vec!["verify", "dict.txt", "--spans", "some"],
    ] {
        let out = idq(&args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_passes_with_and_without_fragments() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("empty.txt"), "5 0\nabbab\n").unwrap();
    fs::write(dir.path().join("dict.txt"), DICT).unwrap();
    let out = idq(&["verify", "empty.txt"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "checked=75\nmismatches=0\n");
    let out = idq(&["verify", "dict.txt", "--spans", "random:40", "--seed", "9"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "checked=200\nmismatches=0\n");
}

#[test]
fn dump_reads_dictionaries_and_indexes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("abbab.txt"), "5 0\nabbab\n").unwrap();
    assert!(idq(&["build", "abbab.txt", "abbab.idx"], dir.path()).status.success());
    let a = stdout(&idq(&["dump", "abbab.txt"], dir.path()));
    let b = stdout(&idq(&["dump", "abbab.idx"], dir.path()));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 3);
    assert!(a.contains("rep=1,5 occ=1 cols=1..3 top=5 A=3,3,4"));
}

#[test]
fn bench_prints_one_line_per_size_and_kind() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["bench", "--sizes", "40,80", "--queries", "5", "--report-queries", "2", "--passes", "1", "--builds", "1"];
    let out = idq(&args, dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains("build_ns=")).count(), 2);
    assert_eq!(text.lines().filter(|l| l.contains(" kind=")).count(), 10);
    for kind in QueryKind::ALL {
        assert!(text.contains(&format!("n=80 kind={} median_ns=", kind.keyword())));
    }
}
