use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn docmine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_docmine")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn baskets(dir: &Path) -> String {
    let p = dir.join("b.txt");
    fs::write(&p, "A B C\nA B\nA C\nB C\nA B C\n").unwrap();
    p.to_str().unwrap().to_string()
}

fn separable(dir: &Path, classes: usize, docs: usize) -> String {
    let out = dir.join("corpus");
    let spec = format!("classes={classes},docs={docs},vocab=120,mode=separable");
    let o = docmine(&["generate", "--synthetic", &spec, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    out.to_str().unwrap().to_string()
}

#[test]
fn mine_both_writes_identical_itemsets_and_separate_stats() {
    let tmp = tempfile::tempdir().unwrap();
    let b = baskets(tmp.path());
    let out = tmp.path().join("items");
    let o = docmine(&[
        "mine",
        "--input",
        &b,
        "--min-sup",
        "3",
        "--algo",
        "both",
        "--out",
        out.to_str().unwrap(),
        "--stats",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let t = fs::read_to_string(tmp.path().join("items.traditional")).unwrap();
    let m = fs::read_to_string(tmp.path().join("items.modified")).unwrap();
    assert_eq!(t, m);
    assert_eq!(t, "# L1\n4\tA\n4\tB\n4\tC\n# L2\n3\tA B\n3\tA C\n3\tB C\n");
    let ts = fs::read_to_string(tmp.path().join("items.traditional.stats")).unwrap();
    let ms = fs::read_to_string(tmp.path().join("items.modified.stats")).unwrap();
    assert!(ts.contains("# db_scans=3\n"));
    assert!(ms.contains("# db_scans=1\n"));
    assert_ne!(ts, ms);
}

#[test]
fn percentage_support_rounds_up() {
    let tmp = tempfile::tempdir().unwrap();
    let b = baskets(tmp.path());
    let pct = docmine(&["mine", "--input", &b, "--min-sup", "60%"]);
    let abs = docmine(&["mine", "--input", &b, "--min-sup", "3"]);
    assert_eq!(code(&pct), 0);
    assert_eq!(stdout(&pct), stdout(&abs));
}

#[test]
fn usage_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let b = baskets(tmp.path());
    assert_eq!(code(&docmine(&["mine", "--input", &b, "--min-sup", "0"])), 2);
    assert_eq!(code(&docmine(&["mine", "--input", &b, "--min-sup", "3", "--frobnicate"])), 2);
    assert_eq!(code(&docmine(&["mine", "--input", "/nonexistent/file", "--min-sup", "3"])), 2);
    assert_eq!(code(&docmine(&["cluster", "--input", &b, "--min-sup", "3", "--m", "1"])), 2);
    assert_eq!(code(&docmine(&["bench", "mining"])), 2);
}

#[test]
fn help_lists_flags_for_every_subcommand() {
    let cases: &[(&[&str], &[&str])] = &[
        (
            &["mine"],
            &["--input", "--min-sup", "--algo", "--out", "--stats", "--dump-db", "--stopwords", "--label-rule"],
        ),
        (
            &["cluster"],
            &["--refine", "--m", "--epsilon", "--max-iter", "--eval", "--dump-matrix", "--dump-seeds", "--trace"],
        ),
        (&["bench", "mining"], &["--sizes", "--repeats", "--synthetic", "--gnuplot", "--parallel"]),
        (&["bench", "cluster"], &["--sizes", "--techniques", "--synthetic"]),
        (&["generate"], &["--synthetic", "--out"]),
    ];
    for (cmd, flags) in cases {
        let mut args = cmd.to_vec();
        args.push("--help");
        let o = docmine(&args);
        assert_eq!(code(&o), 0);
        let text = stdout(&o);
        for f in *flags {
            assert!(text.contains(f), "{cmd:?} help lacks {f}");
        }
        assert!(text.contains("--threads") && text.contains("--seed"));
    }
}

#[test]
fn dump_db_writes_bit_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let b = baskets(tmp.path());
    let dump = tmp.path().join("db.txt");
    let o = docmine(&["mine", "--input", &b, "--min-sup", "2", "--dump-db", dump.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(dump).unwrap(), "111\n110\n101\n011\n111\n");
}

#[test]
fn separable_cluster_with_eval_scores_one() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = separable(tmp.path(), 2, 12);
    for refine in ["fcm", "kmeans", "vsm"] {
        let o = docmine(&["cluster", "--input", &corpus, "--min-sup", "4", "--refine", refine, "--eval"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let text = stdout(&o);
        assert!(text.contains("# overall_f=1.000000"), "{refine}: {text}");
        let body: Vec<&str> = text.lines().skip(1).take_while(|l| !l.starts_with('#')).collect();
        assert_eq!(body.len(), 12);
        let clusters: std::collections::BTreeSet<&str> = body.iter().map(|l| l.split(',').nth(1).unwrap()).collect();
        assert_eq!(clusters.len(), 2);
        if refine == "fcm" {
            assert!(text.starts_with("doc_id,cluster_id,u0,u1\n"));
        } else {
            assert!(text.starts_with("doc_id,cluster_id\n"));
        }
    }
}

#[test]
fn support_too_high_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = separable(tmp.path(), 2, 12);
    let o = docmine(&["cluster", "--input", &corpus, "--min-sup", "999"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("no clusters at this support"));
}

#[test]
fn cluster_debug_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = separable(tmp.path(), 2, 8);
    let p = |n: &str| tmp.path().join(n).to_str().unwrap().to_string();
    let o = docmine(&[
        "cluster",
        "--input",
        &corpus,
        "--min-sup",
        "4",
        "--dump-matrix",
        &p("m.tsv"),
        "--dump-seeds",
        &p("s.csv"),
        "--trace",
        &p("t.csv"),
        "--out",
        &p("a.csv"),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let seeds = fs::read_to_string(p("s.csv")).unwrap();
    assert!(seeds.starts_with("cluster_id,doc_id\n"));
    assert_eq!(seeds.lines().count(), 9);
    assert!(fs::read_to_string(p("t.csv")).unwrap().starts_with("iteration,objective\n0,"));
    let tsv = fs::read_to_string(p("m.tsv")).unwrap();
    assert_eq!(tsv.lines().next().unwrap().split('\t').count(), 8);
}

#[test]
fn stopword_list_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("c");
    fs::create_dir(&dir).unwrap();
    fs::write(dir.join("a.1"), "alpha beta").unwrap();
    fs::write(dir.join("a.2"), "alpha gamma").unwrap();
    let sw = tmp.path().join("sw.txt");
    fs::write(&sw, "alpha\n").unwrap();
    let with_env = Command::new(env!("CARGO_BIN_EXE_docmine"))
        .args(["mine", "--input", dir.to_str().unwrap(), "--min-sup", "1"])
        .env("DOCMINE_STOPWORDS", &sw)
        .output()
        .unwrap();
    assert_eq!(code(&with_env), 0);
    // Without alpha, no term is shared so no pair of documents is frequent.
    assert!(!stdout(&with_env).contains("# L2"));
    let plain = Command::new(env!("CARGO_BIN_EXE_docmine"))
        .args(["mine", "--input", dir.to_str().unwrap(), "--min-sup", "1"])
        .env_remove("DOCMINE_STOPWORDS")
        .output()
        .unwrap();
    assert!(stdout(&plain).contains("# L2\n1\ta.1 a.2\n"));
}

#[test]
fn bench_mining_rows_and_stdout() {
    let o = docmine(&[
        "bench",
        "mining",
        "--synthetic",
        "classes=2,docs=60,vocab=400,seed=1",
        "--sizes",
        "20,40",
        "--min-sup",
        "8",
        "--repeats",
        "1",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "algo,dataset,n_docs,min_sup,elapsed_ms,db_scans,candidates_total,candidates_pruned,tx_nulled,items_zeroed"
    );
    assert_eq!(lines.len(), 5);
    assert!(lines[1].contains("synthetic:classes=2;docs=60;vocab=400;seed=1"));
}

#[test]
fn bench_cluster_rows_and_file_output() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("c.csv");
    let o = docmine(&[
        "bench",
        "cluster",
        "--synthetic",
        "classes=3,docs=30,vocab=150,mode=separable",
        "--sizes",
        "30",
        "--min-sup",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "technique,dataset,n_docs,min_sup,k,f_measure,iterations,elapsed_ms");
    assert_eq!(lines.len(), 4);
    for l in &lines[1..] {
        assert_eq!(l.split(',').nth(5), Some("1.000000"));
    }
}

#[test]
fn global_seed_overrides_spec_seed() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    docmine(&["--seed", "9", "generate", "--synthetic", "docs=12,vocab=300,seed=1", "--out", a.to_str().unwrap()]);
    docmine(&["generate", "--synthetic", "docs=12,vocab=300,seed=9", "--out", b.to_str().unwrap()]);
    for e in fs::read_dir(&a).unwrap() {
        let name = e.unwrap().file_name();
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
    }
}
