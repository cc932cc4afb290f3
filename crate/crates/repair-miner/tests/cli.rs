//! End-to-end tests of the installed binary: exit codes, output formats,
//! determinism under a fixed seed, and the shipped scenario files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use repair_miner::corpus::{synthetic_corpus, ContentKind, Corpus, FilePair, SyntheticSpec, Transaction};
use repair_miner::syntax::Taxonomy;

fn bin() -> Command {
    let mut command = Command::new(env!("CARGO_BIN_EXE_repair-miner"));
    command.env_remove("REPAIR_MINER_WORKERS");
    command
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_lines(output: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(|line| serde_json::from_str(line).expect("record line is JSON"))
        .collect()
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn saved_synthetic(dir: &Path, spec: &SyntheticSpec) -> PathBuf {
    let corpus = synthetic_corpus(spec, Taxonomy::default_taxonomy());
    let path = dir.join("corpus.jsonl");
    corpus.save(&path).unwrap();
    path
}

#[test]
fn shipped_scenarios_reproduce_reference_attempt_counts() {
    let cases: [(&str, Vec<u64>); 3] = [
        ("gcd.scenario", vec![219, 185, 160, 180, 144, 120]),
        ("gcd-faultloc.scenario", vec![118]),
        ("two-action.scenario", vec![636_499]),
    ];
    for (name, expected) in cases {
        let path = scenario_path(name);
        let output = run(&["simulate", "--scenario", path.to_str().unwrap()]);
        assert!(output.status.success(), "{name}: {}", stderr_text(&output));
        let attempts: Vec<u64> = stdout_lines(&output)
            .iter()
            .map(|record| record["attempts"].as_u64().expect("finite attempts"))
            .collect();
        assert_eq!(attempts, expected, "{name}");
    }
}

#[test]
fn fixed_seed_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = saved_synthetic(dir.path(), &SyntheticSpec::default());
    let corpus = corpus.to_str().unwrap();

    let median = [
        "--seed", "17", "repair", "median", "--corpus", corpus, "--bag", "bfp", "--size", "2",
        "--trials", "2000",
    ];
    let first = run(&median);
    let second = run(&median);
    assert!(first.status.success(), "{}", stderr_text(&first));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());

    let crossval = ["crossval", "--corpus", corpus, "--heuristic", "eqp", "--sizes", "1,2"];
    let first = run(&crossval);
    let second = run(&crossval);
    assert!(first.status.success(), "{}", stderr_text(&first));
    assert_eq!(first.stdout, second.stdout);

    // Uniform single-change cells over the full type space sit at 29.
    let cells = stdout_lines(&first);
    assert!(cells
        .iter()
        .filter(|cell| cell["size"] == 1 && cell["evaluated"].as_u64().unwrap() > 0)
        .all(|cell| cell["median"] == 29));
}

#[test]
fn missing_inputs_exit_with_usage_code() {
    let output = run(&["stats", "freq", "--corpus", "/nonexistent/corpus.jsonl"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_text(&output).contains("does not exist"));

    let output = run(&["simulate", "--scenario", "/nonexistent/x.scenario"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn single_project_corpus_is_rejected_for_crossval() {
    let dir = tempfile::tempdir().unwrap();
    let spec = SyntheticSpec {
        projects: vec!["solo".into()],
        ..SyntheticSpec::default()
    };
    let corpus = saved_synthetic(dir.path(), &spec);
    let output = run(&["crossval", "--corpus", corpus.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_text(&output).contains("at least 2"));
}

#[test]
fn malformed_scenario_names_the_offending_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.scenario");
    std::fs::write(
        &path,
        r#"{
  "n_place": 4,
  "n_ast": 4,
  "operators": [
    {"p_insert": 0.33, "p_delete": 0.33, "p_swap": 0.33},
    {"p_insert": 0.50, "p_delete": 0.20, "p_swap": 0.20}
  ],
  "fix": [{"op": "insert", "node": 1, "place": 1}]
}"#,
    )
    .unwrap();
    let output = run(&["simulate", "--scenario", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_text(&output).contains("row 2"), "{}", stderr_text(&output));
}

#[test]
fn empty_bag_warns_but_still_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let spec = SyntheticSpec {
        max_changes: 3,
        ..SyntheticSpec::default()
    };
    let corpus = saved_synthetic(dir.path(), &spec);
    let output = run(&["stats", "freq", "--corpus", corpus.to_str().unwrap(), "--bag", "nsc:7"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stderr_text(&output).contains("holds no changes"));
    let lines = stdout_lines(&output);
    assert_eq!(lines[0]["zero_total"], true);
}

#[test]
fn every_format_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = saved_synthetic(dir.path(), &SyntheticSpec::default());
    let corpus = corpus.to_str().unwrap();

    let records = run(&["stats", "freq", "--corpus", corpus]);
    assert!(records.status.success());
    let lines = stdout_lines(&records);
    assert!(lines.len() > 40);
    assert!(lines[1]["feature"].is_string());

    let csv = run(&["--format", "csv", "stats", "freq", "--corpus", corpus]);
    let text = String::from_utf8_lossy(&csv.stdout).into_owned();
    assert!(text.starts_with("feature,alpha,chi\n"));

    let markdown = run(&["--format", "md", "stats", "freq", "--corpus", corpus]);
    let text = String::from_utf8_lossy(&markdown.stdout).into_owned();
    assert!(text.contains("| action | count | share |"), "{text}");

    let sliced = run(&["slice", "--corpus", corpus, "--bag", "bfp"]);
    assert!(sliced.status.success());
    for line in stdout_lines(&sliced) {
        assert_eq!(line["bug_fixing"], true);
    }
}

#[test]
fn agreement_reports_exact_kappa() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ratings.csv");
    std::fs::write(&path, "3,0\n2,1\n").unwrap();
    let output = run(&["stats", "agreement", "--ratings", path.to_str().unwrap()]);
    assert!(output.status.success(), "{}", stderr_text(&output));
    let record = &stdout_lines(&output)[0];
    assert_eq!(record["kappa"].as_f64().unwrap(), -0.2);
    assert_eq!(record["raters"], 3);
    assert_eq!(record["items"], 2);
}

#[test]
fn worker_override_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = saved_synthetic(dir.path(), &SyntheticSpec::default());
    let corpus = corpus.to_str().unwrap();

    let output = bin()
        .env("REPAIR_MINER_WORKERS", "not-a-number")
        .args(["stats", "freq", "--corpus", corpus])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_text(&output).contains("REPAIR_MINER_WORKERS"));

    let output = bin()
        .env("REPAIR_MINER_WORKERS", "2")
        .args(["stats", "freq", "--corpus", corpus])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn mining_writes_a_reloadable_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let raw = Corpus::new(vec![Transaction {
        id: "r1".into(),
        project: "demo".into(),
        message: "fix counter step".into(),
        timestamp: 11,
        content: ContentKind::Source,
        files: vec![FilePair {
            path: "Demo.java".into(),
            before: "class Demo { void step() { i = i + 1; } }".into(),
            after: "class Demo { void step() { i = i + 2; } }".into(),
        }],
        changes: None,
    }]);
    let input = dir.path().join("raw.jsonl");
    raw.save(&input).unwrap();
    let mined_path = dir.path().join("mined.jsonl");

    let output = run(&[
        "mine",
        "--corpus",
        input.to_str().unwrap(),
        "--out",
        mined_path.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_text(&output));
    let summary = &stdout_lines(&output)[0];
    assert_eq!(summary["transactions"], 1);
    assert_eq!(summary["changes"], 1);

    let mined = Corpus::load(&mined_path).unwrap();
    let changes = mined.transactions[0].changes.as_ref().unwrap();
    assert_eq!(changes.len(), 1);
    assert_eq!(changes[0].change_type, "statement update");
    assert_eq!(changes[0].entity_type, "assignment");
}

#[test]
fn reports_can_be_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = saved_synthetic(dir.path(), &SyntheticSpec::default());
    let report = dir.path().join("report.csv");
    let output = run(&[
        "--format",
        "csv",
        "--out",
        report.to_str().unwrap(),
        "stats",
        "freq",
        "--corpus",
        corpus.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(output.stdout.is_empty());
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("feature,alpha,chi\n"));
}

#[test]
fn help_and_version_exit_cleanly() {
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    let text = String::from_utf8_lossy(&help.stdout).into_owned();
    for subcommand in ["mine", "slice", "stats", "repair", "crossval", "simulate"] {
        assert!(text.contains(subcommand), "help lacks {subcommand}");
    }

    let version = run(&["--version"]);
    assert_eq!(version.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&version.stdout).contains("repair-miner"));
}
