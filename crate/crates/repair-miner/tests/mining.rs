//! History mining against real git repositories built on the fly.

use std::path::Path;
use std::process::Command;

use repair_miner::corpus::{mine_corpus, read_history, VcsConfig};
use repair_miner::syntax::Taxonomy;

fn git(repo: &Path, args: &[&str]) {
    let status = Command::new("git")
        .arg("-C")
        .arg(repo)
        .args(args)
        .env("GIT_AUTHOR_NAME", "dev")
        .env("GIT_AUTHOR_EMAIL", "dev@example.invalid")
        .env("GIT_COMMITTER_NAME", "dev")
        .env("GIT_COMMITTER_EMAIL", "dev@example.invalid")
        .env("GIT_COMMITTER_DATE", "2020-01-01T00:00:00 +0000")
        .status()
        .expect("git runs");
    assert!(status.success(), "git {args:?} failed");
}

fn commit(repo: &Path, message: &str, date: &str) {
    git(repo, &["add", "-A"]);
    git(repo, &["commit", "-q", "-m", message, "--date", date]);
}

fn write(repo: &Path, file: &str, content: &str) {
    let path = repo.join(file);
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    std::fs::write(path, content).unwrap();
}

#[test]
fn mining_a_git_history_classifies_java_changes() {
    let dir = tempfile::tempdir().unwrap();
    let repo = dir.path();
    git(repo, &["init", "-q"]);

    write(
        repo,
        "src/Counter.java",
        "class Counter { int count; void step() { count = count + 1; } }",
    );
    commit(repo, "add counter", "2020-01-01T00:00:00 +0000");

    write(
        repo,
        "src/Counter.java",
        "class Counter { int count; void step() { count = count + 2; } }",
    );
    write(repo, "README.md", "counter\n");
    commit(repo, "fix step size", "2020-01-02T00:00:00 +0000");

    write(
        repo,
        "src/Counter.java",
        "class Counter {\n    int count;\n\n    void step() {\n        count = count + 2;\n    }\n}\n",
    );
    commit(repo, "reformat", "2020-01-03T00:00:00 +0000");

    git(repo, &["rm", "-q", "src/Counter.java"]);
    commit(repo, "drop counter", "2020-01-04T00:00:00 +0000");

    let (mut corpus, report) = read_history(repo, "fixture", &VcsConfig::default()).unwrap();
    assert_eq!(report.commits, 4);
    assert_eq!(report.files, 4);
    assert_eq!(report.unreadable_files, 0);
    assert_eq!(corpus.transactions.len(), 4);
    assert!(corpus.transactions.iter().all(|t| t.project == "fixture"));
    assert!(corpus
        .transactions
        .windows(2)
        .all(|w| w[0].timestamp < w[1].timestamp));
    // The markdown file never enters the transaction.
    assert!(corpus
        .transactions
        .iter()
        .flat_map(|t| &t.files)
        .all(|f| f.path.ends_with(".java")));
    let messages: Vec<&str> = corpus.transactions.iter().map(|t| t.message.trim()).collect();
    assert_eq!(messages, ["add counter", "fix step size", "reformat", "drop counter"]);

    let mined = mine_corpus(&mut corpus, Taxonomy::default_taxonomy());
    assert_eq!(mined.transactions, 4);
    assert_eq!(mined.skipped_files, 0);
    let counts: Vec<usize> = corpus
        .transactions
        .iter()
        .map(|t| t.change_count().unwrap())
        .collect();
    assert_eq!(counts, [1, 1, 0, 1]);

    let added = &corpus.transactions[0].changes.as_ref().unwrap()[0];
    assert_eq!(added.change_type, "additional class");
    let fixed = &corpus.transactions[1].changes.as_ref().unwrap()[0];
    assert_eq!(fixed.change_type, "statement update");
    assert_eq!(fixed.entity_type, "assignment");
    assert_eq!(fixed.path, "src/Counter.java");
    let dropped = &corpus.transactions[3].changes.as_ref().unwrap()[0];
    assert_eq!(dropped.change_type, "removed class");
}

#[test]
fn empty_repository_errors_instead_of_panicking() {
    let dir = tempfile::tempdir().unwrap();
    git(dir.path(), &["init", "-q"]);
    assert!(read_history(dir.path(), "empty", &VcsConfig::default()).is_err());
}

#[test]
fn vcs_config_fills_missing_fields_with_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vcs.json");
    std::fs::write(&path, r#"{ "source_extension": ".jav" }"#).unwrap();
    let config = VcsConfig::load(&path).unwrap();
    assert_eq!(config.source_extension, ".jav");
    assert_eq!(config.log_command, VcsConfig::default().log_command);
}
