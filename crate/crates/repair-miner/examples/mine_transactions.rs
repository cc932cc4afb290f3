//! Mines an in-memory corpus: every transaction carries before/after file
//! text, and mining fills in the classified changes.

use repair_miner::corpus::{mine_corpus, ContentKind, Corpus, FilePair, Transaction};
use repair_miner::syntax::Taxonomy;

fn transaction(id: &str, message: &str, before: &str, after: &str) -> Transaction {
    Transaction {
        id: id.into(),
        project: "demo".into(),
        message: message.into(),
        timestamp: 0,
        content: ContentKind::Source,
        files: vec![FilePair {
            path: "Demo.java".into(),
            before: before.into(),
            after: after.into(),
        }],
        changes: None,
    }
}

fn main() {
    let taxonomy = Taxonomy::default_taxonomy();
    let mut corpus = Corpus::new(vec![
        transaction(
            "c1",
            "fix off-by-one in loop step",
            "class Demo { void step() { i = i + 1; } }",
            "class Demo { void step() { i = i + 2; } }",
        ),
        transaction(
            "c2",
            "add logging call",
            "class Demo { void run() { work(); } }",
            "class Demo { void run() { work(); log.flush(); } }",
        ),
        transaction(
            "c3",
            "reformat only",
            "class Demo { void noop() { x = 1; } }",
            "class Demo {\n    void noop() {\n        x = 1;\n    }\n}",
        ),
    ]);

    let report = mine_corpus(&mut corpus, taxonomy);
    println!(
        "mined {} transactions, {} files, {} changes",
        report.transactions, report.files, report.changes
    );

    for t in &corpus.transactions {
        println!("\n{} ({:?}):", t.id, t.message);
        let changes = t.changes.as_ref().expect("mined");
        if changes.is_empty() {
            println!("  no semantic change");
        }
        for c in changes {
            println!("  {} of {} at {}:{}", c.change_type, c.entity_type, c.path, c.line);
        }
    }
}
