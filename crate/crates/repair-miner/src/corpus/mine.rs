//! Mines a corpus: parses every file pair of every transaction, diffs the
//! two trees, classifies the edit script, and stores the resulting changes
//! on the transaction.
//!
//! Mining is best-effort per file: a pair whose sides do not parse is
//! counted and skipped, and the transaction keeps the changes of its
//! readable pairs. Transactions are processed in parallel; results do not
//! depend on the worker count.

use rayon::prelude::*;

use crate::changes::classify_script;
use crate::differ::diff;
use crate::error::Result;
use crate::syntax::kinds::COMPILATION_UNIT;
use crate::syntax::{parse_mini_java, parse_tree, Origin, Range, Taxonomy, TreeNode};

use super::transaction::{ContentKind, Corpus, Transaction};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MineReport {
    pub transactions: usize,
    pub files: usize,
    pub skipped_files: usize,
    pub changes: usize,
    pub dropped_operations: usize,
}

impl MineReport {
    fn merge(self, other: MineReport) -> MineReport {
        MineReport {
            transactions: self.transactions + other.transactions,
            files: self.files + other.files,
            skipped_files: self.skipped_files + other.skipped_files,
            changes: self.changes + other.changes,
            dropped_operations: self.dropped_operations + other.dropped_operations,
        }
    }
}

/// One side of a file pair as a tree. An empty text stands for an absent
/// file and parses to a bare root, so added and deleted files diff
/// naturally.
fn side_tree(text: &str, content: ContentKind, path: &str, taxonomy: &Taxonomy) -> Result<TreeNode> {
    if text.trim().is_empty() {
        return Ok(TreeNode::new(COMPILATION_UNIT, "", Range::point(1, 1)));
    }
    match content {
        ContentKind::Source => {
            let origin = Origin {
                path: path.to_string(),
                revision: String::new(),
            };
            Ok(parse_mini_java(text, origin)?.root)
        }
        ContentKind::Interchange => parse_tree(text, taxonomy),
    }
}

fn mine_transaction(t: &mut Transaction, taxonomy: &Taxonomy) -> MineReport {
    let mut report = MineReport {
        transactions: 1,
        ..MineReport::default()
    };
    let mut changes = Vec::new();
    for pair in &t.files {
        report.files += 1;
        let outcome = side_tree(&pair.before, t.content, &pair.path, taxonomy).and_then(|left| {
            let right = side_tree(&pair.after, t.content, &pair.path, taxonomy)?;
            let (_, script) = diff(&left, &right, &taxonomy.differ)?;
            Ok(classify_script(&script, &pair.path, taxonomy))
        });
        match outcome {
            Ok(classified) => {
                report.changes += classified.changes.len();
                report.dropped_operations += classified.dropped.len();
                changes.extend(classified.changes);
            }
            Err(_) => report.skipped_files += 1,
        }
    }
    t.changes = Some(changes);
    report
}

/// Mines every transaction in place and reports aggregate counters.
pub fn mine_corpus(corpus: &mut Corpus, taxonomy: &Taxonomy) -> MineReport {
    corpus
        .transactions
        .par_iter_mut()
        .map(|t| mine_transaction(t, taxonomy))
        .reduce(MineReport::default, MineReport::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::transaction::FilePair;
    use crate::syntax::serialize_tree;

    fn source_txn(id: &str, before: &str, after: &str) -> Transaction {
        Transaction {
            id: id.into(),
            project: "p".into(),
            message: String::new(),
            timestamp: 0,
            content: ContentKind::Source,
            files: vec![FilePair {
                path: "A.java".into(),
                before: before.into(),
                after: after.into(),
            }],
            changes: None,
        }
    }

    #[test]
    fn mining_classifies_source_pairs() {
        let tax = Taxonomy::default_taxonomy();
        let mut corpus = Corpus::new(vec![source_txn(
            "c1",
            "class A { void m() { x = 1; } }",
            "class A { void m() { x = 2; y.run(); } }",
        )]);
        let report = mine_corpus(&mut corpus, tax);
        assert_eq!(report.transactions, 1);
        assert_eq!(report.files, 1);
        assert_eq!(report.skipped_files, 0);
        assert_eq!(report.changes, 2);
        let changes = corpus.transactions[0].changes.as_ref().unwrap();
        let labels: Vec<String> = changes
            .iter()
            .map(|c| format!("{} of {}", c.change_type, c.entity_type))
            .collect();
        assert!(labels.contains(&"statement update of assignment".to_string()));
        assert!(labels.contains(&"statement insert of method invocation".to_string()));
        assert!(changes.iter().all(|c| c.path == "A.java"));
    }

    #[test]
    fn added_file_diffs_against_empty_root() {
        let tax = Taxonomy::default_taxonomy();
        let mut corpus = Corpus::new(vec![source_txn("c1", "", "class A { }")]);
        let report = mine_corpus(&mut corpus, tax);
        assert_eq!(report.changes, 1);
        let c = &corpus.transactions[0].changes.as_ref().unwrap()[0];
        assert_eq!(c.change_type, "additional class");
    }

    #[test]
    fn unparseable_pairs_are_skipped_not_fatal() {
        let tax = Taxonomy::default_taxonomy();
        let mut t = source_txn("c1", "class A {", "class A { }");
        t.files.push(FilePair {
            path: "B.java".into(),
            before: "class B { }".into(),
            after: "class B { int f; }".into(),
        });
        let mut corpus = Corpus::new(vec![t]);
        let report = mine_corpus(&mut corpus, tax);
        assert_eq!(report.skipped_files, 1);
        assert_eq!(report.changes, 1);
        assert_eq!(corpus.transactions[0].change_count(), Some(1));
    }

    #[test]
    fn interchange_content_is_mined_too() {
        let tax = Taxonomy::default_taxonomy();
        let before = parse_mini_java("class A { void m() { x = 1; } }", Origin::unknown())
            .unwrap()
            .root;
        let after = parse_mini_java("class A { void m() { x = 2; } }", Origin::unknown())
            .unwrap()
            .root;
        let mut corpus = Corpus::new(vec![Transaction {
            id: "c1".into(),
            project: "p".into(),
            message: String::new(),
            timestamp: 0,
            content: ContentKind::Interchange,
            files: vec![FilePair {
                path: "A.java".into(),
                before: serialize_tree(&before),
                after: serialize_tree(&after),
            }],
            changes: None,
        }]);
        let report = mine_corpus(&mut corpus, tax);
        assert_eq!(report.changes, 1);
        let c = &corpus.transactions[0].changes.as_ref().unwrap()[0];
        assert_eq!(c.change_type, "statement update");
    }
}
