//! Transactions: the unit of history a repository contributes. A
//! transaction carries the touched file contents (before and after) and,
//! once mined, its classified changes. Corpora serialize as JSON lines, one
//! transaction per line.

use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::changes::SourceCodeChange;
use crate::error::{Error, Result};

/// How the `before`/`after` texts of file pairs are encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContentKind {
    /// Source text for the built-in Java-subset parser.
    #[default]
    Source,
    /// Structured tree records in the interchange format.
    Interchange,
}

/// One file touched by a transaction. An empty string on either side means
/// the file did not exist on that side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilePair {
    pub path: String,
    #[serde(default)]
    pub before: String,
    #[serde(default)]
    pub after: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transaction {
    pub id: String,
    pub project: String,
    #[serde(default)]
    pub message: String,
    #[serde(default)]
    pub timestamp: i64,
    #[serde(default)]
    pub content: ContentKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub files: Vec<FilePair>,
    /// `None` until mined; `Some` afterwards, possibly empty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub changes: Option<Vec<SourceCodeChange>>,
}

impl Transaction {
    pub fn is_mined(&self) -> bool {
        self.changes.is_some()
    }

    /// Number of mined changes; `None` when not mined yet.
    pub fn change_count(&self) -> Option<usize> {
        self.changes.as_ref().map(|c| c.len())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub transactions: Vec<Transaction>,
}

impl Corpus {
    pub fn new(transactions: Vec<Transaction>) -> Corpus {
        Corpus { transactions }
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Distinct project names, sorted.
    pub fn projects(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .transactions
            .iter()
            .map(|t| t.project.clone())
            .collect();
        names.sort();
        names.dedup();
        names
    }

    pub fn is_mined(&self) -> bool {
        self.transactions.iter().all(Transaction::is_mined)
    }

    pub fn from_reader(reader: impl Read) -> Result<Corpus> {
        let mut transactions = Vec::new();
        for (i, line) in BufReader::new(reader).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let t: Transaction =
                serde_json::from_str(&line).map_err(|e| Error::CorruptRecord {
                    line: i + 1,
                    message: e.to_string(),
                })?;
            transactions.push(t);
        }
        Ok(Corpus::new(transactions))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Corpus> {
        Self::from_reader(File::open(path)?)
    }

    pub fn to_writer(&self, writer: impl Write) -> Result<()> {
        let mut w = BufWriter::new(writer);
        for t in &self.transactions {
            serde_json::to_writer(&mut w, t).map_err(|e| Error::Io(e.into()))?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.to_writer(File::create(path)?)
    }
}
