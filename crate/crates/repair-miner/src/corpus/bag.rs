//! Transaction bags: the named subsets of a corpus that repair models are
//! trained on.
//!
//! `all` keeps every transaction. `bfp` keeps transactions whose commit
//! message contains a bug-fixing keyword, case-insensitively. `nsc:N` keeps
//! transactions with exactly N mined changes. `eqp` is a heuristic without a
//! bag: it stands for a uniform model that ignores history.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::transaction::{Corpus, Transaction};

/// Keywords whose presence in a commit message marks a bug-fixing
/// transaction.
pub const BUG_FIX_KEYWORDS: &[&str] = &["bug", "fix", "patch"];

/// A named subset of a corpus.
#[derive(Debug)]
pub struct TransactionBag<'c> {
    pub name: String,
    pub members: Vec<&'c Transaction>,
}

impl TransactionBag<'_> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Whether a commit message marks a bug-fixing transaction.
pub fn is_bug_fixing(message: &str) -> bool {
    let lower = message.to_lowercase();
    BUG_FIX_KEYWORDS.iter().any(|k| lower.contains(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum BagSpec {
    All,
    Bfp,
    Nsc(u32),
}

impl BagSpec {
    /// Selects this bag from a corpus. `nsc:N` requires a mined corpus.
    pub fn slice<'c>(&self, corpus: &'c Corpus) -> Result<TransactionBag<'c>> {
        let members: Vec<&Transaction> = match *self {
            BagSpec::All => corpus.transactions.iter().collect(),
            BagSpec::Bfp => corpus
                .transactions
                .iter()
                .filter(|t| is_bug_fixing(&t.message))
                .collect(),
            BagSpec::Nsc(n) => {
                if let Some(t) = corpus.transactions.iter().find(|t| !t.is_mined()) {
                    return Err(Error::NotMined(format!(
                        "transaction '{}' has no mined changes; mine the corpus before slicing by size",
                        t.id
                    )));
                }
                corpus
                    .transactions
                    .iter()
                    .filter(|t| t.change_count() == Some(n as usize))
                    .collect()
            }
        };
        Ok(TransactionBag {
            name: self.to_string(),
            members,
        })
    }
}

impl fmt::Display for BagSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BagSpec::All => f.write_str("all"),
            BagSpec::Bfp => f.write_str("bfp"),
            BagSpec::Nsc(n) => write!(f, "nsc:{n}"),
        }
    }
}

impl FromStr for BagSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<BagSpec> {
        match s {
            "all" => Ok(BagSpec::All),
            "bfp" => Ok(BagSpec::Bfp),
            other => {
                if let Some(n) = other.strip_prefix("nsc:") {
                    let n: u32 = n.parse().map_err(|_| {
                        Error::Config(format!("invalid transaction size in bag '{other}'"))
                    })?;
                    if n == 0 {
                        return Err(Error::Config(format!(
                            "invalid transaction size in bag '{other}': must be at least 1"
                        )));
                    }
                    Ok(BagSpec::Nsc(n))
                } else {
                    Err(Error::Config(format!(
                        "unknown bag '{other}' (expected all, bfp, or nsc:N)"
                    )))
                }
            }
        }
    }
}

impl From<BagSpec> for String {
    fn from(spec: BagSpec) -> String {
        spec.to_string()
    }
}

impl TryFrom<String> for BagSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<BagSpec> {
        s.parse()
    }
}

/// A training-data selection strategy for repair models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Heuristic {
    All,
    Bfp,
    Nsc(u32),
    /// Uniform probabilities; uses no training data at all.
    Eqp,
}

impl Heuristic {
    /// The bag this heuristic trains on; `None` for the uniform heuristic.
    pub fn bag_spec(&self) -> Option<BagSpec> {
        match *self {
            Heuristic::All => Some(BagSpec::All),
            Heuristic::Bfp => Some(BagSpec::Bfp),
            Heuristic::Nsc(n) => Some(BagSpec::Nsc(n)),
            Heuristic::Eqp => None,
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Heuristic::All => f.write_str("all"),
            Heuristic::Bfp => f.write_str("bfp"),
            Heuristic::Nsc(n) => write!(f, "nsc:{n}"),
            Heuristic::Eqp => f.write_str("eqp"),
        }
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Heuristic> {
        if s == "eqp" {
            return Ok(Heuristic::Eqp);
        }
        Ok(match s.parse::<BagSpec>().map_err(|_| {
            Error::Config(format!(
                "unknown heuristic '{s}' (expected all, bfp, nsc:N, or eqp)"
            ))
        })? {
            BagSpec::All => Heuristic::All,
            BagSpec::Bfp => Heuristic::Bfp,
            BagSpec::Nsc(n) => Heuristic::Nsc(n),
        })
    }
}

impl From<Heuristic> for String {
    fn from(h: Heuristic) -> String {
        h.to_string()
    }
}

impl TryFrom<String> for Heuristic {
    type Error = Error;

    fn try_from(s: String) -> Result<Heuristic> {
        s.parse()
    }
}
