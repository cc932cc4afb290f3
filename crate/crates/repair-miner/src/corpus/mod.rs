//! Corpora of transactions: reading them from version control, mining their
//! changes, and slicing them into training bags.

mod bag;
mod mine;
mod synthetic;
mod transaction;
mod vcs;

pub use bag::{is_bug_fixing, BagSpec, Heuristic, TransactionBag, BUG_FIX_KEYWORDS};
pub use mine::{mine_corpus, MineReport};
pub use synthetic::{synthetic_corpus, SyntheticSpec};
pub use transaction::{ContentKind, Corpus, FilePair, Transaction};
pub use vcs::{read_history, HistoryReport, VcsConfig};
