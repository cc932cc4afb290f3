//! Deterministic synthetic corpora for tests, examples, and validation
//! runs. Every project draws its changes from the same combination pool but
//! with a rotated weight profile, so per-project change distributions differ
//! while staying reproducible for a given seed.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::changes::SourceCodeChange;
use crate::syntax::Taxonomy;

use super::transaction::{ContentKind, Corpus, Transaction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticSpec {
    pub projects: Vec<String>,
    pub transactions_per_project: usize,
    pub min_changes: usize,
    pub max_changes: usize,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> SyntheticSpec {
        SyntheticSpec {
            projects: vec!["alpha".into(), "beta".into(), "gamma".into()],
            transactions_per_project: 60,
            min_changes: 1,
            max_changes: 8,
            seed: 42,
        }
    }
}

const FIX_MESSAGES: &[&str] = &[
    "Fix null check in renderer",
    "Bugfix: missing bounds test",
    "Patch crash on empty input",
    "fix race in cache eviction",
    "Hotfix for panel overflow",
];

const OTHER_MESSAGES: &[&str] = &[
    "Refactor layout engine",
    "Update documentation",
    "Cleanup imports",
    "Add logging to scheduler",
    "Rename internal helpers",
];

/// Generates a mined corpus. Transactions carry classified changes directly
/// and no file contents.
pub fn synthetic_corpus(spec: &SyntheticSpec, taxonomy: &Taxonomy) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let combos = taxonomy.combinations();
    let mut transactions = Vec::new();
    for (pi, project) in spec.projects.iter().enumerate() {
        let weights: Vec<f64> = (0..combos.len())
            .map(|i| 1.0 / (1 + (i + 7 * pi) % combos.len()) as f64)
            .collect();
        let dist = WeightedIndex::new(&weights).expect("weights are positive");
        for t in 0..spec.transactions_per_project {
            let size = rng.gen_range(spec.min_changes..=spec.max_changes);
            let changes: Vec<SourceCodeChange> = (0..size)
                .map(|_| {
                    let (ct, et) = &combos[dist.sample(&mut rng)];
                    SourceCodeChange {
                        change_type: ct.clone(),
                        entity_type: et.clone(),
                        path: format!("src/{}/File{}.java", project, rng.gen_range(0..5)),
                        line: rng.gen_range(1..=400),
                    }
                })
                .collect();
            let message = if rng.gen_bool(0.5) {
                FIX_MESSAGES[rng.gen_range(0..FIX_MESSAGES.len())]
            } else {
                OTHER_MESSAGES[rng.gen_range(0..OTHER_MESSAGES.len())]
            };
            transactions.push(Transaction {
                id: format!("{project}-{t:04}"),
                project: project.clone(),
                message: message.to_string(),
                timestamp: 1_600_000_000 + (pi * spec.transactions_per_project + t) as i64 * 3600,
                content: ContentKind::Source,
                files: vec![],
                changes: Some(changes),
            });
        }
    }
    Corpus::new(transactions)
}
