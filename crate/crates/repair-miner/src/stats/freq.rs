//! Frequency tables: absolute counts and normalized shares of each feature
//! over the changes of a transaction bag.

use serde::Serialize;

use crate::changes::{ChangeModel, FeatureSpace};
use crate::corpus::TransactionBag;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyTable {
    pub model: ChangeModel,
    pub bag: String,
    pub features: Vec<String>,
    /// Absolute count per feature, in feature order.
    pub alpha: Vec<u64>,
    pub total: u64,
    /// Share per feature; `None` when the bag holds no changes.
    pub chi: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyRow {
    pub feature: String,
    pub alpha: u64,
    pub chi: Option<f64>,
}

impl FrequencyTable {
    /// Rows in feature order.
    pub fn rows(&self) -> Vec<FrequencyRow> {
        self.features
            .iter()
            .enumerate()
            .map(|(i, f)| FrequencyRow {
                feature: f.clone(),
                alpha: self.alpha[i],
                chi: self.chi.as_ref().map(|c| c[i]),
            })
            .collect()
    }

    /// The `n` most frequent rows, count descending, label ascending on
    /// ties.
    pub fn top(&self, n: usize) -> Vec<FrequencyRow> {
        let mut rows = self.rows();
        rows.sort_by(|a, b| b.alpha.cmp(&a.alpha).then_with(|| a.feature.cmp(&b.feature)));
        rows.truncate(n);
        rows
    }
}

/// Counts every change of the bag under the given feature space. All
/// transactions must be mined, and every change must project into the
/// space.
pub fn frequencies(bag: &TransactionBag, space: &FeatureSpace) -> Result<FrequencyTable> {
    let mut alpha = vec![0u64; space.len()];
    for t in &bag.members {
        let changes = t
            .changes
            .as_ref()
            .ok_or_else(|| Error::NotMined(t.id.clone()))?;
        for change in changes {
            alpha[space.project(change)?] += 1;
        }
    }
    let total: u64 = alpha.iter().sum();
    let chi = (total > 0).then(|| alpha.iter().map(|&a| a as f64 / total as f64).collect());
    Ok(FrequencyTable {
        model: space.model(),
        bag: bag.name.clone(),
        features: space.features().to_vec(),
        alpha,
        total,
        chi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{synthetic_corpus, BagSpec, Corpus, SyntheticSpec, Transaction};
    use crate::syntax::Taxonomy;
    use proptest::prelude::*;

    fn mined_bag(corpus: &Corpus) -> TransactionBag<'_> {
        BagSpec::All.slice(corpus).unwrap()
    }

    #[test]
    fn counts_and_shares_add_up() {
        let tax = Taxonomy::default_taxonomy();
        let corpus = synthetic_corpus(&SyntheticSpec::default(), tax);
        let bag = mined_bag(&corpus);
        let expected: usize = bag.members.iter().map(|t| t.change_count().unwrap()).sum();
        for space in [FeatureSpace::ct(tax), FeatureSpace::ctet(tax)] {
            let table = frequencies(&bag, &space).unwrap();
            assert_eq!(table.total as usize, expected);
            let sum: f64 = table.chi.as_ref().unwrap().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "chi sums to {sum}");
        }
    }

    #[test]
    fn empty_bag_has_no_shares() {
        let tax = Taxonomy::default_taxonomy();
        let corpus = Corpus::new(vec![]);
        let bag = mined_bag(&corpus);
        let table = frequencies(&bag, &FeatureSpace::ct(tax)).unwrap();
        assert_eq!(table.total, 0);
        assert!(table.chi.is_none());
        assert!(table.rows().iter().all(|r| r.alpha == 0 && r.chi.is_none()));
    }

    #[test]
    fn unmined_members_are_rejected() {
        let tax = Taxonomy::default_taxonomy();
        let corpus = Corpus::new(vec![Transaction {
            id: "x".into(),
            project: "p".into(),
            message: String::new(),
            timestamp: 0,
            content: Default::default(),
            files: vec![],
            changes: None,
        }]);
        let bag = mined_bag(&corpus);
        assert!(matches!(
            frequencies(&bag, &FeatureSpace::ct(tax)),
            Err(Error::NotMined(_))
        ));
    }

    #[test]
    fn top_rows_sort_by_count_then_label() {
        let tax = Taxonomy::default_taxonomy();
        let corpus = synthetic_corpus(&SyntheticSpec::default(), tax);
        let bag = mined_bag(&corpus);
        let table = frequencies(&bag, &FeatureSpace::ctet(tax)).unwrap();
        let top = table.top(10);
        assert_eq!(top.len(), 10);
        for pair in top.windows(2) {
            assert!(
                pair[0].alpha > pair[1].alpha
                    || (pair[0].alpha == pair[1].alpha && pair[0].feature < pair[1].feature)
            );
        }
    }

    proptest! {
        /// The aggregated ct histogram always equals the ctet histogram
        /// summed over entity types: the ctet model refines the ct model.
        #[test]
        fn ctet_refines_ct(seed in any::<u64>()) {
            let tax = Taxonomy::default_taxonomy();
            let spec = SyntheticSpec { seed, transactions_per_project: 10, ..Default::default() };
            let corpus = synthetic_corpus(&spec, tax);
            let bag = mined_bag(&corpus);
            let ct = frequencies(&bag, &FeatureSpace::ct(tax)).unwrap();
            let ctet = frequencies(&bag, &FeatureSpace::ctet(tax)).unwrap();
            prop_assert_eq!(ct.total, ctet.total);
            for (i, feature) in ct.features.iter().enumerate() {
                let rolled: u64 = ctet
                    .features
                    .iter()
                    .zip(&ctet.alpha)
                    .filter(|(f, _)| f.starts_with(&format!("{feature} of ")))
                    .map(|(_, &a)| a)
                    .sum();
                prop_assert_eq!(ct.alpha[i], rolled);
            }
        }
    }
}
