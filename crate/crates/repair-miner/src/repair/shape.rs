//! Repair shapes: the unordered multiset of repair actions a transaction
//! performed, abstracted from the concrete code it touched.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::changes::FeatureSpace;
use crate::corpus::Transaction;
use crate::error::{Error, Result};

/// A nonempty multiset of action labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, u32>", into = "BTreeMap<String, u32>")]
pub struct RepairShape {
    actions: BTreeMap<String, u32>,
    size: u32,
}

impl RepairShape {
    pub fn new(actions: BTreeMap<String, u32>) -> Result<RepairShape> {
        if actions.values().any(|&c| c == 0) {
            return Err(Error::Config("shape multiplicities must be positive".into()));
        }
        let size = actions.values().sum();
        if size == 0 {
            return Err(Error::EmptyShape("no actions given".into()));
        }
        Ok(RepairShape { actions, size })
    }

    pub fn from_labels<I, S>(labels: I) -> Result<RepairShape>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut actions = BTreeMap::new();
        for label in labels {
            *actions.entry(label.into()).or_insert(0u32) += 1;
        }
        RepairShape::new(actions)
    }

    /// Total number of actions, multiplicities included.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Number of distinct actions.
    pub fn distinct(&self) -> usize {
        self.actions.len()
    }

    /// `(label, multiplicity)` pairs in label order.
    pub fn actions(&self) -> impl Iterator<Item = (&str, u32)> {
        self.actions.iter().map(|(l, &c)| (l.as_str(), c))
    }

    pub fn multiplicity(&self, label: &str) -> u32 {
        self.actions.get(label).copied().unwrap_or(0)
    }
}

impl fmt::Display for RepairShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "{{")?;
        for (label, count) in self.actions() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            if count == 1 {
                write!(f, "{label}")?;
            } else {
                write!(f, "{label} x{count}")?;
            }
        }
        write!(f, "}}")
    }
}

impl TryFrom<BTreeMap<String, u32>> for RepairShape {
    type Error = Error;

    fn try_from(actions: BTreeMap<String, u32>) -> Result<RepairShape> {
        RepairShape::new(actions)
    }
}

impl From<RepairShape> for BTreeMap<String, u32> {
    fn from(shape: RepairShape) -> BTreeMap<String, u32> {
        shape.actions
    }
}

/// Projects every change of a mined transaction into the feature space
/// and collects the resulting labels as a shape.
pub fn extract_shape(transaction: &Transaction, space: &FeatureSpace) -> Result<RepairShape> {
    let changes = transaction
        .changes
        .as_ref()
        .ok_or_else(|| Error::NotMined(transaction.id.clone()))?;
    if changes.is_empty() {
        return Err(Error::EmptyShape(format!(
            "transaction '{}' has no changes",
            transaction.id
        )));
    }
    let mut actions = BTreeMap::new();
    for change in changes {
        let label = space.features()[space.project(change)?].clone();
        *actions.entry(label).or_insert(0u32) += 1;
    }
    RepairShape::new(actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::changes::SourceCodeChange;
    use crate::corpus::{ContentKind, Transaction};
    use crate::syntax::Taxonomy;

    fn txn(changes: Option<Vec<SourceCodeChange>>) -> Transaction {
        Transaction {
            id: "t1".into(),
            project: "p".into(),
            message: String::new(),
            timestamp: 0,
            content: ContentKind::Source,
            files: vec![],
            changes,
        }
    }

    fn change(ct: &str, et: &str) -> SourceCodeChange {
        SourceCodeChange {
            change_type: ct.into(),
            entity_type: et.into(),
            path: "A.java".into(),
            line: 1,
        }
    }

    #[test]
    fn shape_collects_multiplicities() {
        let tax = Taxonomy::default_taxonomy();
        let t = txn(Some(vec![
            change("statement insert", "if statement"),
            change("statement insert", "if statement"),
            change("statement delete", "assignment"),
        ]));
        let ct = extract_shape(&t, &FeatureSpace::ct(tax)).unwrap();
        assert_eq!(ct.size(), 3);
        assert_eq!(ct.distinct(), 2);
        assert_eq!(ct.multiplicity("statement insert"), 2);
        let ctet = extract_shape(&t, &FeatureSpace::ctet(tax)).unwrap();
        assert_eq!(ctet.multiplicity("statement insert of if statement"), 2);
        assert_eq!(ctet.multiplicity("statement delete of assignment"), 1);
    }

    #[test]
    fn unmined_and_empty_transactions_are_rejected() {
        let tax = Taxonomy::default_taxonomy();
        let space = FeatureSpace::ct(tax);
        assert!(matches!(
            extract_shape(&txn(None), &space),
            Err(Error::NotMined(_))
        ));
        assert!(matches!(
            extract_shape(&txn(Some(vec![])), &space),
            Err(Error::EmptyShape(_))
        ));
    }

    #[test]
    fn display_shows_multiplicities() {
        let shape = RepairShape::from_labels(["b", "a", "b"]).unwrap();
        assert_eq!(shape.to_string(), "{a, b x2}");
    }

    #[test]
    fn serde_round_trip() {
        let shape = RepairShape::from_labels(["a", "a", "c"]).unwrap();
        let json = serde_json::to_string(&shape).unwrap();
        assert_eq!(json, r#"{"a":2,"c":1}"#);
        let back: RepairShape = serde_json::from_str(&json).unwrap();
        assert_eq!(shape, back);
        assert!(serde_json::from_str::<RepairShape>("{}").is_err());
    }
}
