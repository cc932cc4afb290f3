//! Change labels and the feature spaces built over them.
//!
//! A source-code change pairs a change type with the kind of entity it
//! affects. Two change models turn changes into feature vectors: `ct` uses
//! the change type alone, `ctet` uses the (change type, entity type)
//! combination.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::syntax::Taxonomy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChangeModel {
    Ct,
    Ctet,
}

impl fmt::Display for ChangeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChangeModel::Ct => "ct",
            ChangeModel::Ctet => "ctet",
        })
    }
}

impl FromStr for ChangeModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<ChangeModel> {
        match s {
            "ct" => Ok(ChangeModel::Ct),
            "ctet" => Ok(ChangeModel::Ctet),
            other => Err(Error::Config(format!("unknown change model '{other}'"))),
        }
    }
}

/// One classified fine-grained change.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceCodeChange {
    pub change_type: String,
    pub entity_type: String,
    pub path: String,
    pub line: u32,
}

impl SourceCodeChange {
    /// The feature label of this change under the given model.
    pub fn label(&self, model: ChangeModel) -> String {
        match model {
            ChangeModel::Ct => self.change_type.clone(),
            ChangeModel::Ctet => combination_label(&self.change_type, &self.entity_type),
        }
    }
}

/// The `ctet` feature label for a (change type, entity type) pair.
pub fn combination_label(change_type: &str, entity_type: &str) -> String {
    format!("{change_type} of {entity_type}")
}

/// An ordered feature universe under one change model. Feature order follows
/// the taxonomy configuration and is stable across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureSpace {
    model: ChangeModel,
    features: Vec<String>,
    index: HashMap<String, usize>,
}

impl FeatureSpace {
    pub fn ct(taxonomy: &Taxonomy) -> FeatureSpace {
        Self::build(ChangeModel::Ct, taxonomy.change_types().to_vec())
    }

    pub fn ctet(taxonomy: &Taxonomy) -> FeatureSpace {
        let features = taxonomy
            .combinations()
            .iter()
            .map(|(ct, et)| combination_label(ct, et))
            .collect();
        Self::build(ChangeModel::Ctet, features)
    }

    pub fn for_model(model: ChangeModel, taxonomy: &Taxonomy) -> FeatureSpace {
        match model {
            ChangeModel::Ct => Self::ct(taxonomy),
            ChangeModel::Ctet => Self::ctet(taxonomy),
        }
    }

    fn build(model: ChangeModel, features: Vec<String>) -> FeatureSpace {
        let index = features
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        FeatureSpace { model, features, index }
    }

    pub fn model(&self) -> ChangeModel {
        self.model
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    pub fn label_of(&self, index: usize) -> &str {
        &self.features[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// The feature index of a change; errors when the change's label is not
    /// part of this space.
    pub fn project(&self, change: &SourceCodeChange) -> Result<usize> {
        let label = change.label(self.model);
        self.index_of(&label).ok_or(Error::UnknownFeature(label))
    }

    pub fn try_project(&self, change: &SourceCodeChange) -> Option<usize> {
        self.index_of(&change.label(self.model))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn change(ct: &str, et: &str) -> SourceCodeChange {
        SourceCodeChange {
            change_type: ct.into(),
            entity_type: et.into(),
            path: "A.java".into(),
            line: 1,
        }
    }

    #[test]
    fn space_sizes_match_taxonomy() {
        let tax = Taxonomy::default_taxonomy();
        assert_eq!(FeatureSpace::ct(tax).len(), 41);
        assert_eq!(FeatureSpace::ctet(tax).len(), 82);
    }

    #[test]
    fn labels_combine_type_and_entity() {
        let c = change("statement insert", "method invocation");
        assert_eq!(c.label(ChangeModel::Ct), "statement insert");
        assert_eq!(c.label(ChangeModel::Ctet), "statement insert of method invocation");
    }

    #[test]
    fn projection_finds_known_features() {
        let tax = Taxonomy::default_taxonomy();
        let ct = FeatureSpace::ct(tax);
        let ctet = FeatureSpace::ctet(tax);
        let c = change("statement insert", "method invocation");
        assert_eq!(ct.label_of(ct.project(&c).unwrap()), "statement insert");
        assert_eq!(
            ctet.label_of(ctet.project(&c).unwrap()),
            "statement insert of method invocation"
        );
    }

    #[test]
    fn projection_rejects_unknown_labels() {
        let tax = Taxonomy::default_taxonomy();
        let ctet = FeatureSpace::ctet(tax);
        let c = change("unclassified change", "assignment");
        assert!(matches!(ctet.project(&c), Err(Error::UnknownFeature(_))));
        assert!(ctet.try_project(&c).is_none());
    }

    #[test]
    fn model_names_round_trip() {
        assert_eq!("ct".parse::<ChangeModel>().unwrap(), ChangeModel::Ct);
        assert_eq!("ctet".parse::<ChangeModel>().unwrap(), ChangeModel::Ctet);
        assert_eq!(ChangeModel::Ctet.to_string(), "ctet");
        assert!("cte".parse::<ChangeModel>().is_err());
    }
}
