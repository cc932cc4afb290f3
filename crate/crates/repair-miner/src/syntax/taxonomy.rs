use std::collections::{HashMap, HashSet};
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DEFAULT_TAXONOMY_JSON: &str = include_str!("../../data/default_taxonomy.json");

/// Tunable knobs of the tree matcher.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct DifferSettings {
    /// Minimum bigram similarity for two same-kind leaves to match.
    pub leaf_similarity_threshold: f64,
    /// An inner node pair matches when the fraction of matched descendants
    /// exceeds this value.
    pub inner_match_fraction: f64,
    /// Match declarations (classes, methods, attributes, parameters) by name
    /// and position before running the generic similarity pass.
    pub declaration_matching: bool,
}

impl Default for DifferSettings {
    fn default() -> Self {
        DifferSettings {
            leaf_similarity_threshold: 0.6,
            inner_match_fraction: 0.5,
            declaration_matching: true,
        }
    }
}

/// Tunable knobs of the change classifier.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassifierSettings {
    /// When false, operations on nodes inside a newly inserted or deleted
    /// method, class, or attribute are dropped, so adding a method counts as
    /// one change regardless of its body size.
    pub include_inserted_body: bool,
}

impl Default for ClassifierSettings {
    fn default() -> Self {
        ClassifierSettings {
            include_inserted_body: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawCombination {
    change_type: String,
    entity_types: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawTaxonomy {
    entity_kinds: Vec<String>,
    statement_kinds: Vec<String>,
    container_kinds: Vec<String>,
    condition_kinds: Vec<String>,
    #[serde(default)]
    parser_mapping: HashMap<String, String>,
    change_types: Vec<String>,
    ctet_combinations: Vec<RawCombination>,
    #[serde(default)]
    differ: DifferSettings,
    #[serde(default)]
    classifier: ClassifierSettings,
}

/// The active taxonomy: entity kinds, the change-type set, and the table of
/// valid change-type x entity-type combinations. All of it is configuration;
/// the shipped default can be replaced by a user-provided file.
#[derive(Debug, Clone)]
pub struct Taxonomy {
    entity_kinds: Vec<String>,
    entity_set: HashSet<String>,
    statement_kinds: HashSet<String>,
    container_kinds: HashSet<String>,
    condition_kinds: HashSet<String>,
    parser_mapping: HashMap<String, String>,
    change_types: Vec<String>,
    change_type_set: HashSet<String>,
    combinations: Vec<(String, String)>,
    combination_set: HashSet<(String, String)>,
    pub differ: DifferSettings,
    pub classifier: ClassifierSettings,
}

impl Taxonomy {
    /// The built-in default taxonomy.
    pub fn default_taxonomy() -> &'static Taxonomy {
        static DEFAULT: OnceLock<Taxonomy> = OnceLock::new();
        DEFAULT.get_or_init(|| {
            Taxonomy::from_json(DEFAULT_TAXONOMY_JSON).expect("built-in taxonomy is valid")
        })
    }

    pub fn from_json(text: &str) -> Result<Taxonomy> {
        let raw: RawTaxonomy =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("taxonomy: {e}")))?;
        Taxonomy::from_raw(raw)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Taxonomy> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Taxonomy::from_json(&text)
    }

    fn from_raw(raw: RawTaxonomy) -> Result<Taxonomy> {
        let entity_set: HashSet<String> = raw.entity_kinds.iter().cloned().collect();
        if entity_set.len() != raw.entity_kinds.len() {
            return Err(Error::InvalidTaxonomy("duplicate entity kind".into()));
        }
        let change_type_set: HashSet<String> = raw.change_types.iter().cloned().collect();
        if change_type_set.len() != raw.change_types.len() {
            return Err(Error::InvalidTaxonomy("duplicate change type".into()));
        }
        for k in raw
            .statement_kinds
            .iter()
            .chain(&raw.container_kinds)
            .chain(&raw.condition_kinds)
        {
            if !entity_set.contains(k) {
                return Err(Error::InvalidTaxonomy(format!(
                    "kind '{k}' is listed in a subset but not among entity kinds"
                )));
            }
        }
        for target in raw.parser_mapping.values() {
            if !entity_set.contains(target) {
                return Err(Error::InvalidTaxonomy(format!(
                    "parser mapping targets unknown kind '{target}'"
                )));
            }
        }
        let mut combinations = Vec::new();
        let mut combination_set = HashSet::new();
        for combo in &raw.ctet_combinations {
            if !change_type_set.contains(&combo.change_type) {
                return Err(Error::InvalidTaxonomy(format!(
                    "combination references unknown change type '{}'",
                    combo.change_type
                )));
            }
            for et in &combo.entity_types {
                if !entity_set.contains(et) {
                    return Err(Error::InvalidTaxonomy(format!(
                        "combination references unknown entity kind '{et}'"
                    )));
                }
                let pair = (combo.change_type.clone(), et.clone());
                if !combination_set.insert(pair.clone()) {
                    return Err(Error::InvalidTaxonomy(format!(
                        "duplicate combination {} / {et}",
                        combo.change_type
                    )));
                }
                combinations.push(pair);
            }
        }
        Ok(Taxonomy {
            entity_kinds: raw.entity_kinds,
            entity_set,
            statement_kinds: raw.statement_kinds.into_iter().collect(),
            container_kinds: raw.container_kinds.into_iter().collect(),
            condition_kinds: raw.condition_kinds.into_iter().collect(),
            parser_mapping: raw.parser_mapping,
            change_types: raw.change_types,
            change_type_set,
            combinations,
            combination_set,
            differ: raw.differ,
            classifier: raw.classifier,
        })
    }

    pub fn entity_kinds(&self) -> &[String] {
        &self.entity_kinds
    }

    pub fn change_types(&self) -> &[String] {
        &self.change_types
    }

    /// Valid (change type, entity type) combinations in configuration order.
    pub fn combinations(&self) -> &[(String, String)] {
        &self.combinations
    }

    pub fn is_entity_kind(&self, kind: &str) -> bool {
        self.entity_set.contains(kind)
    }

    pub fn is_statement_kind(&self, kind: &str) -> bool {
        self.statement_kinds.contains(kind)
    }

    pub fn is_container_kind(&self, kind: &str) -> bool {
        self.container_kinds.contains(kind)
    }

    pub fn is_condition_kind(&self, kind: &str) -> bool {
        self.condition_kinds.contains(kind)
    }

    pub fn is_change_type(&self, label: &str) -> bool {
        self.change_type_set.contains(label)
    }

    pub fn is_valid_combination(&self, change_type: &str, entity_type: &str) -> bool {
        self.combination_set
            .contains(&(change_type.to_string(), entity_type.to_string()))
    }

    /// Resolve an external kind name (for instance a parser node name such as
    /// `if_statement`) to its canonical entity-kind label.
    pub fn canonical_kind(&self, name: &str) -> Option<&str> {
        if self.entity_set.contains(name) {
            return self.entity_kinds.iter().find(|k| *k == name).map(|k| k.as_str());
        }
        self.parser_mapping.get(name).map(|k| k.as_str())
    }
}
