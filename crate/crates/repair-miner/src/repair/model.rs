//! Repair models: a probability distribution over the actions of a
//! feature space, trained from a transaction bag or set up as the
//! uniform baseline.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::changes::{ChangeModel, FeatureSpace};
use crate::corpus::TransactionBag;
use crate::error::{Error, Result};
use crate::stats::frequencies;

/// Provenance label of the uniform baseline.
pub const UNIFORM_PROVENANCE: &str = "eqp";

const PROBABILITY_SUM_TOLERANCE: f64 = 1e-12;

/// An immutable probability distribution over repair actions.
///
/// The action list usually comes from one of the two change models, but
/// any label set works; `change_model` records the origin when there is
/// one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "ModelFile")]
pub struct RepairModel {
    change_model: Option<ChangeModel>,
    features: Vec<String>,
    probabilities: Vec<f64>,
    /// Absolute counts behind a trained distribution, absent for
    /// synthetic ones.
    counts: Option<Vec<u64>>,
    provenance: String,
    index: HashMap<String, usize>,
}

/// On-disk layout: `{space: {model, features}, provenance, counts,
/// probabilities}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ModelFile {
    space: SpaceFile,
    provenance: String,
    counts: Option<Vec<u64>>,
    probabilities: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpaceFile {
    model: Option<ChangeModel>,
    features: Vec<String>,
}

impl From<RepairModel> for ModelFile {
    fn from(m: RepairModel) -> ModelFile {
        ModelFile {
            space: SpaceFile {
                model: m.change_model,
                features: m.features,
            },
            provenance: m.provenance,
            counts: m.counts,
            probabilities: m.probabilities,
        }
    }
}

impl RepairModel {
    /// Trains a model on a bag: the distribution is the bag's relative
    /// feature frequencies.
    pub fn train(bag: &TransactionBag, space: &FeatureSpace) -> Result<RepairModel> {
        let table = frequencies(bag, space)?;
        let probabilities = table
            .chi
            .ok_or_else(|| Error::EmptyTrainingBag(bag.name.clone()))?;
        RepairModel::assemble(
            Some(space.model()),
            table.features,
            probabilities,
            Some(table.alpha),
            table.bag,
        )
    }

    /// The uniform baseline over a feature space.
    pub fn uniform(space: &FeatureSpace) -> RepairModel {
        Self::uniform_over(Some(space.model()), space.features().to_vec())
            .expect("a feature space is never empty")
    }

    /// The uniform baseline over an arbitrary action list.
    pub fn uniform_over(
        change_model: Option<ChangeModel>,
        features: Vec<String>,
    ) -> Result<RepairModel> {
        let p = 1.0 / features.len() as f64;
        let probabilities = vec![p; features.len()];
        RepairModel::assemble(
            change_model,
            features,
            probabilities,
            None,
            UNIFORM_PROVENANCE.to_string(),
        )
    }

    /// Builds a model from explicit probabilities, validating them.
    pub fn from_probabilities(
        features: Vec<String>,
        probabilities: Vec<f64>,
        provenance: impl Into<String>,
    ) -> Result<RepairModel> {
        RepairModel::assemble(None, features, probabilities, None, provenance.into())
    }

    fn assemble(
        change_model: Option<ChangeModel>,
        features: Vec<String>,
        probabilities: Vec<f64>,
        counts: Option<Vec<u64>>,
        provenance: String,
    ) -> Result<RepairModel> {
        let mut index = HashMap::with_capacity(features.len());
        for (i, f) in features.iter().enumerate() {
            if index.insert(f.clone(), i).is_some() {
                return Err(Error::Config(format!("duplicate action '{f}' in model")));
            }
        }
        let model = RepairModel {
            change_model,
            features,
            probabilities,
            counts,
            provenance,
            index,
        };
        model.validate()?;
        Ok(model)
    }

    /// Checks the distribution invariants: one finite nonnegative
    /// probability per action, summing to 1, and a genuinely uniform
    /// distribution when the provenance claims the uniform baseline.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Error::Config(m);
        if self.features.is_empty() {
            return Err(bad("model has no actions".into()));
        }
        if self.probabilities.len() != self.features.len() {
            return Err(bad(format!(
                "{} probabilities for {} actions",
                self.probabilities.len(),
                self.features.len()
            )));
        }
        if let Some(counts) = &self.counts {
            if counts.len() != self.features.len() {
                return Err(bad(format!(
                    "{} counts for {} actions",
                    counts.len(),
                    self.features.len()
                )));
            }
        }
        for (f, &p) in self.features.iter().zip(&self.probabilities) {
            if !p.is_finite() || p < 0.0 {
                return Err(bad(format!("action '{f}' has probability {p}")));
            }
        }
        let sum: f64 = self.probabilities.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(bad(format!("probabilities sum to {sum}, not 1")));
        }
        if self.provenance == UNIFORM_PROVENANCE {
            let expected = 1.0 / self.features.len() as f64;
            if self.probabilities.iter().any(|&p| p != expected) {
                return Err(bad("uniform provenance with a non-uniform distribution".into()));
            }
        }
        Ok(())
    }

    pub fn change_model(&self) -> Option<ChangeModel> {
        self.change_model
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn counts(&self) -> Option<&[u64]> {
        self.counts.as_deref()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn index_of(&self, action: &str) -> Option<usize> {
        self.index.get(action).copied()
    }

    pub fn probability(&self, action: &str) -> Option<f64> {
        self.index_of(action).map(|i| self.probabilities[i])
    }

    pub fn to_writer<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer_pretty(writer, self)
            .map_err(|e| Error::Config(format!("cannot serialize model: {e}")))
    }

    pub fn save<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut file = std::fs::File::create(path)?;
        self.to_writer(&mut file)?;
        writeln!(file)?;
        Ok(())
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<RepairModel> {
        let file: ModelFile = serde_json::from_reader(reader)
            .map_err(|e| Error::Config(format!("cannot read model: {e}")))?;
        RepairModel::assemble(
            file.space.model,
            file.space.features,
            file.probabilities,
            file.counts,
            file.provenance,
        )
    }

    pub fn load<P: AsRef<Path>>(path: P) -> Result<RepairModel> {
        Self::from_reader(std::fs::File::open(path)?)
    }
}
