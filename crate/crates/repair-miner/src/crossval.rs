//! Leave-one-project-out cross-validation: train a repair model on all
//! projects but one, score the held-out project's fixes by shape size,
//! and tabulate the median attempt counts.

use rayon::prelude::*;
use serde::Serialize;

use crate::changes::{ChangeModel, FeatureSpace};
use crate::corpus::{is_bug_fixing, Corpus, Heuristic, Transaction, TransactionBag};
use crate::error::{Error, Result};
use crate::repair::{extract_shape, repairability, MedianAttempts, RepairModel};

/// Shape sizes evaluated when none are requested explicitly.
pub fn default_shape_sizes() -> Vec<u32> {
    (1..=8).collect()
}

#[derive(Debug, Clone)]
pub struct CrossValSpec<'a> {
    pub corpus: &'a Corpus,
    pub space: &'a FeatureSpace,
    pub heuristic: Heuristic,
    pub sizes: Vec<u32>,
}

impl<'a> CrossValSpec<'a> {
    pub fn new(corpus: &'a Corpus, space: &'a FeatureSpace, heuristic: Heuristic) -> Self {
        CrossValSpec {
            corpus,
            space,
            heuristic,
            sizes: default_shape_sizes(),
        }
    }

    pub fn with_sizes(mut self, sizes: Vec<u32>) -> Self {
        self.sizes = sizes;
        self
    }
}

/// One table cell: the held-out project's fixes of one shape size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellResult {
    /// Median attempts over the scored fixes; `None` when none scored.
    pub median: Option<MedianAttempts>,
    /// Fixes of this size whose shape was scored.
    pub evaluated: u32,
    /// Fixes of this size whose shape could not be scored.
    pub skipped: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepairabilityTable {
    pub heuristic: Heuristic,
    pub model: ChangeModel,
    /// Held-out projects, one table row each, sorted by name.
    pub projects: Vec<String>,
    /// Shape sizes, one column each.
    pub sizes: Vec<u32>,
    /// `cells[row][column]` follows `projects` x `sizes`.
    pub cells: Vec<Vec<CellResult>>,
}

/// One cell flattened for record-oriented output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellRecord {
    pub heuristic: Heuristic,
    pub project: String,
    pub size: u32,
    pub median: Option<MedianAttempts>,
    pub evaluated: u32,
    pub skipped: u32,
}

impl RepairabilityTable {
    pub fn cell(&self, project: &str, size: u32) -> Option<&CellResult> {
        let row = self.projects.iter().position(|p| p == project)?;
        let column = self.sizes.iter().position(|&s| s == size)?;
        Some(&self.cells[row][column])
    }

    /// Rows flattened to one record per cell, in row-major order.
    pub fn records(&self) -> Vec<CellRecord> {
        let mut records = Vec::with_capacity(self.projects.len() * self.sizes.len());
        for (row, project) in self.projects.iter().enumerate() {
            for (column, &size) in self.sizes.iter().enumerate() {
                let cell = self.cells[row][column];
                records.push(CellRecord {
                    heuristic: self.heuristic,
                    project: project.clone(),
                    size,
                    median: cell.median,
                    evaluated: cell.evaluated,
                    skipped: cell.skipped,
                });
            }
        }
        records
    }
}

/// Splits a corpus around one held-out project: evaluation is that
/// project's transactions, training is everything else.
pub fn split<'c>(
    corpus: &'c Corpus,
    held_out: &str,
) -> Result<(Vec<&'c Transaction>, Vec<&'c Transaction>)> {
    let projects = corpus.projects();
    if projects.len() < 2 {
        return Err(Error::Split(format!(
            "corpus has {} project(s), cross-validation needs at least 2",
            projects.len()
        )));
    }
    if !projects.iter().any(|p| p == held_out) {
        return Err(Error::Split(format!("project '{held_out}' not in corpus")));
    }
    let (evaluation, training) = corpus
        .transactions
        .iter()
        .partition(|t| t.project == held_out);
    Ok((training, evaluation))
}

/// Runs the full leave-one-project-out evaluation for one heuristic.
pub fn run_crossval(spec: &CrossValSpec) -> Result<RepairabilityTable> {
    for t in &spec.corpus.transactions {
        if !t.is_mined() {
            return Err(Error::NotMined(t.id.clone()));
        }
    }
    let projects = spec.corpus.projects();
    if projects.len() < 2 {
        return Err(Error::Split(format!(
            "corpus has {} project(s), cross-validation needs at least 2",
            projects.len()
        )));
    }

    let cells = projects
        .par_iter()
        .map(|project| fold_row(spec, project))
        .collect::<Result<Vec<_>>>()?;

    Ok(RepairabilityTable {
        heuristic: spec.heuristic,
        model: spec.space.model(),
        projects,
        sizes: spec.sizes.clone(),
        cells,
    })
}

fn fold_row(spec: &CrossValSpec, held_out: &str) -> Result<Vec<CellResult>> {
    let (training, evaluation) = split(spec.corpus, held_out)?;
    let model = fold_model(spec, held_out, training)?;

    let mut row = Vec::with_capacity(spec.sizes.len());
    for &size in &spec.sizes {
        let mut medians = Vec::new();
        let mut skipped = 0u32;
        for t in evaluation
            .iter()
            .filter(|t| t.change_count() == Some(size as usize))
        {
            match extract_shape(t, spec.space).and_then(|s| repairability(&s, &model)) {
                Ok(r) => medians.push(r.median),
                Err(_) => skipped += 1,
            }
        }
        row.push(CellResult {
            median: median_of(&mut medians),
            evaluated: medians.len() as u32,
            skipped,
        });
    }
    Ok(row)
}

fn fold_model(
    spec: &CrossValSpec,
    held_out: &str,
    training: Vec<&Transaction>,
) -> Result<RepairModel> {
    if spec.heuristic == Heuristic::Eqp {
        return Ok(RepairModel::uniform(spec.space));
    }
    let members: Vec<&Transaction> = training
        .into_iter()
        .filter(|t| match spec.heuristic {
            Heuristic::All | Heuristic::Eqp => true,
            Heuristic::Bfp => is_bug_fixing(&t.message),
            Heuristic::Nsc(n) => t.change_count() == Some(n as usize),
        })
        .collect();
    let bag = TransactionBag {
        name: spec.heuristic.to_string(),
        members,
    };
    RepairModel::train(&bag, spec.space).map_err(|e| match e {
        Error::EmptyTrainingBag(_) => Error::Fold {
            project: held_out.to_string(),
            message: format!("training bag '{}' is empty", spec.heuristic),
        },
        other => other,
    })
}

/// Lower-middle median; attempt counts are integers and the even case
/// keeps a value that actually occurred.
fn median_of(values: &mut [MedianAttempts]) -> Option<MedianAttempts> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable();
    Some(values[(values.len() - 1) / 2])
}

/// One heuristic's per-size medians across held-out projects.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeuristicSeries {
    pub heuristic: Heuristic,
    pub sizes: Vec<u32>,
    /// Per size, the median over projects of the per-project medians;
    /// `None` when no project had fixes of that size.
    pub medians: Vec<Option<MedianAttempts>>,
}

/// The median-of-medians comparison across heuristics, one series per
/// heuristic. Projects without data for a size do not contribute to
/// that size's median.
pub fn compare_heuristics(
    corpus: &Corpus,
    space: &FeatureSpace,
    heuristics: &[Heuristic],
    sizes: &[u32],
) -> Result<Vec<HeuristicSeries>> {
    if heuristics.is_empty() {
        return Err(Error::Config("no heuristics to compare".into()));
    }
    heuristics
        .iter()
        .map(|&heuristic| {
            let spec = CrossValSpec {
                corpus,
                space,
                heuristic,
                sizes: sizes.to_vec(),
            };
            let table = run_crossval(&spec)?;
            let medians = (0..sizes.len())
                .map(|column| {
                    let mut defined: Vec<MedianAttempts> = table
                        .cells
                        .iter()
                        .filter_map(|row| row[column].median)
                        .collect();
                    median_of(&mut defined)
                })
                .collect();
            Ok(HeuristicSeries {
                heuristic,
                sizes: sizes.to_vec(),
                medians,
            })
        })
        .collect()
}
