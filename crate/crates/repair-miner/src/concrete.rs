//! A concrete mutation-based repair space over a program's statements:
//! insertions of a node at a place, deletions, and swaps, with a
//! probability split across the three operators. Connects concrete fixes
//! to the same median-attempts analysis used for abstract shapes.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repair::{median_attempts, multinomial_probability, MedianAttempts};

/// Operator triples are accepted when they sum to 1 within this slack:
/// published two-decimal triples such as (.33, .33, .33) round the true
/// split and can be off by a full hundredth.
pub const OPERATOR_SUM_TOLERANCE: f64 = 0.015;

/// Probability split across the three mutation operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorDistribution {
    #[serde(rename = "p_insert")]
    pub insert: f64,
    #[serde(rename = "p_delete")]
    pub delete: f64,
    #[serde(rename = "p_swap")]
    pub swap: f64,
}

impl OperatorDistribution {
    pub fn new(insert: f64, delete: f64, swap: f64) -> Result<OperatorDistribution> {
        let d = OperatorDistribution {
            insert,
            delete,
            swap,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let parts = [self.insert, self.delete, self.swap];
        let sum: f64 = parts.iter().sum();
        if parts.iter().any(|p| !p.is_finite() || *p < 0.0) || (sum - 1.0).abs() > OPERATOR_SUM_TOLERANCE
        {
            return Err(Error::InvalidDistribution(self.to_string(), sum));
        }
        Ok(())
    }
}

impl std::fmt::Display for OperatorDistribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.insert, self.delete, self.swap)
    }
}

/// The action universe of one program: `places` insertion points and
/// `nodes` movable statements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcreteSpace {
    places: u32,
    nodes: u32,
    operators: OperatorDistribution,
}

impl ConcreteSpace {
    pub fn new(places: u32, nodes: u32, operators: OperatorDistribution) -> Result<ConcreteSpace> {
        if places == 0 || nodes == 0 {
            return Err(Error::Domain(format!(
                "concrete space needs at least one place and one node, got {places} and {nodes}"
            )));
        }
        operators.validate()?;
        Ok(ConcreteSpace {
            places,
            nodes,
            operators,
        })
    }

    pub fn places(&self) -> u32 {
        self.places
    }

    pub fn nodes(&self) -> u32 {
        self.nodes
    }

    pub fn operators(&self) -> OperatorDistribution {
        self.operators
    }

    /// The same geometry under a different operator split.
    pub fn with_operators(&self, operators: OperatorDistribution) -> Result<ConcreteSpace> {
        ConcreteSpace::new(self.places, self.nodes, operators)
    }

    /// Number of distinct concrete actions.
    pub fn action_count(&self) -> u64 {
        let nodes = self.nodes as u64;
        let places = self.places as u64;
        places * nodes + nodes + nodes * nodes
    }

    /// All actions of the space, insertions then deletions then swaps.
    pub fn enumerate(&self) -> impl Iterator<Item = ConcreteAction> + '_ {
        let inserts = (1..=self.nodes).flat_map(move |node| {
            (1..=self.places).map(move |place| ConcreteAction::Insert { node, place })
        });
        let deletes = (1..=self.nodes).map(|node| ConcreteAction::Delete { node });
        let swaps = (1..=self.nodes).flat_map(move |first| {
            (1..=self.nodes).map(move |second| ConcreteAction::Swap { first, second })
        });
        inserts.chain(deletes).chain(swaps)
    }
}

/// One concrete mutation; node and place indices are 1-based.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum ConcreteAction {
    Insert { node: u32, place: u32 },
    Delete { node: u32 },
    Swap { first: u32, second: u32 },
}

impl std::fmt::Display for ConcreteAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConcreteAction::Insert { node, place } => {
                write!(f, "insert node #{node} at place #{place}")
            }
            ConcreteAction::Delete { node } => write!(f, "delete node #{node}"),
            ConcreteAction::Swap { first, second } => {
                write!(f, "swap node #{first} with node #{second}")
            }
        }
    }
}

/// Probability of drawing one specific concrete action: the operator's
/// probability spread uniformly over that operator's instantiations.
pub fn concrete_action_probability(space: &ConcreteSpace, action: ConcreteAction) -> Result<f64> {
    let in_nodes = |node: u32| (1..=space.nodes).contains(&node);
    match action {
        ConcreteAction::Insert { node, place } => {
            if !in_nodes(node) || !(1..=space.places).contains(&place) {
                return Err(Error::Domain(format!("{action} is outside the space")));
            }
            Ok(space.operators.insert / (space.places as f64 * space.nodes as f64))
        }
        ConcreteAction::Delete { node } => {
            if !in_nodes(node) {
                return Err(Error::Domain(format!("{action} is outside the space")));
            }
            Ok(space.operators.delete / space.nodes as f64)
        }
        ConcreteAction::Swap { first, second } => {
            if !in_nodes(first) || !in_nodes(second) {
                return Err(Error::Domain(format!("{action} is outside the space")));
            }
            Ok(space.operators.swap / (space.nodes as f64 * space.nodes as f64))
        }
    }
}

/// A nonempty multiset of concrete actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "Vec<ConcreteAction>")]
pub struct ConcreteFix {
    actions: BTreeMap<ConcreteAction, u32>,
    size: u32,
}

impl ConcreteFix {
    pub fn new(actions: Vec<ConcreteAction>) -> Result<ConcreteFix> {
        if actions.is_empty() {
            return Err(Error::EmptyShape("concrete fix has no actions".into()));
        }
        let mut multiset = BTreeMap::new();
        let size = actions.len() as u32;
        for action in actions {
            *multiset.entry(action).or_insert(0u32) += 1;
        }
        Ok(ConcreteFix {
            actions: multiset,
            size,
        })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Distinct actions with multiplicities, in action order.
    pub fn actions(&self) -> impl Iterator<Item = (ConcreteAction, u32)> + '_ {
        self.actions.iter().map(|(&a, &c)| (a, c))
    }
}

impl From<ConcreteFix> for Vec<ConcreteAction> {
    fn from(fix: ConcreteFix) -> Vec<ConcreteAction> {
        let mut out = Vec::with_capacity(fix.size as usize);
        for (action, count) in fix.actions {
            out.extend(std::iter::repeat(action).take(count as usize));
        }
        out
    }
}

/// Probability that one draw of `fix.size()` concrete actions produces
/// exactly this multiset.
pub fn fix_probability(space: &ConcreteSpace, fix: &ConcreteFix) -> Result<f64> {
    let terms = fix
        .actions()
        .map(|(action, count)| Ok((concrete_action_probability(space, action)?, count)))
        .collect::<Result<Vec<_>>>()?;
    Ok(multinomial_probability(&terms))
}

/// Median attempts to hit this concrete fix by drawing from the space.
pub fn logical_time(space: &ConcreteSpace, fix: &ConcreteFix) -> Result<MedianAttempts> {
    median_attempts(fix_probability(space, fix)?)
}

/// `logical_time` for fixes that combine several actions, where the
/// multinomial coefficient starts to matter.
pub fn multi_action_time(space: &ConcreteSpace, fix: &ConcreteFix) -> Result<MedianAttempts> {
    if fix.size() < 2 {
        return Err(Error::Domain(
            "multi-action time needs a fix of at least two actions".into(),
        ));
    }
    logical_time(space, fix)
}

/// The space after a fault localizer narrowed the insertion places.
pub fn fault_localization_factor(
    space: &ConcreteSpace,
    surviving_places: u32,
) -> Result<ConcreteSpace> {
    if surviving_places == 0 || surviving_places > space.places {
        return Err(Error::Domain(format!(
            "surviving places must be in 1..={}, got {surviving_places}",
            space.places
        )));
    }
    ConcreteSpace::new(surviving_places, space.nodes, space.operators)
}

/// One row of an operator sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub operators: OperatorDistribution,
    pub probability: f64,
    pub time: MedianAttempts,
}

/// Evaluates the same fix and geometry under each operator split.
pub fn operator_sweep(
    space: &ConcreteSpace,
    fix: &ConcreteFix,
    distributions: &[OperatorDistribution],
) -> Result<Vec<SweepRow>> {
    distributions
        .iter()
        .map(|&operators| {
            let row_space = space.with_operators(operators)?;
            let probability = fix_probability(&row_space, fix)?;
            Ok(SweepRow {
                operators,
                probability,
                time: median_attempts(probability)?,
            })
        })
        .collect()
}

/// An on-disk simulation scenario: geometry, operator rows to sweep,
/// and the fix to time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(rename = "n_place")]
    pub places: u32,
    #[serde(rename = "n_ast")]
    pub nodes: u32,
    pub operators: Vec<OperatorDistribution>,
    pub fix: Vec<ConcreteAction>,
}

impl Scenario {
    pub fn from_reader<R: std::io::Read>(reader: R) -> Result<Scenario> {
        let scenario: Scenario = serde_json::from_reader(reader)
            .map_err(|e| Error::Config(format!("cannot read scenario: {e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load<P: AsRef<Path>>(path: P) -> Result<Scenario> {
        Self::from_reader(std::fs::File::open(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.operators.is_empty() {
            return Err(Error::Config("scenario has no operator rows".into()));
        }
        for (i, operators) in self.operators.iter().enumerate() {
            operators.validate().map_err(|_| {
                Error::InvalidDistribution(
                    format!("row {}: {operators}", i + 1),
                    operators.insert + operators.delete + operators.swap,
                )
            })?;
        }
        let space = ConcreteSpace::new(self.places, self.nodes, self.operators[0])?;
        let fix = ConcreteFix::new(self.fix.clone())?;
        for (action, _) in fix.actions() {
            concrete_action_probability(&space, action)?;
        }
        Ok(())
    }

    /// Sweeps the fix across all operator rows.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        let space = ConcreteSpace::new(self.places, self.nodes, self.operators[0])?;
        let fix = ConcreteFix::new(self.fix.clone())?;
        operator_sweep(&space, &fix, &self.operators)
    }
}
