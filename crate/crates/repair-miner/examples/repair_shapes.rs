//! From a fix's shape (its multiset of repair actions) and a probability
//! model over actions, computes the chance of drawing the fix blindly and
//! the median number of attempts a random search needs.

use repair_miner::repair::{
    monte_carlo_median, repairability, RepairModel, RepairShape, UNIFORM_PROVENANCE,
};

fn main() -> repair_miner::Result<()> {
    // A model in which the most likely action carries 24% of the mass.
    let model = RepairModel::from_probabilities(
        vec!["insert call".into(), "update condition".into(), "delete statement".into()],
        vec![0.24, 0.40, 0.36],
        "example",
    )?;

    // A fix made of two insertions of the same kind.
    let shape = RepairShape::from_labels(["insert call", "insert call"])?;
    let result = repairability(&shape, &model)?;
    println!("shape {shape}: probability {:.4}, median attempts {}", result.probability, result.median);

    // A simulation with enough trials lands within one attempt.
    let estimate = monte_carlo_median(&shape, &model, 10_001, 7)?;
    println!("simulated median over {} trials: {}", estimate.trials, estimate.median);

    // Under a uniform model every size-1 shape costs the same.
    let uniform = RepairModel::from_probabilities(
        vec!["a".into(), "b".into(), "c".into(), "d".into()],
        vec![0.25; 4],
        UNIFORM_PROVENANCE,
    )?;
    let single = RepairShape::from_labels(["c"])?;
    let flat = repairability(&single, &uniform)?;
    println!("uniform over 4 actions, single action: median {}", flat.median);
    Ok(())
}
