//! Counts change actions over the bags of a synthetic corpus and prints the
//! per-action frequency tables for both change models.

use repair_miner::changes::FeatureSpace;
use repair_miner::corpus::{synthetic_corpus, BagSpec, SyntheticSpec};
use repair_miner::report::markdown_frequencies;
use repair_miner::stats::frequencies;
use repair_miner::syntax::Taxonomy;

fn main() -> repair_miner::Result<()> {
    let taxonomy = Taxonomy::default_taxonomy();
    let corpus = synthetic_corpus(&SyntheticSpec::default(), taxonomy);

    for bag_spec in [BagSpec::All, BagSpec::Bfp, BagSpec::Nsc(1)] {
        let bag = bag_spec.slice(&corpus)?;
        let table = frequencies(&bag, &FeatureSpace::ct(taxonomy))?;
        println!(
            "bag '{}': {} transactions, {} changes; top actions:",
            bag.name,
            bag.members.len(),
            table.total
        );
        println!("{}", markdown_frequencies(&table, 5));
    }

    // The finer model splits each change type by the entity it touches.
    let bag = BagSpec::All.slice(&corpus)?;
    let table = frequencies(&bag, &FeatureSpace::ctet(taxonomy))?;
    println!("finer-grained model, top actions:");
    println!("{}", markdown_frequencies(&table, 5));
    Ok(())
}
