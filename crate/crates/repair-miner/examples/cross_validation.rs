//! Leave-one-project-out cross-validation: trains a repair model on all but
//! one project and measures how hard that project's fixes are to reproduce,
//! then compares training heuristics.

use repair_miner::changes::FeatureSpace;
use repair_miner::corpus::{synthetic_corpus, Heuristic, SyntheticSpec};
use repair_miner::crossval::{compare_heuristics, run_crossval, CrossValSpec};
use repair_miner::report::markdown_repairability;
use repair_miner::syntax::Taxonomy;

fn main() -> repair_miner::Result<()> {
    let taxonomy = Taxonomy::default_taxonomy();
    let corpus = synthetic_corpus(&SyntheticSpec::default(), taxonomy);
    let space = FeatureSpace::ct(taxonomy);

    let spec = CrossValSpec::new(&corpus, &space, Heuristic::Bfp).with_sizes(vec![1, 2, 3, 4]);
    let table = run_crossval(&spec)?;
    println!("median attempts per held-out project (evaluated fixes in brackets):\n");
    println!("{}", markdown_repairability(&table));

    // Heuristic comparison: per size, the median over held-out projects.
    let heuristics = [Heuristic::All, Heuristic::Bfp, Heuristic::Eqp];
    for series in compare_heuristics(&corpus, &space, &heuristics, &[1, 2, 3])? {
        let cells: Vec<String> = series
            .medians
            .iter()
            .map(|m| m.map_or_else(|| "-".into(), |v| v.to_string()))
            .collect();
        println!("{:<4} -> {}", series.heuristic.to_string(), cells.join(", "));
    }
    Ok(())
}
