//! Chance-corrected agreement between raters. The rating matrix counts, for
//! every rated item, how many raters chose each category.

use repair_miner::stats::{agreement, RatingMatrix};

fn report(name: &str, matrix: &RatingMatrix) {
    let a = agreement(matrix);
    println!(
        "{name}: observed = {:.4}, expected by chance = {:.4}, kappa = {}",
        a.observed,
        a.expected,
        a.kappa.map_or_else(|| "undefined".into(), |k| format!("{k:.4}")),
    );
}

fn main() -> repair_miner::Result<()> {
    // Three raters, two categories. Every rater picks the same category for
    // every item: agreement is perfect and chance is fully corrected away.
    let unanimous = RatingMatrix::new(vec![vec![3, 0], vec![0, 3], vec![3, 0]])?;
    report("unanimous", &unanimous);

    // One item splits 2 against 1: the observed agreement drops to 2/3, and
    // because the expected chance agreement is higher (13/18), the
    // chance-corrected coefficient goes negative.
    let split = RatingMatrix::new(vec![vec![3, 0], vec![2, 1]])?;
    report("one split item", &split);

    // The same matrix read from CSV, the shape the command line accepts.
    let csv = "3,0\n2,1\n";
    let parsed = RatingMatrix::from_csv_reader(csv.as_bytes())?;
    assert_eq!(agreement(&parsed).kappa, agreement(&split).kappa);
    println!("csv round trip agrees");
    Ok(())
}
