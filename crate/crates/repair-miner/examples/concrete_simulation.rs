//! A concrete mutation search space over a program with known geometry:
//! counts how many random mutations the median repair needs, and how fault
//! localization shrinks that number.

use repair_miner::concrete::{
    fault_localization_factor, logical_time, multi_action_time, operator_sweep, ConcreteAction,
    ConcreteFix, ConcreteSpace, OperatorDistribution,
};

fn main() -> repair_miner::Result<()> {
    // 13 insertion points, 8 distinct subtrees, one missing statement.
    let operators = OperatorDistribution::new(0.33, 0.33, 0.33)?;
    let space = ConcreteSpace::new(13, 8, operators)?;
    let fix = ConcreteFix::new(vec![ConcreteAction::Insert { node: 8, place: 3 }])?;

    let rows = [
        operators,
        OperatorDistribution::new(0.39, 0.28, 0.33)?,
        OperatorDistribution::new(0.45, 0.22, 0.33)?,
        OperatorDistribution::new(0.40, 0.40, 0.20)?,
        OperatorDistribution::new(0.50, 0.30, 0.20)?,
        OperatorDistribution::new(0.60, 0.20, 0.20)?,
    ];
    println!("median attempts for one insertion, per operator split:");
    for row in operator_sweep(&space, &fix, &rows)? {
        println!("  {} -> {}", row.operators, row.time);
    }

    // Fault localization halves the candidate insertion points.
    let narrowed = fault_localization_factor(&space, 7)?;
    let time = logical_time(&narrowed, &fix)?;
    println!("\nwith 7 candidate places instead of 13: {time}");

    // Two coupled actions blow the search up by three orders of magnitude.
    let wide = ConcreteSpace::new(20, 100, operators)?;
    let two = ConcreteFix::new(vec![
        ConcreteAction::Insert { node: 33, place: 13 },
        ConcreteAction::Delete { node: 12 },
    ])?;
    println!("two-action fix in a 100-node program: {}", multi_action_time(&wide, &two)?);
    Ok(())
}
