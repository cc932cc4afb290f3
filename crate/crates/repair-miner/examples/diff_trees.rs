//! Diffs two versions of a source file at the tree level and classifies the
//! resulting edit script into change actions.

use repair_miner::changes::classify_script;
use repair_miner::differ::diff;
use repair_miner::syntax::{parse_mini_java, Origin, Taxonomy};

fn main() -> repair_miner::Result<()> {
    let before = parse_mini_java(
        "class Account { int balance; void deposit() { balance = balance + amount; } }",
        Origin::new("Account.java", "v1"),
    )?;
    let after = parse_mini_java(
        "class Account { int balance; void deposit() { check(amount); balance = balance + amount; } }",
        Origin::new("Account.java", "v2"),
    )?;

    let taxonomy = Taxonomy::default_taxonomy();
    let (matching, script) = diff(&before.root, &after.root, &taxonomy.differ)?;
    println!("{} node pairs matched, {} edit operations", matching.pairs().count(), script.len());
    for op in script.iter() {
        println!("  {:?} {} {:?}", op.kind, op.node.kind, op.node.value);
    }

    let classified = classify_script(&script, "Account.java", taxonomy);
    println!("\nchange actions:");
    for c in &classified.changes {
        println!("  {} of {}", c.change_type, c.entity_type);
    }
    Ok(())
}
