//! Tree differencing: matches two versions of a tree and derives the edit
//! script between them.

mod arena;
mod matching;
mod script;

pub use matching::{dice_similarity, match_trees, Matching};
pub use script::{
    edit_script, replay, EditKind, EditOperation, EditScript, NodeDescriptor, Slot,
};

use crate::error::Result;
use crate::syntax::{DifferSettings, TreeNode};

/// Matches the two trees and derives the edit script in one step.
pub fn diff(
    left: &TreeNode,
    right: &TreeNode,
    settings: &DifferSettings,
) -> Result<(Matching, EditScript)> {
    let matching = match_trees(left, right, settings);
    let script = edit_script(left, right, &matching)?;
    Ok((matching, script))
}
