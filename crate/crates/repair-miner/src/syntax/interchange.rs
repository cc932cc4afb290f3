//! Tree interchange format: one structured-record document per tree, with
//! fields `kind`, optional `value`, `range` (four integers), and `children`.
//! Serialization emits canonical kind labels; parsing also accepts the names
//! listed in the taxonomy's parser mapping.

use super::taxonomy::Taxonomy;
use super::tree::{validate_tree, TreeNode};
use crate::error::{Error, Result};

/// Render a tree as an interchange document. `parse_tree` of the result
/// yields a tree equal to the input.
pub fn serialize_tree(root: &TreeNode) -> String {
    let mut text = serde_json::to_string_pretty(root).expect("trees serialize");
    text.push('\n');
    text
}

/// Parse an interchange document and check it against the taxonomy.
pub fn parse_tree(text: &str, taxonomy: &Taxonomy) -> Result<TreeNode> {
    let mut root: TreeNode = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line() as u32,
        column: e.column() as u32,
        message: e.to_string(),
    })?;
    canonicalize_kinds(&mut root, taxonomy)?;
    validate_tree(&root, taxonomy)?;
    Ok(root)
}

fn canonicalize_kinds(node: &mut TreeNode, taxonomy: &Taxonomy) -> Result<()> {
    match taxonomy.canonical_kind(&node.kind) {
        Some(kind) => node.kind = kind.to_string(),
        None => return Err(Error::UnknownKind(node.kind.clone())),
    }
    for child in &mut node.children {
        canonicalize_kinds(child, taxonomy)?;
    }
    Ok(())
}
